#include <fstream>
#include <sstream>

#include "kreintopo/tight_binding.hpp"
#include <json.hpp>

namespace kreintopo {
namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, int dim, const char* name) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ParseError(std::string(name) + ": expected " + std::to_string(dim) + " rows");
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw ParseError(std::string(name) + ": ragged row");
    for (int c = 0; c < dim; ++c) {
      const auto& e = row[c];
      if (!e.is_array() || e.size() != 2) throw ParseError(std::string(name) + ": entry is not [re, im]");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json entry_to_json(const SymmetryMetadata::Entry& e) {
  return json{{"matrix", matrix_to_json(e.matrix)}, {"parity", e.parity}};
}

SymmetryMetadata::Entry entry_from_json(const json& j, int dim, const char* name) {
  SymmetryMetadata::Entry e;
  e.matrix = matrix_from_json(j.at("matrix"), dim, name);
  e.parity = j.at("parity").get<int>();
  return e;
}

}  // namespace

void save_model(const HoppingModel& model, std::ostream& out) {
  json j;
  j["schema"] = 1;
  j["L"] = model.fiber;
  j["q"] = model.flux_num;
  j["p"] = model.flux_den;
  j["W1"] = matrix_to_json(model.w1);
  j["W2"] = matrix_to_json(model.w2);
  j["W3"] = matrix_to_json(model.w3);
  j["W4"] = matrix_to_json(model.w4);
  j["V"] = matrix_to_json(model.v);
  if (model.flux_sign != IntMatrix::Ones(model.fiber, model.fiber)) {
    json rows = json::array();
    for (int r = 0; r < model.fiber; ++r) {
      json row = json::array();
      for (int c = 0; c < model.fiber; ++c) row.push_back(model.flux_sign(r, c));
      rows.push_back(std::move(row));
    }
    j["flux_sign"] = rows;
  }
  if (!model.metadata.empty()) {
    json sym;
    if (model.metadata.trs) sym["trs"] = entry_to_json(*model.metadata.trs);
    if (model.metadata.phs) sym["phs"] = entry_to_json(*model.metadata.phs);
    if (model.metadata.chiral) sym["chiral"] = entry_to_json(*model.metadata.chiral);
    j["symmetry"] = sym;
  }
  if (!model.name.empty()) j["name"] = model.name;
  out << j.dump(2) << "\n";
}

HoppingModel load_model(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("schema").get<int>() != 1) throw ParseError("unsupported model schema");
    const int L = j.at("L").get<int>();
    if (L < 1) throw ParseError("L must be positive");
    const int q = j.at("q").get<int>();
    const int p = j.at("p").get<int>();
    const Matrix w1 = matrix_from_json(j.at("W1"), L, "W1");
    const Matrix w2 = matrix_from_json(j.at("W2"), L, "W2");
    const Matrix w3 = matrix_from_json(j.at("W3"), L, "W3");
    const Matrix w4 = matrix_from_json(j.at("W4"), L, "W4");
    const Matrix v = matrix_from_json(j.at("V"), L, "V");
    std::optional<IntMatrix> flux_sign;
    if (j.contains("flux_sign")) {
      IntMatrix fs(L, L);
      const auto& rows = j.at("flux_sign");
      if (static_cast<int>(rows.size()) != L) throw ParseError("flux_sign: wrong shape");
      for (int r = 0; r < L; ++r)
        for (int c = 0; c < L; ++c) fs(r, c) = rows[r][c].get<int>();
      flux_sign = fs;
    }
    SymmetryMetadata metadata;
    if (j.contains("symmetry")) {
      const auto& sym = j.at("symmetry");
      if (sym.contains("trs")) metadata.trs = entry_from_json(sym["trs"], L, "trs");
      if (sym.contains("phs")) metadata.phs = entry_from_json(sym["phs"], L, "phs");
      if (sym.contains("chiral"))
        metadata.chiral = entry_from_json(sym["chiral"], L, "chiral");
    }
    HoppingModel model = make_model(L, q, p, w1, w2, w3, w4, v,
                                    flux_sign ? &*flux_sign : nullptr, metadata);
    if (j.contains("name")) model.name = j["name"].get<std::string>();
    return model;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file is missing fields: ") + e.what());
  }
}

HoppingModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file: " + path);
  return load_model(in);
}

void save_model_file(const HoppingModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write model file: " + path);
  save_model(model, out);
}

}  // namespace kreintopo
