// Command-line front end: model inspection, bulk spectra, edge crossings,
// invariants, symmetry classification and collision demos.  Outputs CSV,
// versioned JSON and self-contained SVG; identical configurations produce
// byte-identical files.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "kreintopo/edge.hpp"
#include "kreintopo/krein.hpp"
#include "kreintopo/models.hpp"
#include "kreintopo/spectral.hpp"
#include "kreintopo/tight_binding.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace kreintopo;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ModelOptions {
  std::string builtin;
  std::string file;
  int q = 0, p = 1, chirality = 1;
  double delta = 0.2, mu = 0.0;
  double lambda_so = 1.0, lambda_rashba = 0.45, lambda_stagger = 0.3;

  HoppingModel build() const {
    if (!file.empty()) return load_model_file(file);
    if (builtin == "harper") return models::harper(q, p);
    if (builtin == "kanemele")
      return models::kane_mele(lambda_so, lambda_rashba, lambda_stagger);
    if (builtin == "pip") return models::p_ip(delta, mu, q, p, chirality);
    if (builtin == "did") return models::d_id(delta, mu, q, p, chirality);
    throw BadParams("select a model with --model or --model-file");
  }
};

void add_model_options(CLI::App* cmd, ModelOptions& opts) {
  cmd->add_option("--model", opts.builtin, "builtin model: harper, kanemele, pip, did");
  cmd->add_option("--model-file", opts.file, "path to a model JSON file");
  cmd->add_option("--q", opts.q, "flux numerator");
  cmd->add_option("--p", opts.p, "flux denominator");
  cmd->add_option("--delta", opts.delta, "pairing strength (pip/did)");
  cmd->add_option("--mu", opts.mu, "chemical potential (pip/did)");
  cmd->add_option("--chirality", opts.chirality, "pairing chirality +1 or -1");
  cmd->add_option("--lambda-so", opts.lambda_so, "spin-orbit coupling (kanemele)");
  cmd->add_option("--lambda-rashba", opts.lambda_rashba, "Rashba coupling (kanemele)");
  cmd->add_option("--lambda-stagger", opts.lambda_stagger,
                  "staggered potential (kanemele)");
}

struct OutputOptions {
  std::string out_dir = ".";
  std::string formats = "csv,json,svg";

  std::set<std::string> format_set() const {
    std::set<std::string> out;
    std::string cur;
    for (char c : formats + ",") {
      if (c == ',') {
        if (!cur.empty()) out.insert(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    for (const auto& f : out)
      if (f != "csv" && f != "json" && f != "svg")
        throw BadParams("unknown output format: " + f);
    return out;
  }
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--out-dir", opts.out_dir, "output directory");
  cmd->add_option("--formats", opts.formats, "comma list from csv,json,svg");
}

void write_file(const fs::path& path, const std::string& content) {
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  std::fprintf(stderr, "wrote %s\n", path.string().c_str());
}

json kind_to_json(const SymmetryKind& kind) {
  json j;
  j["eta_f"] = kind.eta_f;
  if (kind.eta_r) j["eta_r"] = *kind.eta_r;
  if (kind.eta_fr) j["eta_fr"] = *kind.eta_fr;
  if (kind.eta_c) j["eta_c"] = *kind.eta_c;
  if (kind.eta_fc) j["eta_fc"] = *kind.eta_fc;
  if (kind.eta_rc) j["eta_rc"] = *kind.eta_rc;
  return j;
}

json crossings_to_json(const std::vector<EdgeCrossing>& crossings) {
  json arr = json::array();
  for (const auto& c : crossings) {
    json jc;
    jc["k1"] = c.k1;
    jc["slope"] = c.slope_sign;
    jc["multiplicity"] = c.multiplicity;
    jc["theta_slope"] = c.theta_slope;
    arr.push_back(jc);
  }
  return arr;
}

int run_spectrum(const ModelOptions& model_opts, const OutputOptions& out_opts,
                 double energy, int grid) {
  const auto model = model_opts.build();
  const auto spectrum = bulk_transfer_spectrum(model, energy, grid);
  const auto formats = out_opts.format_set();
  const fs::path dir(out_opts.out_dir);

  if (formats.count("csv")) {
    std::string csv = "k2,re,im\n";
    for (size_t i = 0; i < spectrum.k2.size(); ++i)
      for (const auto& ev : spectrum.eigenvalues[i])
        csv += fmt(spectrum.k2[i]) + "," + fmt(ev.real()) + "," + fmt(ev.imag()) + "\n";
    write_file(dir / "spectrum.csv", csv);
  }
  if (formats.count("json")) {
    json j;
    j["schema"] = 1;
    j["command"] = "spectrum";
    j["energy"] = energy;
    j["min_distance_to_circle"] = spectrum.min_distance_to_circle();
    write_file(dir / "spectrum.json", j.dump(2) + "\n");
  }
  if (formats.count("svg")) {
    double radius = 1.2;
    for (const auto& evs : spectrum.eigenvalues)
      for (const auto& ev : evs) radius = std::max(radius, std::abs(ev));
    radius = std::min(radius * 1.05, 8.0);
    svg::Canvas canvas(-radius, radius, -radius, radius);
    canvas.axes();
    canvas.dotted_unit_circle();
    for (const auto& evs : spectrum.eigenvalues)
      for (const auto& ev : evs)
        if (std::abs(ev) <= radius) canvas.point(ev.real(), ev.imag());
    write_file(dir / "spectrum.svg", canvas.finish());
  }
  return 0;
}

int run_invariants(const ModelOptions& model_opts, const OutputOptions& out_opts,
                   double energy, int k_grid, int chern_grid) {
  const auto model = model_opts.build();
  CrossingScanOptions scan;
  scan.grid_size = k_grid;
  const auto report = edge_invariants(model, energy, scan);
  json j;
  j["schema"] = 1;
  j["command"] = "invariants";
  j["energy"] = energy;
  j["kind"] = kind_to_json(report.kind);
  j["crossings"] = crossings_to_json(report.crossings);
  if (report.invariants.sig) j["sig"] = *report.invariants.sig;
  if (report.invariants.sec) j["sec"] = *report.invariants.sec;
  if (report.invariants.half_sig) j["half_sig"] = *report.invariants.half_sig;
  if (report.invariants.sig2) j["sig2"] = *report.invariants.sig2;
  j["sig_at_one"] = report.sig_at_one;
  j["sig_at_minus_one"] = report.sig_at_minus_one;
  const int chern = chern_number(model, energy, chern_grid);
  j["chern"] = chern;
  if (report.invariants.sig) j["agree"] = chern == *report.invariants.sig;
  const std::string text = j.dump(2) + "\n";
  write_file(fs::path(out_opts.out_dir) / "invariants.json", text);
  std::fputs(text.c_str(), stdout);
  return 0;
}

int run_edge_bands(const ModelOptions& model_opts, const OutputOptions& out_opts,
                   double energy, bool has_range, double e_min, double e_max, int n_e,
                   int k_grid) {
  const auto model = model_opts.build();
  const auto formats = out_opts.format_set();
  const fs::path dir(out_opts.out_dir);
  if (!has_range) {
    // Eigenphase curves of the edge unitary at one energy.
    const auto ks = circle_grid(k_grid);
    std::vector<std::vector<double>> phases(ks.size());
    for (size_t i = 0; i < ks.size(); ++i)
      phases[i] = edge_eigenphases(model, energy, ks[i]);
    if (formats.count("csv")) {
      std::string csv = "k1,band,theta\n";
      for (size_t i = 0; i < ks.size(); ++i)
        for (size_t b = 0; b < phases[i].size(); ++b)
          csv += fmt(ks[i]) + "," + std::to_string(b) + "," + fmt(phases[i][b]) + "\n";
      write_file(dir / "edge_phases.csv", csv);
    }
    if (formats.count("svg")) {
      svg::Canvas canvas(-pi, pi, -pi, pi);
      canvas.axes();
      const int bands = static_cast<int>(phases[0].size());
      for (int b = 0; b < bands; ++b) {
        std::vector<std::pair<double, double>> run;
        for (size_t i = 0; i < ks.size(); ++i) {
          const double th = phases[i][b];
          if (!run.empty() && std::abs(th - run.back().second) > pi / 2) {
            canvas.polyline(run);
            run.clear();
          }
          run.push_back({ks[i], th});
        }
        canvas.polyline(run);
      }
      write_file(dir / "edge_phases.svg", canvas.finish());
    }
    if (formats.count("json")) {
      CrossingScanOptions scan;
      scan.grid_size = k_grid;
      json j;
      j["schema"] = 1;
      j["command"] = "edge-bands";
      j["energy"] = energy;
      j["crossings"] = crossings_to_json(edge_crossings(model, energy, scan));
      write_file(dir / "edge_phases.json", j.dump(2) + "\n");
    }
    return 0;
  }

  CrossingScanOptions scan;
  scan.grid_size = k_grid;
  const auto slices = edge_bands(model, e_min, e_max, n_e, scan);
  if (formats.count("csv")) {
    std::string csv = "energy,status,k1,slope,multiplicity\n";
    for (const auto& slice : slices) {
      if (slice.crossings.empty())
        csv += fmt(slice.energy) + "," + slice.status + ",,,\n";
      for (const auto& c : slice.crossings)
        csv += fmt(slice.energy) + "," + slice.status + "," + fmt(c.k1) + "," +
               std::to_string(c.slope_sign) + "," + std::to_string(c.multiplicity) +
               "\n";
    }
    write_file(dir / "edge_bands.csv", csv);
  }
  if (formats.count("json")) {
    json arr = json::array();
    for (const auto& slice : slices) {
      json js;
      js["energy"] = slice.energy;
      js["status"] = slice.status;
      js["crossings"] = crossings_to_json(slice.crossings);
      arr.push_back(js);
    }
    json j;
    j["schema"] = 1;
    j["command"] = "edge-bands";
    j["slices"] = arr;
    write_file(dir / "edge_bands.json", j.dump(2) + "\n");
  }
  if (formats.count("svg")) {
    svg::Canvas canvas(-pi, pi, e_min, e_max);
    canvas.axes();
    for (const auto& slice : slices)
      for (const auto& c : slice.crossings)
        canvas.point(c.k1, slice.energy, c.slope_sign > 0 ? "#b02a2a" : "#1f4e9c", 2.2);
    write_file(dir / "edge_bands.svg", canvas.finish());
  }
  return 0;
}

int run_classify(const ModelOptions& model_opts, const OutputOptions& out_opts,
                 int spectrum_grid) {
  const auto model = model_opts.build();
  verify_metadata(model);
  json j;
  j["schema"] = 1;
  j["command"] = "classify";
  j["L"] = model.fiber;
  j["q"] = model.flux_num;
  j["p"] = model.flux_den;
  const auto kind = transfer_kind(model);
  j["kind"] = kind_to_json(kind);
  json inv = json::array();
  if (!kind.has_real()) {
    inv.push_back("sig");
  } else {
    const int ff = kind.eta_f * kind.eta_fr.value();
    const int r = kind.eta_r.value();
    if (ff > 0 && r > 0) {
      inv.push_back("sig");
      inv.push_back("sec");
    } else if (ff > 0) {
      inv.push_back("half_sig");
    } else if (r < 0) {
      inv.push_back("sig2");
    }
  }
  j["invariants"] = inv;
  j["symmetry"] = json::object();
  if (model.metadata.trs) j["symmetry"]["trs_parity"] = model.metadata.trs->parity;
  if (model.metadata.phs) j["symmetry"]["phs_parity"] = model.metadata.phs->parity;
  if (model.metadata.chiral)
    j["symmetry"]["chiral_parity"] = model.metadata.chiral->parity;
  // strong hypothesis scan
  double min_sv = std::numeric_limits<double>::max();
  for (double k2 : circle_grid(spectrum_grid, 1.0 / model.flux_den))
    min_sv = std::min(min_sv, fiber_min_sv(model, k2));
  j["min_singular_value_A"] = min_sv;
  j["strong_hypothesis"] = min_sv >= tol::sv_min;
  const std::string text = j.dump(2) + "\n";
  write_file(fs::path(out_opts.out_dir) / "classify.json", text);
  std::fputs(text.c_str(), stdout);
  return 0;
}

int run_collide(const OutputOptions& out_opts, const std::string& scenario_name,
                double a, double lambda_angle, int sigma, int kappa, double t_min,
                double t_max, int n_t) {
  CollisionScenario scenario;
  if (scenario_name == "krein2x2")
    scenario = CollisionScenario::krein_2x2;
  else if (scenario_name == "o11")
    scenario = CollisionScenario::o11_block;
  else if (scenario_name == "quadruple")
    scenario = CollisionScenario::quadruple;
  else if (scenario_name == "mediated")
    scenario = CollisionScenario::mediated;
  else
    throw BadParams("unknown scenario: " + scenario_name);
  if (n_t < 2) throw BadParams("need at least two path steps");

  CollisionParams params;
  params.a = a;
  params.lambda = Complex(std::cos(lambda_angle), std::sin(lambda_angle));
  params.sigma = sigma;
  params.kappa = kappa;
  const auto sym = collision_symmetries(scenario, params);
  const auto formats = out_opts.format_set();
  const fs::path dir(out_opts.out_dir);

  std::string csv = "t,index,re,im\n";
  json steps = json::array();
  std::vector<std::vector<Complex>> traces;
  for (int i = 0; i < n_t; ++i) {
    const double t = t_min + (t_max - t_min) * i / double(n_t - 1);
    const Matrix m = collision_path(scenario, params, t);
    auto evs = decompose(m).all_eigenvalues();
    std::sort(evs.begin(), evs.end(), [](const Complex& x, const Complex& y) {
      if (x.real() != y.real()) return x.real() < y.real();
      return x.imag() < y.imag();
    });
    traces.push_back(evs);
    for (size_t e = 0; e < evs.size(); ++e)
      csv += fmt(t) + "," + std::to_string(e) + "," + fmt(evs[e].real()) + "," +
             fmt(evs[e].imag()) + "\n";
    const auto inertia = unit_circle_inertia(m, sym.jf);
    json step;
    step["t"] = t;
    step["sig"] = global_signature(inertia.eigenvalues);
    step["sig_at_one"] = signature_at(inertia.eigenvalues, Complex(1, 0));
    step["sig_at_minus_one"] = signature_at(inertia.eigenvalues, Complex(-1, 0));
    int on_circle = 0;
    for (const auto& ev : inertia.eigenvalues) on_circle += ev.multiplicity;
    step["unit_multiplicity"] = on_circle;
    steps.push_back(step);
  }
  if (formats.count("csv")) write_file(dir / "collide.csv", csv);
  if (formats.count("json")) {
    json j;
    j["schema"] = 1;
    j["command"] = "collide";
    j["scenario"] = scenario_name;
    j["steps"] = steps;
    write_file(dir / "collide.json", j.dump(2) + "\n");
  }
  if (formats.count("svg")) {
    double radius = 1.3;
    for (const auto& evs : traces)
      for (const auto& ev : evs) radius = std::max(radius, std::abs(ev) * 1.05);
    svg::Canvas canvas(-radius, radius, -radius, radius);
    canvas.axes();
    canvas.dotted_unit_circle();
    for (const auto& evs : traces)
      for (const auto& ev : evs) canvas.point(ev.real(), ev.imag(), "#b02a2a", 1.4);
    write_file(dir / "collide.svg", canvas.finish());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krein-inertia topological invariants of tight-binding transfer operators"};
  app.require_subcommand(1);

  ModelOptions model_opts;
  OutputOptions out_opts;
  double energy = 0.0, e_min = 0.0, e_max = 0.0;
  int n_e = 0, k_grid = 629, spectrum_grid = 201, chern_grid = 60;
  double a = 1.0, lambda_angle = 0.0, t_min = -2.0, t_max = 2.0;
  int sigma = 1, kappa = 1, n_t = 41;
  std::string scenario;

  auto* spectrum = app.add_subcommand("spectrum", "bulk transfer operator spectrum");
  add_model_options(spectrum, model_opts);
  add_output_options(spectrum, out_opts);
  spectrum->add_option("--energy", energy, "energy E")->required();
  spectrum->add_option("--grid", spectrum_grid, "number of k2 points");

  auto* invariants = app.add_subcommand("invariants", "edge crossings and invariant set");
  add_model_options(invariants, model_opts);
  add_output_options(invariants, out_opts);
  invariants->add_option("--energy", energy, "energy E (0 for BdG models)");
  invariants->add_option("--k-grid", k_grid, "number of k1 points");
  invariants->add_option("--chern-grid", chern_grid, "Chern oracle grid");

  auto* bands = app.add_subcommand("edge-bands", "eigenphase curves or energy sweep");
  add_model_options(bands, model_opts);
  add_output_options(bands, out_opts);
  bands->add_option("--energy", energy, "single energy for eigenphase curves");
  auto* opt_emin = bands->add_option("--e-min", e_min, "sweep start");
  bands->add_option("--e-max", e_max, "sweep end");
  bands->add_option("--n-e", n_e, "sweep point count");
  bands->add_option("--k-grid", k_grid, "number of k1 points");

  auto* classify = app.add_subcommand("classify", "symmetry kind of a model");
  add_model_options(classify, model_opts);
  add_output_options(classify, out_opts);
  classify->add_option("--grid", spectrum_grid, "hypothesis scan grid");

  auto* collide = app.add_subcommand("collide", "eigenvalue collision demos");
  add_output_options(collide, out_opts);
  collide->add_option("--scenario", scenario, "krein2x2, o11, quadruple, mediated")
      ->required();
  collide->add_option("--a", a, "Jordan coupling");
  collide->add_option("--lambda-angle", lambda_angle, "collision anchor angle");
  collide->add_option("--sigma", sigma, "o11 sigma");
  collide->add_option("--kappa", kappa, "o11 kappa");
  collide->add_option("--t-min", t_min, "path start");
  collide->add_option("--t-max", t_max, "path end");
  collide->add_option("--n-t", n_t, "path steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return e.get_exit_code() == 0 ? 0 : 3;
  }

  try {
    if (spectrum->parsed())
      return run_spectrum(model_opts, out_opts, energy, spectrum_grid);
    if (invariants->parsed())
      return run_invariants(model_opts, out_opts, energy, k_grid, chern_grid);
    if (bands->parsed())
      return run_edge_bands(model_opts, out_opts, energy, opt_emin->count() > 0, e_min,
                            e_max, n_e, k_grid);
    if (classify->parsed()) return run_classify(model_opts, out_opts, spectrum_grid);
    if (collide->parsed())
      return run_collide(out_opts, scenario, a, lambda_angle, sigma, kappa, t_min,
                         t_max, n_t);
  } catch (const StrongHypothesisFailed& e) {
    std::fprintf(stderr, "strong hypothesis failed: %s (k2 = %g, sv = %g)\n", e.what(),
                 e.k2, e.singular_value);
    return 2;
  } catch (const BadParams& e) {
    std::fprintf(stderr, "bad configuration: %s\n", e.what());
    return 3;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "bad configuration: %s\n", e.what());
    return 3;
  } catch (const NotInGap& e) {
    std::fprintf(stderr, "energy not in a gap: %s\n", e.what());
    return 4;
  } catch (const FlatBandDetected& e) {
    std::fprintf(stderr, "flat edge band: %s\n", e.what());
    return 5;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 3;
}
