#include <doctest.h>

#include "kreintopo/edge.hpp"
#include "kreintopo/models.hpp"
#include "support.hpp"

using namespace kreintopo;

TEST_CASE("harper constructor") {
  const auto model = models::harper(3, 7);
  CHECK(model.fiber == 1);
  CHECK(model.flux_num == 3);
  CHECK(model.flux_den == 7);
  CHECK(std::abs(model.w1(0, 0) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(model.w2(0, 0) - Complex(1, 0)) < 1e-15);
  CHECK(model.w3.norm() == 0.0);
  CHECK(model.w4.norm() == 0.0);
  CHECK(model.v.norm() == 0.0);
  // reduced flux storage
  const auto reduced = models::harper(2, 4);
  CHECK(reduced.flux_num == 1);
  CHECK(reduced.flux_den == 2);
}

TEST_CASE("harper band and gap statuses of the figure") {
  const auto model = models::harper(3, 7);
  CHECK(energy_gap_status(model, -1.9).in_gap);
  CHECK(!energy_gap_status(model, -2.2).in_gap);
}

namespace {

// Dense operators on a truncated width x width lattice with L fiber
// components; Dirichlet truncation (hops off the patch dropped).
struct Lattice {
  int width, fiber;
  int dim() const { return width * width * fiber; }
  int idx(int x, int y, int f) const { return (x * width + y) * fiber + f; }

  // hop by (dx, dy) with an (x, y)-dependent fiber block at the destination
  Matrix hop(int dx, int dy, const std::function<Matrix(int, int)>& block) const {
    Matrix m = Matrix::Zero(dim(), dim());
    for (int x = 0; x < width; ++x)
      for (int y = 0; y < width; ++y) {
        const int sx = x - dx, sy = y - dy;
        if (sx < 0 || sx >= width || sy < 0 || sy >= width) continue;
        const Matrix b = block(x, y);
        for (int r = 0; r < fiber; ++r)
          for (int s = 0; s < fiber; ++s) m(idx(x, y, r), idx(sx, sy, s)) = b(r, s);
      }
    return m;
  }
};

Matrix entrywise_phase(const Matrix& w, const IntMatrix& sign, double phase) {
  Matrix out = w;
  for (int r = 0; r < w.rows(); ++r)
    for (int s = 0; s < w.cols(); ++s)
      out(r, s) *= std::exp(Complex(0, sign(r, s) * phase));
  return out;
}

// Assembles the model's hopping expansion on the lattice via the block table
// h_{(-1,0)}(y) = W1 e^{i phi y}, h_{(0,1)} = W2*, h_{(-1,1)}(y) = W3 e^{i phi y},
// h_{(-1,-1)}(y) = W4* e^{i phi (y+1)}, entrywise flux per flux_sign.
Matrix lattice_from_model(const HoppingModel& model, const Lattice& lat) {
  const double phi = model.flux();
  const auto& c = model.flux_sign;
  Matrix h = Matrix::Zero(lat.dim(), lat.dim());
  auto at = [c, phi](Matrix w, double shift) {
    return [=](int, int y) { return entrywise_phase(w, c, phi * (y + shift)); };
  };
  auto at_conj = [c, phi](Matrix w, double shift) {
    return [=](int, int y) { return entrywise_phase(w, c, -phi * (y + shift)); };
  };
  h += lat.hop(-1, 0, at(model.w1, 0));
  h += lat.hop(1, 0, at_conj(model.w1.adjoint(), 0));
  h += lat.hop(0, 1, [&](int, int) { return model.w2.adjoint().eval(); });
  h += lat.hop(0, -1, [&](int, int) { return model.w2; });
  h += lat.hop(-1, 1, at(model.w3, 0));
  h += lat.hop(1, -1, at_conj(model.w3.adjoint(), 1));
  h += lat.hop(-1, -1, at(model.w4.adjoint(), 1));
  h += lat.hop(1, 1, at_conj(model.w4, 0));
  h += lat.hop(0, 0, [&](int, int) { return model.v; });
  return h;
}

}  // namespace

TEST_CASE("BdG expansions match direct operator application on a 15x15 patch") {
  const int width = 15;
  const Lattice lat{width, 2};
  const Lattice scalar{width, 1};
  const Complex kI(0, 1);

  // Scalar lattice shifts (S phi)_n = phi_{n-1} and the magnetic translation
  // of the particle sector; the constructors realize the conjugate magnetic
  // orientation.
  const Matrix s1 =
      scalar.hop(1, 0, [&](int, int) { return Matrix::Identity(1, 1).eval(); });
  const Matrix s2 =
      scalar.hop(0, 1, [&](int, int) { return Matrix::Identity(1, 1).eval(); });
  auto magnetic_s1 = [&](double sign_phi, double phi) {
    Matrix m = Matrix::Zero(scalar.dim(), scalar.dim());
    for (int x = 1; x < width; ++x)
      for (int y = 0; y < width; ++y)
        m(scalar.idx(x, y, 0), scalar.idx(x - 1, y, 0)) =
            std::exp(kI * (sign_phi * phi * y));
    return m;
  };
  // scalar lattice operator placed into fiber corner (f, g)
  auto embed = [&](const Matrix& op, int f, int g) {
    Matrix m = Matrix::Zero(lat.dim(), lat.dim());
    for (int row = 0; row < scalar.dim(); ++row)
      for (int col = 0; col < scalar.dim(); ++col)
        if (op(row, col) != Complex(0, 0)) m(2 * row + f, 2 * col + g) = op(row, col);
    return m;
  };

  auto interior_rows_match = [&](const Matrix& a, const Matrix& b) {
    double worst = 0;
    for (int x = 2; x < width - 2; ++x)
      for (int y = 2; y < width - 2; ++y)
        for (int f = 0; f < 2; ++f) {
          const int row = lat.idx(x, y, f);
          worst = std::max(worst, (a.row(row) - b.row(row)).norm());
        }
    return worst;
  };

  SUBCASE("p+-ip") {
    const double delta = 0.3, mu = 0.7;
    const auto model = models::p_ip(delta, mu, 1, 3, 1);
    const double phi = model.flux();
    const Matrix u1 = magnetic_s1(1.0, phi);
    const Matrix u1c = magnetic_s1(-1.0, phi);
    const Matrix one = Matrix::Identity(scalar.dim(), scalar.dim());
    const Matrix kinetic = u1 + u1.adjoint() + s2 + s2.adjoint();
    const Matrix kinetic_c = u1c + u1c.adjoint() + s2 + s2.adjoint();
    // constructor chirality +1 carries the pairing S1 - S1* - i (S2 - S2*)
    const Matrix pair =
        delta * ((s1 - s1.adjoint()) - kI * (s2 - s2.adjoint()));
    const Matrix pair_lower =
        delta * ((s1.adjoint() - s1) - kI * (s2 - s2.adjoint()));
    const Matrix direct = embed(kinetic - mu * one, 0, 0) +
                          embed(-kinetic_c + mu * one, 1, 1) +
                          embed(pair, 0, 1) + embed(pair_lower, 1, 0);
    const Matrix expanded = lattice_from_model(model, lat);
    CHECK(interior_rows_match(direct, expanded) < 1e-12);
    CHECK((expanded - expanded.adjoint()).norm() < 1e-12);
  }

  SUBCASE("d+-id") {
    const double delta = 0.25, mu = 0.4;
    const auto model = models::d_id(delta, mu, 1, 3, 1);
    const double phi = model.flux();
    const Matrix u1 = magnetic_s1(1.0, phi);
    const Matrix u1c = magnetic_s1(-1.0, phi);
    const Matrix one = Matrix::Identity(scalar.dim(), scalar.dim());
    const Matrix kinetic = u1 + u1.adjoint() + s2 + s2.adjoint();
    const Matrix kinetic_c = u1c + u1c.adjoint() + s2 + s2.adjoint();
    const Matrix dwave = s1 + s1.adjoint() - s2 - s2.adjoint();
    const Matrix cross = (s1 - s1.adjoint()) * (s2 - s2.adjoint());
    const Matrix direct = embed(kinetic - mu * one, 0, 0) +
                          embed(-kinetic_c + mu * one, 1, 1) +
                          embed(delta * (dwave + kI * cross), 0, 1) +
                          embed(delta * (dwave - kI * cross), 1, 0);
    const Matrix expanded = lattice_from_model(model, lat);
    CHECK(interior_rows_match(direct, expanded) < 1e-12);
    CHECK((expanded - expanded.adjoint()).norm() < 1e-12);
  }

  SUBCASE("harper against its fiber definition") {
    const Lattice lat1{width, 1};
    const auto model = models::harper(1, 3);
    const double phi = model.flux();
    auto s1a = lat1.hop(-1, 0, [&](int, int) { return Matrix::Identity(1, 1).eval(); });
    auto s2a = lat1.hop(0, -1, [&](int, int) { return Matrix::Identity(1, 1).eval(); });
    // U1 = e^{-i phi X2} S1 as displayed for the magnetic Laplacian.
    Matrix u1 = Matrix::Zero(lat1.dim(), lat1.dim());
    for (int x = 0; x < width; ++x)
      for (int y = 0; y < width; ++y) {
        if (x == 0) continue;
        u1(lat1.idx(x, y, 0), lat1.idx(x - 1, y, 0)) = std::exp(kI * (-phi * y));
      }
    const Matrix direct = u1 + u1.adjoint() + s2a + s2a.adjoint();
    const Matrix expanded = lattice_from_model(model, lat1);
    double worst = 0;
    for (int x = 2; x < width - 2; ++x)
      for (int y = 2; y < width - 2; ++y) {
        const int row = lat1.idx(x, y, 0);
        worst = std::max(worst, (direct.row(row) - expanded.row(row)).norm());
      }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("kane-mele is TRS-odd with Kramers-paired crossings") {
  const auto model = models::kane_mele(1.0, 0.45, 0.3);
  CHECK(model.fiber == 4);
  verify_metadata(model);
  CHECK(model.metadata.trs->parity == -1);
  const auto report = edge_invariants(model, 0.0);
  CHECK(report.invariants.sig2.has_value());
  CHECK(report.invariants.sig2.value() == 1);
  // crossings in +-k1 pairs
  for (const auto& c : report.crossings) {
    bool paired = false;
    for (const auto& other : report.crossings)
      if (std::abs(wrap_angle(other.k1 + c.k1)) < 1e-6) paired = true;
    CHECK(paired);
  }
}

TEST_CASE("kane-mele band statuses of the figure") {
  const auto model = models::kane_mele(1.0, 0.45, 0.3);
  CHECK(energy_gap_status(model, 0.0).in_gap);
  CHECK(!energy_gap_status(model, 0.6).in_gap);
}

TEST_CASE("p+-ip invariants across the figure's chemical potentials") {
  struct Want {
    double mu;
    int sig, sec, chern;
  };
  const Want wants[] = {{0.2, 1, 0, 1}, {1.9, 2, 0, 2}, {2.5, -1, 1, -1}};
  for (const auto& w : wants) {
    const auto model = models::p_ip(0.2, w.mu, 1, 3, 1);
    const auto report = edge_invariants(model, 0.0);
    CHECK(report.invariants.sig.value() == w.sig);
    CHECK(report.invariants.sec.value() == w.sec);
    CHECK(chern_number(model, 0.0) == w.chern);
  }
}

TEST_CASE("p+-ip Majorana criterion at odd signature") {
  // mu = 2.5: odd Sig forces an unpaired crossing at lambda = +-1.
  const auto model = models::p_ip(0.2, 2.5, 1, 3, 1);
  const auto report = edge_invariants(model, 0.0);
  REQUIRE(report.invariants.sig.has_value());
  CHECK(report.invariants.sig.value() % 2 != 0);
  bool pinned = false;
  for (const auto& c : report.crossings)
    if (std::abs(c.k1) < 1e-6 || std::abs(std::abs(c.k1) - pi) < 1e-6) pinned = true;
  CHECK(pinned);
}

TEST_CASE("d+-id kind and half signature") {
  const auto model = models::d_id(0.2, 0.0, 0, 1, 1);
  verify_metadata(model);
  const auto kind = transfer_kind(model);
  CHECK(kind.eta_f == -1);
  CHECK(kind.eta_r.value() == -1);
  CHECK(kind.eta_fr.value() == -1);
  const auto report = edge_invariants(model, 0.0);
  REQUIRE(report.invariants.half_sig.has_value());
  CHECK(report.invariants.half_sig.value() == 1);
}

TEST_CASE("d+-id crossings at the reflection-symmetric points have even weight") {
  const auto model = models::d_id(0.2, 0.0, 0, 1, 1);
  const auto report = edge_invariants(model, 0.0);
  // Kramers: any crossing pinned at k1 = 0 or pi carries even multiplicity;
  // generic ones appear in +-k1 pairs with equal slopes.
  for (const auto& c : report.crossings) {
    const bool at_real_axis =
        std::abs(c.k1) < 1e-6 || std::abs(std::abs(c.k1) - pi) < 1e-6;
    if (at_real_axis) {
      CHECK(c.multiplicity % 2 == 0);
    } else {
      bool paired = false;
      for (const auto& other : report.crossings)
        if (std::abs(wrap_angle(other.k1 + c.k1)) < 1e-6 &&
            other.slope_sign == c.slope_sign)
          paired = true;
      CHECK(paired);
    }
  }
}

TEST_CASE("constructed models pass their own symmetry checks") {
  verify_metadata(models::kane_mele(0.3, 0.1, 0.05));
  verify_metadata(models::p_ip(0.4, 1.2, 2, 5, -1));
  verify_metadata(models::d_id(0.3, 0.4, 1, 2, -1));
}

TEST_CASE("bad chirality arguments are rejected") {
  CHECK_THROWS_AS(models::p_ip(0.2, 0.5, 1, 3, 2), BadParams);
  CHECK_THROWS_AS(models::d_id(0.2, 0.5, 1, 3, 0), BadParams);
}
