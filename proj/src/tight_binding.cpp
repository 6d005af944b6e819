#include "kreintopo/tight_binding.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace kreintopo {
namespace {

void require_square(const Matrix& m, int dim, const char* name) {
  if (m.rows() != dim || m.cols() != dim)
    throw DimensionMismatch(std::string(name) + " has wrong shape");
}

// Entrywise magnetic phase: W(r,s) * exp(i * flux_sign(r,s) * phase).
Matrix phased(const Matrix& w, const IntMatrix& sign, double phase) {
  Matrix out = w;
  for (int r = 0; r < w.rows(); ++r)
    for (int s = 0; s < w.cols(); ++s)
      out(r, s) *= std::exp(Complex(0, sign(r, s) * phase));
  return out;
}

}  // namespace

HoppingModel make_model(int fiber, int q, int p, const Matrix& w1, const Matrix& w2,
                        const Matrix& w3, const Matrix& w4, const Matrix& v,
                        const IntMatrix* flux_sign, SymmetryMetadata metadata) {
  if (fiber < 1) throw BadParams("fiber dimension must be positive");
  if (p < 1) throw BadParams("flux denominator must be positive");
  HoppingModel model;
  model.fiber = fiber;
  const int g = std::gcd(std::abs(q), p);
  model.flux_num = q / g;
  model.flux_den = p / g;
  model.flux_num %= model.flux_den;
  if (model.flux_num < 0) model.flux_num += model.flux_den;
  require_square(w1, fiber, "W1");
  require_square(w2, fiber, "W2");
  require_square(w3, fiber, "W3");
  require_square(w4, fiber, "W4");
  require_square(v, fiber, "V");
  if (!is_hermitian(v)) throw SymmetryViolated("V must be Hermitian");
  model.w1 = w1;
  model.w2 = w2;
  model.w3 = w3;
  model.w4 = w4;
  model.v = v;
  if (flux_sign) {
    if (flux_sign->rows() != fiber || flux_sign->cols() != fiber)
      throw DimensionMismatch("flux_sign has wrong shape");
    if (*flux_sign != flux_sign->transpose().eval())
      throw BadParams("flux_sign must be symmetric");
    model.flux_sign = *flux_sign;
  } else {
    model.flux_sign = IntMatrix::Ones(fiber, fiber);
  }
  model.metadata = std::move(metadata);
  return model;
}

FiberPair fiber_AB(const HoppingModel& model, double k2) {
  const int L = model.fiber, p = model.flux_den;
  const double phi = model.flux();
  FiberPair f;
  f.a = Matrix::Zero(L * p, L * p);
  f.b = Matrix::Zero(L * p, L * p);
  const Complex em(std::cos(k2), -std::sin(k2));  // e^{-i k2}
  const Complex ep = std::conj(em);
  // Entries carry the displayed phases W1 e^{i phi m}, W3 e^{i(phi m - k2)},
  // W4* e^{i(phi m + phi + k2)}, W2^* e^{-i k2}, W2 e^{i k2}; the hop
  // directions are those of the coefficient operators A = W1 e^{i phi X2}
  // + W3 e^{i phi X2} S2 + W4* S2* e^{i phi X2} and B = W2* S2 + W2 S2* + V.
  for (int m = 0; m < p; ++m) {
    const int up = (m - 1 + p) % p;    // S2 lowers the fiber index row-wise
    const int down = (m + 1) % p;
    f.a.block(L * m, L * m, L, L) += phased(model.w1, model.flux_sign, phi * m);
    f.a.block(L * m, L * up, L, L) += phased(model.w3, model.flux_sign, phi * m) * em;
    f.a.block(L * m, L * down, L, L) +=
        phased(model.w4.adjoint(), model.flux_sign, phi * (m + 1)) * ep;
    f.b.block(L * m, L * up, L, L) += model.w2.adjoint() * em;
    f.b.block(L * m, L * down, L, L) += model.w2 * ep;
    f.b.block(L * m, L * m, L, L) += model.v;
  }
  return f;
}

double fiber_min_sv(const HoppingModel& model, double k2) {
  Eigen::JacobiSVD<Matrix> svd(fiber_AB(model, k2).a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

Matrix bulk_transfer_fiber(const HoppingModel& model, double E, double k2) {
  const FiberPair f = fiber_AB(model, k2);
  const int n = static_cast<int>(f.a.rows());
  Eigen::PartialPivLU<Matrix> lu(f.a);
  Eigen::JacobiSVD<Matrix> svd(f.a);
  const double sv = svd.singularValues()(n - 1);
  if (sv < tol::sv_min)
    throw StrongHypothesisFailed("A(k2) violates the strong hypothesis", k2, sv);
  const Matrix ainv = lu.solve(Matrix::Identity(n, n));
  Matrix t = Matrix::Zero(2 * n, 2 * n);
  t.topLeftCorner(n, n) = (E * Matrix::Identity(n, n) - f.b) * ainv;
  t.topRightCorner(n, n) = -f.a.adjoint();
  t.bottomLeftCorner(n, n) = ainv;
  return t;
}

double TransferSpectrum::min_distance_to_circle() const {
  double dist = std::numeric_limits<double>::max();
  for (const auto& evs : eigenvalues)
    for (const auto& ev : evs) dist = std::min(dist, std::abs(std::abs(ev) - 1.0));
  return dist;
}

TransferSpectrum bulk_transfer_spectrum(const HoppingModel& model, double E,
                                        int grid_size) {
  TransferSpectrum spectrum;
  spectrum.k2 = circle_grid(grid_size, 1.0 / model.flux_den);
  spectrum.eigenvalues.resize(spectrum.k2.size());
  for (size_t i = 0; i < spectrum.k2.size(); ++i) {
    const Matrix t = bulk_transfer_fiber(model, E, spectrum.k2[i]);
    Eigen::ComplexEigenSolver<Matrix> es(t, false);
    if (es.info() != Eigen::Success)
      throw ConvergenceFailure("transfer fiber eigensolver failed");
    auto& out = spectrum.eigenvalues[i];
    out.resize(es.eigenvalues().size());
    for (int j = 0; j < es.eigenvalues().size(); ++j) out[j] = es.eigenvalues()(j);
    std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
  }
  return spectrum;
}

Matrix bloch_hamiltonian(const HoppingModel& model, double k1, double k2) {
  const FiberPair f = fiber_AB(model, k2);
  const Complex e1(std::cos(k1), std::sin(k1));  // 1-direction as in the edge sector
  return f.a * e1 + f.b + f.a.adjoint() * std::conj(e1);
}

std::vector<double> bloch_bands(const HoppingModel& model, double k1, double k2) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(bloch_hamiltonian(model, k1, k2));
  if (es.info() != Eigen::Success) throw ConvergenceFailure("Bloch eigensolver failed");
  std::vector<double> bands(es.eigenvalues().size());
  for (int i = 0; i < es.eigenvalues().size(); ++i) bands[i] = es.eigenvalues()(i);
  return bands;
}

GapStatus energy_gap_status(const HoppingModel& model, double E, int grid_size) {
  GapStatus status;
  status.transfer_distance = bulk_transfer_spectrum(model, E, grid_size).min_distance_to_circle();
  double band_dist = std::numeric_limits<double>::max();
  const auto k1s = circle_grid(grid_size);
  const auto k2s = circle_grid(grid_size, 1.0 / model.flux_den);
  for (double k1 : k1s)
    for (double k2 : k2s)
      for (double band : bloch_bands(model, k1, k2))
        band_dist = std::min(band_dist, std::abs(band - E));
  status.band_distance = band_dist;
  status.in_gap = status.transfer_distance > tol::gap_dist && band_dist > tol::band_hit;
  return status;
}

namespace {

void check_real_unitary_parity(const SymmetryMetadata::Entry& entry, int dim,
                               const char* name) {
  if (entry.matrix.rows() != dim || entry.matrix.cols() != dim)
    throw DimensionMismatch(std::string(name) + " metadata has wrong shape");
  if (!is_real(entry.matrix) || !is_unitary(entry.matrix))
    throw SymmetryViolated(std::string(name) + " metadata matrix is not real unitary");
  const Matrix sq = entry.matrix * entry.matrix;
  const Matrix want = double(entry.parity) * Matrix::Identity(dim, dim);
  if ((sq - want).norm() > tol::unitary)
    throw SymmetryViolated(std::string(name) + " metadata square does not match parity");
}

double relation_residual(const Matrix& got, const Matrix& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

}  // namespace

void verify_metadata(const HoppingModel& model) {
  const int L = model.fiber;
  const Matrix ws[4] = {model.w1, model.w2, model.w3, model.w4};
  if (model.metadata.trs) {
    const auto& entry = *model.metadata.trs;
    check_real_unitary_parity(entry, L, "TRS");
    if (model.flux_num != 0)
      throw SymmetryViolated("time reversal requires vanishing magnetic flux");
    const Matrix& is = entry.matrix;
    for (const auto& w : ws)
      if (relation_residual(is.adjoint() * w.conjugate() * is, w) > tol::sym)
        throw SymmetryViolated("TRS condition fails on a hopping matrix");
    if (relation_residual(is.adjoint() * model.v.conjugate() * is, model.v) > tol::sym)
      throw SymmetryViolated("TRS condition fails on V");
  }
  if (model.metadata.phs) {
    const auto& entry = *model.metadata.phs;
    check_real_unitary_parity(entry, L, "PHS");
    const Matrix& kp = entry.matrix;
    for (const auto& w : ws)
      if (relation_residual(kp.adjoint() * w.conjugate() * kp, Matrix(-w)) > tol::sym)
        throw SymmetryViolated("PHS condition fails on a hopping matrix");
    if (relation_residual(kp.adjoint() * model.v.conjugate() * kp, Matrix(-model.v)) > tol::sym)
      throw SymmetryViolated("PHS condition fails on V");
    // The conjugation must also invert the entrywise flux pattern.
    const RealMatrix perm = kp.cwiseAbs().real();
    const RealMatrix moved =
        perm.transpose() * model.flux_sign.cast<double>() * perm;
    if ((moved + model.flux_sign.cast<double>()).norm() > tol::sym)
      throw SymmetryViolated("PHS conjugation is incompatible with the flux pattern");
  }
  if (model.metadata.chiral) {
    const auto& entry = *model.metadata.chiral;
    check_real_unitary_parity(entry, L, "chiral");
    const Matrix& kc = entry.matrix;
    for (const auto& w : ws)
      if (relation_residual(kc.adjoint() * w * kc, Matrix(-w)) > tol::sym)
        throw SymmetryViolated("chiral condition fails on a hopping matrix");
    if (relation_residual(kc.adjoint() * model.v * kc, Matrix(-model.v)) > tol::sym)
      throw SymmetryViolated("chiral condition fails on V");
  }
}

SymmetryKind transfer_kind(const HoppingModel& model) {
  SymmetryKind kind;
  kind.eta_f = -1;  // fundamental symmetry I on the C^2 grading
  if (model.metadata.trs) {
    kind.eta_r = model.metadata.trs->parity;
    kind.eta_fr = 1;  // 1 (x) I_s commutes with I (x) 1
  } else if (model.metadata.phs) {
    kind.eta_r = model.metadata.phs->parity;
    kind.eta_fr = -1;  // J (x) K_ph anti-commutes with I (x) 1
  }
  return kind;
}

Matrix transfer_real_symmetry(const HoppingModel& model) {
  const int n = model.fiber * model.flux_den;
  Matrix out = Matrix::Zero(2 * n, 2 * n);
  if (model.metadata.trs) {
    const Matrix is = Matrix::Identity(model.flux_den, model.flux_den);
    Matrix big = Matrix::Zero(n, n);
    for (int m = 0; m < model.flux_den; ++m)
      big.block(model.fiber * m, model.fiber * m, model.fiber, model.fiber) =
          model.metadata.trs->matrix;
    out.topLeftCorner(n, n) = big;
    out.bottomRightCorner(n, n) = big;
    return out;
  }
  if (model.metadata.phs) {
    Matrix big = Matrix::Zero(n, n);
    for (int m = 0; m < model.flux_den; ++m)
      big.block(model.fiber * m, model.fiber * m, model.fiber, model.fiber) =
          model.metadata.phs->matrix;
    out.topLeftCorner(n, n) = big;
    out.bottomRightCorner(n, n) = -big;
    return out;
  }
  throw BadParams("model carries no Real symmetry metadata");
}

}  // namespace kreintopo
