#include "kreintopo/symmetry.hpp"

#include <cmath>

namespace kreintopo {

std::vector<double> circle_grid(int n, double scale) {
  std::vector<double> ks(n);
  for (int j = 0; j < n; ++j) ks[j] = wrap_angle(2.0 * pi * j / n) * scale;
  std::sort(ks.begin(), ks.end());
  return ks;
}

Symmetry make_symmetry(const Matrix& m, SymmetryFlavor flavor) {
  if (m.rows() != m.cols()) throw DimensionMismatch("symmetry matrix must be square");
  if (!is_real(m)) throw SymmetryViolated("symmetry matrix is not real");
  if (!is_unitary(m)) throw SymmetryViolated("symmetry matrix is not unitary");
  const auto n = m.rows();
  const Matrix sq = m * m;
  const double dp = (sq - Matrix::Identity(n, n)).norm();
  const double dm = (sq + Matrix::Identity(n, n)).norm();
  Symmetry s;
  s.matrix = m;
  s.flavor = flavor;
  if (dp <= tol::unitary)
    s.square_sign = 1;
  else if (dm <= tol::unitary)
    s.square_sign = -1;
  else
    throw SymmetryViolated("symmetry matrix does not square to +1 or -1");
  return s;
}

int commutation_sign(const Matrix& a, const Matrix& b, double tolerance) {
  const Matrix ab = a * b, ba = b * a;
  if ((ab - ba).norm() <= tolerance) return 1;
  if ((ab + ba).norm() <= tolerance) return -1;
  throw InconsistentSigns("matrices neither commute nor anti-commute");
}

SymmetryKind classify(const Symmetry& jf, const Symmetry* jr, const Symmetry* jc) {
  SymmetryKind kind;
  kind.eta_f = jf.square_sign;
  if (jr) {
    kind.eta_r = jr->square_sign;
    kind.eta_fr = commutation_sign(jf.matrix, jr->matrix);
  }
  if (jc) {
    kind.eta_c = jc->square_sign;
    kind.eta_fc = commutation_sign(jf.matrix, jc->matrix);
    if (jr) kind.eta_rc = commutation_sign(jr->matrix, jc->matrix);
  }
  return kind;
}

SymmetryReport check_symmetries(const Matrix& t, const Symmetry& jf,
                                const Symmetry* jr, const Symmetry* jc,
                                double tolerance) {
  const auto n = t.rows();
  if (t.cols() != n) throw DimensionMismatch("operator must be square");
  if (jf.dim() != n || (jr && jr->dim() != n) || (jc && jc->dim() != n))
    throw DimensionMismatch("symmetry dimension does not match operator");
  Eigen::JacobiSVD<Matrix> svd(t);
  if (svd.singularValues()(svd.singularValues().size() - 1) < tol::sv_min)
    throw SingularInput("operator is numerically singular");

  SymmetryReport report;
  report.j_unitary_residual = (t.adjoint() * jf.matrix * t - jf.matrix).norm();
  report.j_unitary = report.j_unitary_residual <= tolerance * std::max(1.0, t.norm() * t.norm());
  if (jr) {
    report.real_residual = (jr->matrix.adjoint() * t.conjugate() * jr->matrix - t).norm();
    report.real_symmetric = report.real_residual <= tolerance * std::max(1.0, t.norm());
  }
  if (jc) {
    report.chiral_residual = (jc->matrix.adjoint() * t * jc->matrix - t).norm();
    report.chiral_symmetric = report.chiral_residual <= tolerance * std::max(1.0, t.norm());
  }
  return report;
}

Matrix canon_I(int half) {
  if (half < 0) throw OddDimension("I requires a nonnegative half dimension");
  Matrix m = Matrix::Zero(2 * half, 2 * half);
  m.topRightCorner(half, half) = -Matrix::Identity(half, half);
  m.bottomLeftCorner(half, half) = Matrix::Identity(half, half);
  return m;
}

Matrix canon_K(int half) {
  if (half < 0) throw OddDimension("K requires a nonnegative half dimension");
  Matrix m = Matrix::Zero(2 * half, 2 * half);
  m.topRightCorner(half, half) = Matrix::Identity(half, half);
  m.bottomLeftCorner(half, half) = Matrix::Identity(half, half);
  return m;
}

Matrix canon_J(int n_plus, int n_minus) {
  Matrix m = Matrix::Zero(n_plus + n_minus, n_plus + n_minus);
  m.topLeftCorner(n_plus, n_plus) = Matrix::Identity(n_plus, n_plus);
  m.bottomRightCorner(n_minus, n_minus) = -Matrix::Identity(n_minus, n_minus);
  return m;
}

Matrix canon_C(int half) {
  if (half < 0) throw OddDimension("C requires a nonnegative half dimension");
  const double r = 1.0 / std::sqrt(2.0);
  Matrix m = Matrix::Zero(2 * half, 2 * half);
  const Matrix id = Matrix::Identity(half, half);
  m.topLeftCorner(half, half) = r * id;
  m.topRightCorner(half, half) = Complex(0, -r) * id;
  m.bottomLeftCorner(half, half) = r * id;
  m.bottomRightCorner(half, half) = Complex(0, r) * id;
  return m;
}

Matrix canon_R(int half) {
  if (half < 0) throw OddDimension("R requires a nonnegative half dimension");
  const double r = 1.0 / std::sqrt(2.0);
  Matrix m = Matrix::Zero(2 * half, 2 * half);
  const Matrix id = Matrix::Identity(half, half);
  m.topLeftCorner(half, half) = r * id;
  m.topRightCorner(half, half) = r * id;
  m.bottomLeftCorner(half, half) = r * id;
  m.bottomRightCorner(half, half) = -r * id;
  return m;
}

CanonicalBlocks canonical_blocks(int n_plus, int n_minus) {
  CanonicalBlocks b;
  b.J = canon_J(n_plus, n_minus);
  if (n_plus != n_minus)
    throw OddDimension("I, K, C, R require equal block sizes");
  b.I = canon_I(n_plus);
  b.K = canon_K(n_plus);
  b.C = canon_C(n_plus);
  b.R = canon_R(n_plus);
  return b;
}

}  // namespace kreintopo
