#ifndef KREINTOPO_TESTS_SUPPORT_HPP
#define KREINTOPO_TESTS_SUPPORT_HPP

#include <random>

#include "kreintopo/krein.hpp"
#include "kreintopo/spectral.hpp"
#include "kreintopo/symmetry.hpp"

namespace kreintopo::testing {

using Rng = std::mt19937_64;

inline Matrix random_complex(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = Complex(dist(rng), dist(rng));
  return m;
}

inline RealMatrix random_real(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> dist(0.0, 1.0);
  RealMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

inline Matrix random_hermitian(Rng& rng, int n) {
  const Matrix g = random_complex(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

// Random real orthogonal matrix via QR with positive diagonal.
inline RealMatrix random_orthogonal(Rng& rng, int n) {
  const RealMatrix g = random_real(rng, n, n);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

// Lie-algebra element of the J_F-unitaries: X* S + S X = 0 with S the
// Hermitian form; optionally fixed by the Real involution X -> J_R* conj(X) J_R.
inline Matrix random_group_algebra(Rng& rng, const Symmetry& jf, const Symmetry* jr,
                                   double scale = 1.0) {
  const Matrix s = jf.hermitian_form();
  Matrix x = scale * random_complex(rng, jf.dim(), jf.dim());
  x = 0.5 * (x - s * x.adjoint() * s);
  if (jr)
    x = 0.5 * (x + jr->matrix.adjoint() * x.conjugate() * jr->matrix);
  return x;
}

// Random element of U(K, J_F[, J_R]) via the exponential map.
inline Matrix random_group_element(Rng& rng, const Symmetry& jf,
                                   const Symmetry* jr = nullptr, double scale = 0.5) {
  const Matrix x = random_group_algebra(rng, jf, jr, scale);
  Matrix result = Matrix::Identity(jf.dim(), jf.dim());
  Matrix term = result;
  for (int k = 1; k <= 24; ++k) {
    term = term * x / double(k);
    result += term;
  }
  return result;
}

// Canonical symmetry pair for each Table-1 block representative, together
// with a constructed operator carrying planted unit-circle eigenvalues of
// known inertia, conjugated by a random group element.
struct KindSample {
  Symmetry jf;
  Symmetry jr;
  Matrix op;
  std::vector<KreinEigenvalue> planted;  // lambda, nu_plus, nu_minus
};

// Block A representative (1,1,1): real J(4,4)-orthogonal built from a
// positive rotation pair, a negative rotation pair, an O(1,1) block pinning
// +-1 with opposite inertia, and an off-circle Lorentz boost.
inline KindSample sample_kind_opq(Rng& rng) {
  std::uniform_real_distribution<double> a1(0.4, 1.3), a2(1.8, 2.7);
  const double th = a1(rng), ps = a2(rng);
  KindSample s;
  s.jf = make_symmetry(canon_J(4, 4), SymmetryFlavor::fundamental);
  s.jr = make_symmetry(Matrix::Identity(8, 8), SymmetryFlavor::real);
  // Coordinates 0..3 carry +1, 4..7 carry -1 in the form J(4,4).
  Matrix t = Matrix::Identity(8, 8);
  t(0, 0) = std::cos(th);
  t(0, 1) = -std::sin(th);
  t(1, 0) = std::sin(th);
  t(1, 1) = std::cos(th);
  t(4, 4) = std::cos(ps);
  t(4, 5) = -std::sin(ps);
  t(5, 4) = std::sin(ps);
  t(5, 5) = std::cos(ps);
  // eq-finex block (sigma = kappa = 1) on the mixed pair (2, 6).
  const double b = 1.0;
  t(2, 2) = std::cosh(b);
  t(2, 6) = std::sinh(b);
  t(6, 2) = -std::sinh(b);
  t(6, 6) = -std::cosh(b);
  // Lorentz boost on the mixed pair (3, 7): off-circle eigenvalues.
  t(3, 3) = std::cosh(0.8);
  t(3, 7) = std::sinh(0.8);
  t(7, 3) = std::sinh(0.8);
  t(7, 7) = std::cosh(0.8);
  const Matrix g = random_group_element(rng, s.jf, &s.jr, 0.3);
  s.op = g * t * g.inverse();
  const Complex eith(std::cos(th), std::sin(th)), eips(std::cos(ps), std::sin(ps));
  s.planted = {{eith, 1, 0, 1},           {std::conj(eith), 1, 0, 1},
               {eips, 0, 1, 1},           {std::conj(eips), 0, 1, 1},
               {Complex(1, 0), 1, 0, 1},  {Complex(-1, 0), 0, 1, 1}};
  return s;
}

// Block B representative (-1,1,1): real symplectic SP(4,R) with one rotation
// pair and one hyperbolic pair.
inline KindSample sample_kind_sp(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.4, 2.6);
  const double th = angle(rng);
  KindSample s;
  s.jf = make_symmetry(canon_I(2), SymmetryFlavor::fundamental);
  s.jr = make_symmetry(Matrix::Identity(4, 4), SymmetryFlavor::real);
  // Symplectic pairs are (0, 2) and (1, 3); rotation on the first pair.
  Matrix t = Matrix::Identity(4, 4);
  t(0, 0) = std::cos(th);
  t(0, 2) = -std::sin(th);
  t(2, 0) = std::sin(th);
  t(2, 2) = std::cos(th);
  t(1, 1) = std::exp(0.7);
  t(3, 3) = std::exp(-0.7);
  const Matrix g = random_group_element(rng, s.jf, &s.jr, 0.4);
  s.op = g * t * g.inverse();
  const Complex eith(std::cos(th), std::sin(th));
  s.planted = {{eith, 0, 1, 1}, {std::conj(eith), 1, 0, 1}};
  return s;
}

// Block C representative (-1,-1,1): SO*(4) with one rotation pair.
inline KindSample sample_kind_so_star(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.4, 2.6);
  const double th = angle(rng);
  KindSample s;
  s.jf = make_symmetry(canon_I(2), SymmetryFlavor::fundamental);
  s.jr = make_symmetry(canon_I(2), SymmetryFlavor::real);
  Matrix t = Matrix::Identity(4, 4);
  t(0, 0) = std::cos(th);
  t(0, 2) = -std::sin(th);
  t(2, 0) = std::sin(th);
  t(2, 2) = std::cos(th);
  const Matrix g = random_group_element(rng, s.jf, &s.jr, 0.4);
  s.op = g * t * g.inverse();
  const Complex eith(std::cos(th), std::sin(th));
  // The untouched symplectic pair (1, 3) stays at eigenvalue 1 with one
  // positive and one negative direction of the form i I.
  s.planted = {{eith, 0, 1, 1}, {std::conj(eith), 1, 0, 1}, {Complex(1, 0), 1, 1, 2}};
  return s;
}

// Block D representative (1,-1,1): SP(2N,2N)-type on C^4 with canonical pair
// (J(2,2), diag(I, -I)) and a rotation in the J-positive symplectic plane.
inline KindSample sample_kind_sp22(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.4, 2.6);
  const double th = angle(rng);
  KindSample s;
  s.jf = make_symmetry(canon_J(2, 2), SymmetryFlavor::fundamental);
  Matrix jr = Matrix::Zero(4, 4);
  jr.topLeftCorner(2, 2) = canon_I(1);
  jr.bottomRightCorner(2, 2) = -canon_I(1);
  s.jr = make_symmetry(jr, SymmetryFlavor::real);
  Matrix t = Matrix::Identity(4, 4);
  t(0, 0) = std::cos(th);
  t(0, 1) = -std::sin(th);
  t(1, 0) = std::sin(th);
  t(1, 1) = std::cos(th);
  const Matrix g = random_group_element(rng, s.jf, &s.jr, 0.4);
  s.op = g * t * g.inverse();
  const Complex eith(std::cos(th), std::sin(th));
  // Rotation pair in the positive block: inertia (1,0) at both e^{+-i th};
  // the untouched negative block contributes the Kramers pair at 1.
  s.planted = {{eith, 1, 0, 1}, {std::conj(eith), 1, 0, 1}, {Complex(1, 0), 0, 2, 2}};
  return s;
}

// Independent Riesz projection oracle: (2 pi i)^{-1} contour integral of the
// resolvent on a circle around the cluster, 256-point trapezoid rule.
inline Matrix contour_projection(const Matrix& t, const Complex& center, double radius,
                                 int points = 256) {
  const int n = static_cast<int>(t.rows());
  Matrix sum = Matrix::Zero(n, n);
  for (int j = 0; j < points; ++j) {
    const double th = 2.0 * pi * j / points;
    const Complex z = center + radius * Complex(std::cos(th), std::sin(th));
    const Complex dz = radius * Complex(-std::sin(th), std::cos(th)) * 2.0 * pi /
                       double(points);
    const Matrix resolvent =
        (z * Matrix::Identity(n, n) - t).partialPivLu().solve(Matrix::Identity(n, n));
    sum += resolvent * dz;
  }
  return sum / Complex(0, 2.0 * pi);
}

}  // namespace kreintopo::testing

#endif
