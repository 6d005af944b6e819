#include "kreintopo/models.hpp"

#include <cmath>

namespace kreintopo {
namespace models {
namespace {

const Complex kI(0, 1);

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

}  // namespace

HoppingModel harper(int q, int p) {
  const Matrix one = Matrix::Identity(1, 1);
  const Matrix zero = Matrix::Zero(1, 1);
  HoppingModel model = make_model(1, q, p, one, one, zero, zero, zero);
  model.name = "harper";
  return model;
}

HoppingModel kane_mele(double lambda_so, double lambda_rashba, double lambda_stagger) {
  // Honeycomb cell with B neighbors of A(n) at cells n, n+e1, n+e2; bond
  // directions (B to A) are (0,1), -(s3/2,1/2), -(-s3/2,1/2).  A gauge
  // sign (-1)^{n1+n2} on the hops keeps the Jacobi coefficients invertible
  // away from k = pi, which odd grids never sample.  The nearest-neighbor
  // amplitude is 1/2, calibrated against the reference band structure at
  // (1, 0.45, 0.3): the gap around zero closes before 0.6.
  const double s3 = std::sqrt(3.0) / 2.0;
  const double t_nn = 0.5;
  const Matrix sx = pauli_x(), sy = pauli_y(), sz = pauli_z();
  const Matrix s0 = Matrix::Identity(2, 2);
  Matrix ab = Matrix::Zero(2, 2), ba = Matrix::Zero(2, 2), szs = pauli_z();
  ab(0, 1) = 1;  // |A><B| in sublattice space
  ba(1, 0) = 1;

  // Spin-orbit signs after the gauge: nu'(-1,0) = +1, nu'(-1,1) = +1,
  // nu'(0,-1) = -1 on sublattice A, opposite on B.
  const Matrix so = kI * lambda_so * kron(szs, sz);

  // Rashba spin factors per bond, -i lr (s x d)_z with d the B-to-A direction.
  const Matrix rash_onsite = kI * lambda_rashba * sx;  // d = (0, 1)
  const Matrix rash_e1 = -kI * lambda_rashba * (0.5 * sx - s3 * sy);   // d = delta_b
  const Matrix rash_e2 = -kI * lambda_rashba * (0.5 * sx + s3 * sy);   // d = delta_c

  const Matrix v = t_nn * kron(pauli_x(), s0) + lambda_stagger * kron(szs, s0) +
                   kron(ab, rash_onsite) + kron(ba, rash_onsite.adjoint());
  const Matrix w1 = so - kron(ab, t_nn * s0 + rash_e1);
  const Matrix w2 = -so - kron(ab, t_nn * s0 + rash_e2);
  const Matrix w3 = so;
  const Matrix w4 = Matrix::Zero(4, 4);

  SymmetryMetadata metadata;
  Matrix is(2, 2);
  is << 0, 1, -1, 0;  // e^{i pi s^y} for spin one half
  metadata.trs = SymmetryMetadata::Entry{kron(s0, is), -1};
  HoppingModel model = make_model(4, 0, 1, w1, w2, w3, w4, v, nullptr, metadata);
  model.name = "kane_mele";
  return model;
}

HoppingModel p_ip(double delta_p, double mu, int q, int p, int sign) {
  if (sign != 1 && sign != -1) throw BadParams("chirality sign must be +1 or -1");
  Matrix w1(2, 2), w2(2, 2), w3, w4, v(2, 2);
  // Particle and hole kinetic terms on the diagonal (holes at conjugate
  // flux), p-wave pairing on plain shifts.  The chirality branch is fixed so
  // that sign = +1 carries positive Chern number deep in the weak-pairing
  // phase (mu slightly above the band bottom).
  w1 << 1, -delta_p, delta_p, -1;
  w2 << 1, kI * double(sign) * delta_p, kI * double(sign) * delta_p, -1;
  w3 = Matrix::Zero(2, 2);
  w4 = Matrix::Zero(2, 2);
  v << -mu, 0, 0, mu;
  // The conjugation orientation of the magnetic phases across the
  // particle-hole grading is fixed against the quoted invariants of the
  // flux-1/3 phase diagram (weak-pairing phase aligned with the flux).
  IntMatrix flux_sign(2, 2);
  flux_sign << -1, 0, 0, 1;
  SymmetryMetadata metadata;
  Matrix kp(2, 2);
  kp << 0, 1, 1, 0;
  metadata.phs = SymmetryMetadata::Entry{kp, 1};
  HoppingModel model = make_model(2, q, p, w1, w2, w3, w4, v, &flux_sign, metadata);
  model.name = "p_ip";
  return model;
}

HoppingModel d_id(double delta_d, double mu, int q, int p, int sign) {
  if (sign != 1 && sign != -1) throw BadParams("chirality sign must be +1 or -1");
  const Complex cross = kI * double(sign) * delta_d;
  Matrix w1(2, 2), w2(2, 2), w3(2, 2), w4(2, 2), v(2, 2);
  w1 << 1, delta_d, delta_d, -1;
  w2 << 1, -delta_d, -delta_d, -1;
  // (S1 - S1*)(S2 - S2*) cross terms live on the diagonal hops U3, U4.
  w3 << 0, -cross, cross, 0;
  w4 << 0, cross, -cross, 0;
  v << -mu, 0, 0, mu;
  IntMatrix flux_sign(2, 2);
  flux_sign << -1, 0, 0, 1;
  SymmetryMetadata metadata;
  Matrix kp(2, 2);
  kp << 0, -1, 1, 0;
  metadata.phs = SymmetryMetadata::Entry{kp, -1};
  HoppingModel model = make_model(2, q, p, w1, w2, w3, w4, v, &flux_sign, metadata);
  model.name = "d_id";
  return model;
}

}  // namespace models
}  // namespace kreintopo
