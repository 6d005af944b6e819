#ifndef KREINTOPO_SYMMETRY_HPP
#define KREINTOPO_SYMMETRY_HPP

#include <optional>

#include "kreintopo/types.hpp"

namespace kreintopo {

enum class SymmetryFlavor { fundamental, real, chiral };

// A real unitary J with J^2 = eta * 1.  Fundamental symmetries define the
// indefinite inner product, Real symmetries act with complex conjugation,
// chiral symmetries without.
struct Symmetry {
  Matrix matrix;
  int square_sign = 1;  // eta in {+1, -1}
  SymmetryFlavor flavor = SymmetryFlavor::fundamental;

  int dim() const { return static_cast<int>(matrix.rows()); }

  // The self-adjoint form sqrt(eta) * J; for eta = -1 the factor is +i.
  Matrix hermitian_form() const {
    return square_sign > 0 ? matrix : Matrix(Complex(0, 1) * matrix);
  }
};

// Validates reality, unitarity and the square sign; throws SymmetryViolated.
Symmetry make_symmetry(const Matrix& m, SymmetryFlavor flavor);

// Sign triple (eta_F, eta_R, eta_FR) of a Real Krein space, optionally
// extended by chiral signs.
struct SymmetryKind {
  int eta_f = 1;
  std::optional<int> eta_r, eta_fr;
  std::optional<int> eta_c, eta_fc, eta_rc;

  bool has_real() const { return eta_r.has_value(); }
  bool has_chiral() const { return eta_c.has_value(); }
};

// Commutation sign: A B = sign * B A; throws InconsistentSigns if neither.
int commutation_sign(const Matrix& a, const Matrix& b, double tolerance = tol::unitary);

SymmetryKind classify(const Symmetry& jf, const Symmetry* jr = nullptr,
                      const Symmetry* jc = nullptr);

struct SymmetryReport {
  bool j_unitary = false;
  double j_unitary_residual = 0.0;
  std::optional<bool> real_symmetric;
  double real_residual = 0.0;
  std::optional<bool> chiral_symmetric;
  double chiral_residual = 0.0;
};

// Evaluates T* J_F T = J_F, J_R* conj(T) J_R = T and J_C* T J_C = T.
SymmetryReport check_symmetries(const Matrix& t, const Symmetry& jf,
                                const Symmetry* jr = nullptr,
                                const Symmetry* jc = nullptr,
                                double tolerance = tol::sym);

// Canonical block matrices.  I and K require equal blocks (dimension 2n);
// J(n_plus, n_minus) allows unequal blocks.  C is the Cayley transform with
// C* J C = i I, and R the rotation-reflection with R* J R = K, R* I R = -I.
Matrix canon_I(int half);
Matrix canon_K(int half);
Matrix canon_J(int n_plus, int n_minus);
Matrix canon_C(int half);
Matrix canon_R(int half);

struct CanonicalBlocks {
  Matrix I, K, J, C, R;
};
CanonicalBlocks canonical_blocks(int n_plus, int n_minus);

}  // namespace kreintopo

#endif
