#ifndef KREINTOPO_NORMAL_FORMS_HPP
#define KREINTOPO_NORMAL_FORMS_HPP

#include "kreintopo/symmetry.hpp"

namespace kreintopo {

// Real unitary basis change bringing symmetries to their canonical block
// matrices.  Conjugating the targets by u recovers the inputs.
struct NormalFormResult {
  RealMatrix u;
  Matrix target_f, target_r, target_c;
  SymmetryKind kind;
};

NormalFormResult normalize_fundamental(const Symmetry& jf);
NormalFormResult normalize_pair(const Symmetry& jf, const Symmetry& jr);

// Pairwise anti-commuting triples only (eta_FR = eta_FC = eta_RC = -1).
NormalFormResult normalize_triple(const Symmetry& jf, const Symmetry& jr,
                                  const Symmetry& jc);

// Unitary basis splitting a chiral symmetry: v_basis* J_C v_basis =
// sqrt(eta_C) J, with J_F block-diagonal (eta_FC = +1) or off-diagonal
// through the unitary v (eta_FC = -1).
struct ChiralBasis {
  Matrix v_basis;
  int eta_fc = 1;
  int eta_c = 1;
  Matrix jf_plus, jf_minus;  // eta_FC = +1: reduced fundamental symmetries
  Matrix v;                  // eta_FC = -1: unitary coupling the halves
};
ChiralBasis chiral_basis(const Symmetry& jf, const Symmetry& jc);

// Block decomposition of a J_F-unitary with chiral symmetry: two independent
// blocks for eta_FC = +1, the pair (t, v*(t*)^{-1}v) for eta_FC = -1.
struct ChiralReduction {
  ChiralBasis basis;
  Matrix block_first, block_second;
  double offdiag_residual = 0.0;
};
ChiralReduction chiral_reduce(const Matrix& t, const Symmetry& jf, const Symmetry& jc);

enum class GroupTag {
  U_NM,
  O_NM,
  SP_2N_R,
  SO_star_2N,
  SP_2N_2N,
  GL_N_R,
  O_N_C,
  U_star_2N,
  SP_2N_C,
};

// Defining symmetry relation of the classical group, evaluated with the
// canonical symmetries.  For U(N,M)/O(N,M) the split defaults to equal halves.
bool group_membership(const Matrix& t, GroupTag tag, int n_plus = -1, int n_minus = -1,
                      double tolerance = tol::sym);

}  // namespace kreintopo

#endif
