#include "kreintopo/normal_forms.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace kreintopo {
namespace {

constexpr double kRealifyThreshold = 1e-8;

// Real orthonormal eigenbasis of a real symmetric involution, +1 block first.
std::pair<RealMatrix, int> eigenbasis_involution(const Matrix& j) {
  const RealMatrix jr = j.real();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(jr);
  if (es.info() != Eigen::Success)
    throw ConvergenceFailure("eigensolver failed on involution");
  const int n = static_cast<int>(jr.rows());
  int n_minus = 0;
  while (n_minus < n && es.eigenvalues()(n_minus) < 0) ++n_minus;
  const int n_plus = n - n_minus;
  RealMatrix u(n, n);
  u.leftCols(n_plus) = es.eigenvectors().rightCols(n_plus);
  u.rightCols(n_minus) = es.eigenvectors().leftCols(n_minus);
  return {u, n_plus};
}

// Orthonormal basis of the +i eigenspace of a unitary with square -1.
Matrix i_eigenbasis(const Matrix& j) {
  const int n = static_cast<int>(j.rows());
  if (n % 2 != 0) throw OddDimension("square -1 requires even dimension");
  const Matrix herm = Complex(0, -1) * j;  // Hermitian; eigenvalue +1 <-> J-eigenvalue +i
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  if (es.info() != Eigen::Success)
    throw ConvergenceFailure("eigensolver failed on skew involution");
  return es.eigenvectors().rightCols(n / 2);
}

// Real unitary R with R^T j R = canon_I(n/2), for real antisymmetric unitary j.
RealMatrix realify_minus_one(const Matrix& j) {
  const Matrix v = i_eigenbasis(j);
  const int n = static_cast<int>(j.rows());
  RealMatrix u(n, n);
  u.leftCols(n / 2) = std::sqrt(2.0) * v.real();
  u.rightCols(n / 2) = -std::sqrt(2.0) * v.imag();
  return u;
}

// Modified Gram-Schmidt (run twice) of w against the columns of basis.
RealVector deflate(RealVector w, const RealMatrix& basis, int cols) {
  for (int pass = 0; pass < 2; ++pass)
    for (int c = 0; c < cols; ++c) w -= basis.col(c).dot(w) * basis.col(c);
  return w;
}

// Next real unit vector inside the span of `space`, orthogonal to the first
// `used` columns of `collected`.
RealVector next_vector(const RealMatrix& space, const RealMatrix& collected, int used) {
  for (int c = 0; c < space.cols(); ++c) {
    RealVector w = deflate(space.col(c), collected, used);
    const double nrm = w.norm();
    if (nrm > kRealifyThreshold) return w / nrm;
  }
  throw ConvergenceFailure("failed to extend real orthonormal system");
}

RealMatrix real_part_checked(const Matrix& m) {
  if (!is_real(m, 1e-7)) throw SymmetryViolated("constructed basis change is not real");
  return m.real();
}

NormalFormResult pair_commuting(const Symmetry& jf, const Symmetry& jr,
                                const SymmetryKind& kind);
NormalFormResult pair_anticommuting(const Symmetry& jf, const Symmetry& jr,
                                    const SymmetryKind& kind);

}  // namespace

NormalFormResult normalize_fundamental(const Symmetry& jf) {
  NormalFormResult result;
  result.kind.eta_f = jf.square_sign;
  if (jf.square_sign > 0) {
    auto [u, n_plus] = eigenbasis_involution(jf.matrix);
    result.u = u;
    result.target_f = canon_J(n_plus, jf.dim() - n_plus);
  } else {
    result.u = realify_minus_one(jf.matrix);
    result.target_f = canon_I(jf.dim() / 2);
  }
  return result;
}

NormalFormResult normalize_pair(const Symmetry& jf, const Symmetry& jr) {
  if (jf.dim() != jr.dim()) throw DimensionMismatch("symmetry dimensions differ");
  SymmetryKind kind = classify(jf, &jr);
  return kind.eta_fr.value() > 0 ? pair_commuting(jf, jr, kind)
                                 : pair_anticommuting(jf, jr, kind);
}

namespace {

// Commuting cases (eq111)-(eq-1-11).
NormalFormResult pair_commuting(const Symmetry& jf, const Symmetry& jr,
                                const SymmetryKind& kind) {
  NormalFormResult result;
  result.kind = kind;
  const int n = jf.dim();
  const int eta_f = kind.eta_f, eta_r = kind.eta_r.value();

  if (eta_f > 0) {
    // Diagonalize J_F, then normalize J_R within each eigenblock.
    auto [u0, n_plus] = eigenbasis_involution(jf.matrix);
    const int n_minus = n - n_plus;
    RealMatrix u = u0;
    Matrix target_r = Matrix::Zero(n, n);
    const Matrix jr_plus =
        u0.leftCols(n_plus).transpose() * jr.matrix * u0.leftCols(n_plus);
    const Matrix jr_minus =
        u0.rightCols(n_minus).transpose() * jr.matrix * u0.rightCols(n_minus);
    if (eta_r > 0) {
      auto [wp, pp] = eigenbasis_involution(jr_plus);
      auto [wm, pm] = eigenbasis_involution(jr_minus);
      u.leftCols(n_plus) = u0.leftCols(n_plus) * wp;
      u.rightCols(n_minus) = u0.rightCols(n_minus) * wm;
      target_r.topLeftCorner(n_plus, n_plus) = canon_J(pp, n_plus - pp);
      target_r.bottomRightCorner(n_minus, n_minus) = canon_J(pm, n_minus - pm);
    } else {
      const RealMatrix wp = realify_minus_one(jr_plus);
      const RealMatrix wm = realify_minus_one(jr_minus);
      u.leftCols(n_plus) = u0.leftCols(n_plus) * wp;
      u.rightCols(n_minus) = u0.rightCols(n_minus) * wm;
      target_r.topLeftCorner(n_plus, n_plus) = canon_I(n_plus / 2);
      target_r.bottomRightCorner(n_minus, n_minus) = canon_I(n_minus / 2);
    }
    result.u = u;
    result.target_f = canon_J(n_plus, n_minus);
    result.target_r = target_r;
    return result;
  }

  if (eta_r > 0) {
    // (-1, 1, 1): run (1, -1, 1) with the roles exchanged, then permute the
    // within-block I-coordinates so J_F becomes one global I.
    Symmetry jf_swapped = jr, jr_swapped = jf;
    jf_swapped.flavor = SymmetryFlavor::fundamental;
    jr_swapped.flavor = SymmetryFlavor::real;
    SymmetryKind swapped = classify(jf_swapped, &jr_swapped);
    NormalFormResult pre = pair_commuting(jf_swapped, jr_swapped, swapped);
    // pre: J_R -> J(2a, 2b), J_F -> diag(I_a, I_b); coordinates within the
    // blocks are (x, y | u, w) with I acting as (x, y) -> (-y, x).
    int a2 = 0;
    for (int i = 0; i < n; ++i)
      if (pre.target_f(i, i).real() > 0) ++a2;  // target_f here is J(2a, 2b)
    const int a = a2 / 2, b = (n - a2) / 2;
    RealMatrix perm = RealMatrix::Zero(n, n);
    // new order: (x | u | y | w)
    for (int i = 0; i < a; ++i) perm(i, i) = 1.0;                      // x
    for (int i = 0; i < b; ++i) perm(2 * a + i, a + i) = 1.0;          // u
    for (int i = 0; i < a; ++i) perm(a + i, a + b + i) = 1.0;          // y
    for (int i = 0; i < b; ++i) perm(2 * a + b + i, a + b + a + i) = 1.0;  // w
    NormalFormResult result2;
    result2.kind = kind;
    result2.u = pre.u * perm;
    result2.target_f = canon_I(a + b);
    Matrix jp = canon_J(a, b);
    Matrix tr = Matrix::Zero(n, n);
    tr.topLeftCorner(a + b, a + b) = jp;
    tr.bottomRightCorner(a + b, a + b) = jp;
    result2.target_r = tr;
    return result2;
  }

  // (-1, -1, 1): diagonalize J_R on the +i eigenspace of J_F, then Cayley.
  const Matrix v0 = i_eigenbasis(jf.matrix);
  const int m = n / 2;
  const Matrix jr_restricted = v0.adjoint() * jr.matrix * v0;  // unitary, square -1
  Eigen::SelfAdjointEigenSolver<Matrix> es(Complex(0, -1) * jr_restricted);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("restricted eigensolver failed");
  int bcount = 0;
  while (bcount < m && es.eigenvalues()(bcount) < 0) ++bcount;
  const int acount = m - bcount;  // J_R-eigenvalue +i multiplicity
  Matrix w(m, m);
  w.leftCols(acount) = es.eigenvectors().rightCols(acount);
  w.rightCols(bcount) = es.eigenvectors().leftCols(bcount);
  const Matrix v = v0 * w;
  result.kind = kind;
  RealMatrix u(n, n);
  u.leftCols(m) = std::sqrt(2.0) * v.real();
  u.rightCols(m) = -std::sqrt(2.0) * v.imag();
  result.u = u;
  result.target_f = canon_I(m);
  Matrix tr = Matrix::Zero(n, n);
  const Matrix jp = canon_J(acount, bcount);
  tr.topRightCorner(m, m) = -jp;
  tr.bottomLeftCorner(m, m) = jp;
  result.target_r = tr;
  return result;
}

// Anti-commuting cases (eq11-1)-(eq-1-1-1).
NormalFormResult pair_anticommuting(const Symmetry& jf, const Symmetry& jr,
                                    const SymmetryKind& kind) {
  NormalFormResult result;
  result.kind = kind;
  const int n = jf.dim();
  const int eta_f = kind.eta_f, eta_r = kind.eta_r.value();

  if (eta_f < 0 && eta_r > 0) {
    // (-1, 1, -1) follows from (1, -1, -1) with the roles exchanged.
    Symmetry jf_swapped = jr, jr_swapped = jf;
    SymmetryKind swapped = classify(jf_swapped, &jr_swapped);
    NormalFormResult pre = pair_anticommuting(jf_swapped, jr_swapped, swapped);
    result.u = pre.u;
    result.target_f = pre.target_r;  // I
    result.target_r = pre.target_f;  // J
    return result;
  }

  if (eta_f > 0) {
    // (1, 1, -1) and (1, -1, -1): columns (u | J_R u) with real u in E_+(J_F).
    auto [base, n_plus] = eigenbasis_involution(jf.matrix);
    if (2 * n_plus != n)
      throw InconsistentSigns("anti-commuting pair needs equal J_F eigenspaces");
    const int m = n_plus;
    const RealMatrix space = base.leftCols(m);
    const RealMatrix jr_real = jr.matrix.real();
    RealMatrix u(n, n);
    for (int k = 0; k < m; ++k) {
      RealMatrix collected = u.leftCols(k);
      const RealVector uk = next_vector(space, collected, k);
      u.col(k) = uk;
      u.col(m + k) = jr_real * uk;
    }
    result.u = u;
    result.target_f = canon_J(m, m);
    result.target_r = eta_r > 0 ? canon_K(m) : canon_I(m);
    return result;
  }

  // (-1, -1, -1): quaternionic quadruples (u, J_R u, J_F u, J_F J_R u).
  if (n % 4 != 0) throw OddDimension("kind (-1,-1,-1) requires dimension 4m");
  const int m = n / 4;
  const RealMatrix jf_real = jf.matrix.real(), jr_real = jr.matrix.real();
  const RealMatrix space = RealMatrix::Identity(n, n);
  RealMatrix cols = RealMatrix::Zero(n, n);  // interleaved storage while building
  RealMatrix u(n, n);
  for (int k = 0; k < m; ++k) {
    const RealVector uk = next_vector(space, cols, 4 * k);
    cols.col(4 * k) = uk;
    cols.col(4 * k + 1) = jr_real * uk;
    cols.col(4 * k + 2) = jf_real * uk;
    cols.col(4 * k + 3) = jf_real * jr_real * uk;
  }
  for (int k = 0; k < m; ++k) {
    u.col(k) = cols.col(4 * k);
    u.col(m + k) = cols.col(4 * k + 1);
    u.col(2 * m + k) = cols.col(4 * k + 2);
    u.col(3 * m + k) = cols.col(4 * k + 3);
  }
  result.u = u;
  result.target_f = canon_I(2 * m);
  Matrix tr = Matrix::Zero(n, n);
  tr.topLeftCorner(2 * m, 2 * m) = canon_I(m);
  tr.bottomRightCorner(2 * m, 2 * m) = -canon_I(m);
  result.target_r = tr;
  return result;
}

// Builds the grouped 4x4 block pattern (entries are m x m identities).
Matrix grouped_pattern(const std::vector<std::tuple<int, int, double>>& entries, int m) {
  Matrix out = Matrix::Zero(4 * m, 4 * m);
  for (const auto& [row, col, val] : entries)
    out.block(row * m, col * m, m, m) = val * Matrix::Identity(m, m);
  return out;
}

struct TripleSector {
  RealMatrix columns;  // n x (4m or 2m), grouped
  int count = 0;       // number of generating vectors
};

// Collects quadruples (u, a u, b u, c u) of real unit vectors u drawn from
// `space`, mutually orthogonal as a whole system.
TripleSector collect_quadruples(const RealMatrix& space, const RealMatrix& a,
                                const RealMatrix& b, const RealMatrix& c) {
  const int n = static_cast<int>(a.rows());
  const int m = static_cast<int>(space.cols()) / 2;  // two of the four stay inside space
  TripleSector sector;
  RealMatrix cols = RealMatrix::Zero(n, 4 * ((m + 1)));
  int k = 0;
  while (true) {
    RealVector uk;
    try {
      uk = next_vector(space, cols, 4 * k);
    } catch (const ConvergenceFailure&) {
      break;
    }
    cols.col(4 * k) = uk;
    cols.col(4 * k + 1) = a * uk;
    cols.col(4 * k + 2) = b * uk;
    cols.col(4 * k + 3) = c * uk;
    ++k;
  }
  sector.count = k;
  sector.columns.resize(n, 4 * k);
  for (int g = 0; g < 4; ++g)
    for (int i = 0; i < k; ++i) sector.columns.col(g * k + i) = cols.col(4 * i + g);
  return sector;
}

}  // namespace

NormalFormResult normalize_triple(const Symmetry& jf, const Symmetry& jr,
                                  const Symmetry& jc) {
  if (jf.dim() != jr.dim() || jf.dim() != jc.dim())
    throw DimensionMismatch("symmetry dimensions differ");
  SymmetryKind kind = classify(jf, &jr, &jc);
  if (kind.eta_fr.value() != -1 || kind.eta_fc.value() != -1 || kind.eta_rc.value() != -1)
    throw InconsistentSigns("normalize_triple requires a pairwise anti-commuting triple");
  const int n = jf.dim();
  const RealMatrix f = jf.matrix.real(), r = jr.matrix.real(), c = jc.matrix.real();
  NormalFormResult result;
  result.kind = kind;
  const int ef = kind.eta_f, er = kind.eta_r.value(), ec = kind.eta_c.value();

  if (ef < 0 && er < 0 && ec < 0) {
    // Case (i): central element Z = J_F J_R J_C splits two sectors of
    // quadruples (u, J_R u, J_F u, J_C u).
    const Matrix z = jf.matrix * jr.matrix * jc.matrix;
    auto [zbasis, z_plus] = eigenbasis_involution(z);
    TripleSector plus = collect_quadruples(zbasis.leftCols(z_plus), r, f, c);
    TripleSector minus = collect_quadruples(zbasis.rightCols(n - z_plus), r, f, c);
    if (4 * (plus.count + minus.count) != n)
      throw ConvergenceFailure("sector quadruples do not exhaust the space");
    RealMatrix u(n, n);
    u.leftCols(4 * plus.count) = plus.columns;
    u.rightCols(4 * minus.count) = minus.columns;
    result.u = u;
    auto block = [&](int sigma, int m) {
      Matrix tf = grouped_pattern({{0, 2, -1}, {1, 3, double(sigma)}, {2, 0, 1}, {3, 1, -double(sigma)}}, m);
      Matrix tr = grouped_pattern({{0, 1, -1}, {1, 0, 1}, {2, 3, -double(sigma)}, {3, 2, double(sigma)}}, m);
      Matrix tc = grouped_pattern({{0, 3, -1}, {1, 2, -double(sigma)}, {2, 1, double(sigma)}, {3, 0, 1}}, m);
      return std::array<Matrix, 3>{tf, tr, tc};
    };
    auto bp = block(1, plus.count), bm = block(-1, minus.count);
    result.target_f = Matrix::Zero(n, n);
    result.target_r = Matrix::Zero(n, n);
    result.target_c = Matrix::Zero(n, n);
    const int np = 4 * plus.count;
    result.target_f.topLeftCorner(np, np) = bp[0];
    result.target_f.bottomRightCorner(n - np, n - np) = bm[0];
    result.target_r.topLeftCorner(np, np) = bp[1];
    result.target_r.bottomRightCorner(n - np, n - np) = bm[1];
    result.target_c.topLeftCorner(np, np) = bp[2];
    result.target_c.bottomRightCorner(n - np, n - np) = bm[2];
    return result;
  }

  if (ef > 0 && er < 0 && ec < 0) {
    // Case (ii): quadruples (u, J_R J_C u, J_C u, J_R u) with u in E_+(J_F).
    auto [fb, f_plus] = eigenbasis_involution(jf.matrix);
    TripleSector sec = collect_quadruples(fb.leftCols(f_plus), r * c, c, r);
    if (4 * sec.count != n) throw ConvergenceFailure("quadruples do not exhaust the space");
    const int m = sec.count;
    result.u = sec.columns;
    result.target_f = grouped_pattern({{0, 0, 1}, {1, 1, 1}, {2, 2, -1}, {3, 3, -1}}, m);
    result.target_r = grouped_pattern({{0, 3, -1}, {1, 2, 1}, {2, 1, -1}, {3, 0, 1}}, m);
    result.target_c = grouped_pattern({{0, 2, -1}, {1, 3, -1}, {2, 0, 1}, {3, 1, 1}}, m);
    return result;
  }

  if (ef > 0 && er > 0 && ec < 0) {
    // Case (iii): pairs (u, J_R u) with u a common eigenvector of J_F and the
    // central element, split by its eigenvalue sigma.
    const Matrix z = jf.matrix * jr.matrix * jc.matrix;
    auto [fb, f_plus] = eigenbasis_involution(jf.matrix);
    const Matrix z_res = fb.leftCols(f_plus).transpose() * z * fb.leftCols(f_plus);
    auto [zb, z_plus] = eigenbasis_involution(z_res);
    const RealMatrix plus_space = fb.leftCols(f_plus) * zb.leftCols(z_plus).real();
    const RealMatrix minus_space = fb.leftCols(f_plus) * zb.rightCols(f_plus - z_plus).real();
    auto collect_pairs = [&](const RealMatrix& space) {
      const int count = static_cast<int>(space.cols());
      RealMatrix cols = RealMatrix::Zero(n, 2 * count);
      for (int k = 0; k < count; ++k) {
        const RealVector uk = next_vector(space, cols, 2 * k);
        cols.col(2 * k) = uk;
        cols.col(2 * k + 1) = r * uk;
      }
      RealMatrix grouped(n, 2 * count);
      for (int i = 0; i < count; ++i) {
        grouped.col(i) = cols.col(2 * i);
        grouped.col(count + i) = cols.col(2 * i + 1);
      }
      return grouped;
    };
    const RealMatrix gp = collect_pairs(plus_space);
    const RealMatrix gm = collect_pairs(minus_space);
    const int mp = z_plus, mm = f_plus - z_plus;
    RealMatrix u(n, n);
    u.leftCols(2 * mp) = gp;
    u.rightCols(2 * mm) = gm;
    result.u = u;
    result.target_f = Matrix::Zero(n, n);
    result.target_r = Matrix::Zero(n, n);
    result.target_c = Matrix::Zero(n, n);
    result.target_f.topLeftCorner(2 * mp, 2 * mp) = canon_J(mp, mp);
    result.target_f.bottomRightCorner(2 * mm, 2 * mm) = canon_J(mm, mm);
    result.target_r.topLeftCorner(2 * mp, 2 * mp) = canon_K(mp);
    result.target_r.bottomRightCorner(2 * mm, 2 * mm) = canon_K(mm);
    result.target_c.topLeftCorner(2 * mp, 2 * mp) = canon_I(mp);
    result.target_c.bottomRightCorner(2 * mm, 2 * mm) = -canon_I(mm);
    return result;
  }

  if (ef > 0 && er > 0 && ec > 0) {
    // Case (iv): quadruples (u, J_R J_C u, J_R u, J_C u) with u in E_+(J_F).
    auto [fb, f_plus] = eigenbasis_involution(jf.matrix);
    TripleSector sec = collect_quadruples(fb.leftCols(f_plus), r * c, r, c);
    if (4 * sec.count != n) throw ConvergenceFailure("quadruples do not exhaust the space");
    const int m = sec.count;
    result.u = sec.columns;
    result.target_f = grouped_pattern({{0, 0, 1}, {1, 1, 1}, {2, 2, -1}, {3, 3, -1}}, m);
    result.target_r = grouped_pattern({{0, 2, 1}, {1, 3, 1}, {2, 0, 1}, {3, 1, 1}}, m);
    result.target_c = grouped_pattern({{0, 3, 1}, {1, 2, -1}, {2, 1, -1}, {3, 0, 1}}, m);
    return result;
  }

  throw InconsistentSigns("sign combination not covered by the triple normal forms");
}

ChiralBasis chiral_basis(const Symmetry& jf, const Symmetry& jc) {
  if (jf.dim() != jc.dim()) throw DimensionMismatch("symmetry dimensions differ");
  ChiralBasis basis;
  basis.eta_c = jc.square_sign;
  basis.eta_fc = commutation_sign(jf.matrix, jc.matrix);
  const int n = jf.dim();
  Matrix v;
  int half = 0;
  if (jc.square_sign > 0) {
    auto [u, n_plus] = eigenbasis_involution(jc.matrix);
    if (basis.eta_fc < 0 && 2 * n_plus != n)
      throw InconsistentSigns("anti-commuting chiral symmetry needs equal eigenspaces");
    v = u.cast<Complex>();
    half = n_plus;
  } else {
    const Matrix vi = i_eigenbasis(jc.matrix);
    v.resize(n, n);
    v.leftCols(n / 2) = vi;
    v.rightCols(n / 2) = vi.conjugate();
    half = n / 2;
  }
  basis.v_basis = v;
  const Matrix jf_t = v.adjoint() * jf.matrix * v;
  if (basis.eta_fc > 0) {
    basis.jf_plus = jf_t.topLeftCorner(half, half);
    basis.jf_minus = jf_t.bottomRightCorner(n - half, n - half);
  } else {
    // The transformed J_F is [[0, eta_F v], [v*, 0]]; read v off the lower left.
    basis.v = jf_t.bottomLeftCorner(n - half, half).adjoint();
  }
  return basis;
}

ChiralReduction chiral_reduce(const Matrix& t, const Symmetry& jf, const Symmetry& jc) {
  SymmetryReport report = check_symmetries(t, jf, nullptr, &jc);
  if (!report.j_unitary) throw SymmetryViolated("operator is not J_F-unitary");
  if (!report.chiral_symmetric.value())
    throw SymmetryViolated("operator lacks the chiral symmetry");
  ChiralReduction red;
  red.basis = chiral_basis(jf, jc);
  const int n = static_cast<int>(t.rows());
  const int half = static_cast<int>(red.basis.eta_fc > 0
                                        ? red.basis.jf_plus.rows()
                                        : red.basis.v.cols());
  const Matrix w = red.basis.v_basis.adjoint() * t * red.basis.v_basis;
  red.block_first = w.topLeftCorner(half, half);
  red.block_second = w.bottomRightCorner(n - half, n - half);
  red.offdiag_residual = std::max(w.topRightCorner(half, n - half).norm(),
                                  w.bottomLeftCorner(n - half, half).norm());
  Eigen::JacobiSVD<Matrix> svd(red.block_first);
  if (svd.singularValues()(svd.singularValues().size() - 1) < tol::sv_min)
    throw SingularBlock("chiral block is numerically singular");
  return red;
}

namespace {

bool relation_holds(const Matrix& lhs, const Matrix& rhs, double tolerance, double scale) {
  return (lhs - rhs).norm() <= tolerance * std::max(1.0, scale);
}

bool invertible(const Matrix& t) {
  Eigen::JacobiSVD<Matrix> svd(t);
  return svd.singularValues()(svd.singularValues().size() - 1) >= tol::sv_min;
}

}  // namespace

bool group_membership(const Matrix& t, GroupTag tag, int n_plus, int n_minus,
                      double tolerance) {
  if (t.rows() != t.cols()) throw DimensionMismatch("group membership needs a square matrix");
  const int n = static_cast<int>(t.rows());
  const double scale = t.norm() * t.norm();
  auto split = [&](int& p, int& q) {
    if (n_plus >= 0 && n_minus >= 0) {
      if (n_plus + n_minus != n) throw DimensionMismatch("signature split does not match");
      p = n_plus;
      q = n_minus;
    } else {
      if (n % 2 != 0) throw DimensionMismatch("even dimension required for default split");
      p = q = n / 2;
    }
  };
  switch (tag) {
    case GroupTag::U_NM: {
      int p, q;
      split(p, q);
      const Matrix j = canon_J(p, q);
      return relation_holds(t.adjoint() * j * t, j, tolerance, scale);
    }
    case GroupTag::O_NM: {
      int p, q;
      split(p, q);
      const Matrix j = canon_J(p, q);
      return is_real(t, tolerance) && relation_holds(t.adjoint() * j * t, j, tolerance, scale);
    }
    case GroupTag::SP_2N_R: {
      if (n % 2 != 0) throw DimensionMismatch("SP(2N,R) requires even dimension");
      const Matrix i = canon_I(n / 2);
      return is_real(t, tolerance) &&
             relation_holds(t.transpose() * i * t, i, tolerance, scale);
    }
    case GroupTag::SO_star_2N: {
      if (n % 2 != 0) throw DimensionMismatch("SO*(2N) requires even dimension");
      const Matrix i = canon_I(n / 2);
      return relation_holds(t.adjoint() * i * t, i, tolerance, scale) &&
             relation_holds(i.adjoint() * t.conjugate() * i, t, tolerance, t.norm());
    }
    case GroupTag::SP_2N_2N: {
      if (n % 4 != 0) throw DimensionMismatch("SP(2N,2N) requires dimension 4N");
      const Matrix jf = canon_J(n / 2, n / 2);
      Matrix jr = Matrix::Zero(n, n);
      jr.topLeftCorner(n / 2, n / 2) = canon_I(n / 4);
      jr.bottomRightCorner(n / 2, n / 2) = -canon_I(n / 4);
      return relation_holds(t.adjoint() * jf * t, jf, tolerance, scale) &&
             relation_holds(jr.adjoint() * t.conjugate() * jr, t, tolerance, t.norm());
    }
    case GroupTag::GL_N_R:
      return is_real(t, tolerance) && invertible(t);
    case GroupTag::O_N_C:
      return relation_holds(t.transpose() * t, Matrix::Identity(n, n), tolerance, scale);
    case GroupTag::U_star_2N: {
      if (n % 2 != 0) throw DimensionMismatch("U*(2N) requires even dimension");
      const Matrix i = canon_I(n / 2);
      return invertible(t) &&
             relation_holds(i.adjoint() * t.conjugate() * i, t, tolerance, t.norm());
    }
    case GroupTag::SP_2N_C: {
      if (n % 2 != 0) throw DimensionMismatch("SP(2N,C) requires even dimension");
      const Matrix i = canon_I(n / 2);
      return relation_holds(t.transpose() * i * t, i, tolerance, scale);
    }
  }
  throw BadParams("unknown group tag");
}

}  // namespace kreintopo
