#include "kreintopo/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace kreintopo {
namespace {

struct SchurForm {
  Matrix u, q;
  std::vector<int> id;  // cluster id per diagonal position
};

// Unitary swap of adjacent diagonal entries k, k+1 of an upper triangular U.
void schur_swap(Matrix& u, Matrix& q, int k) {
  const Complex a = u(k, k), b = u(k + 1, k + 1), x = u(k, k + 1);
  const double n = std::sqrt(std::norm(x) + std::norm(b - a));
  if (n == 0.0) return;  // identical entries, nothing to move
  const Complex c = x / n, s = (b - a) / n;
  Matrix g(2, 2);
  g << c, -std::conj(s), s, std::conj(c);
  u.block(k, 0, 2, u.cols()) = g.adjoint() * u.block(k, 0, 2, u.cols());
  u.block(0, k, u.rows(), 2) = u.block(0, k, u.rows(), 2) * g;
  q.block(0, k, q.rows(), 2) = q.block(0, k, q.rows(), 2) * g;
  u(k + 1, k) = Complex(0, 0);
}

void swap_positions(SchurForm& sf, int k) {
  schur_swap(sf.u, sf.q, k);
  std::swap(sf.id[k], sf.id[k + 1]);
}

// Moves all positions of cluster cid to the top, preserving relative order.
void bubble_to_top(SchurForm& sf, int cid) {
  const int n = static_cast<int>(sf.id.size());
  int target = 0;
  for (int i = 0; i < n; ++i) {
    if (sf.id[i] != cid) continue;
    for (int j = i; j > target; --j) swap_positions(sf, j - 1);
    ++target;
  }
}

void bubble_to_bottom(SchurForm& sf, int cid) {
  const int n = static_cast<int>(sf.id.size());
  int target = n - 1;
  for (int i = n - 1; i >= 0; --i) {
    if (sf.id[i] != cid) continue;
    for (int j = i; j < target; ++j) swap_positions(sf, j);
    --target;
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
  void unite(int i, int j) { parent[find(i)] = find(j); }
};

SchurForm make_schur(const Matrix& t, double cluster_gap) {
  Eigen::ComplexSchur<Matrix> schur(t, true);
  if (schur.info() != Eigen::Success)
    throw ConvergenceFailure("complex Schur decomposition did not converge");
  SchurForm sf;
  sf.u = schur.matrixT();
  sf.q = schur.matrixU();
  const int n = static_cast<int>(t.rows());
  UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(sf.u(i, i) - sf.u(j, j)) < cluster_gap) uf.unite(i, j);
  sf.id.resize(n);
  for (int i = 0; i < n; ++i) sf.id[i] = uf.find(i);
  return sf;
}

}  // namespace

std::vector<Complex> SpectralDecomposition::all_eigenvalues() const {
  std::vector<Complex> out;
  for (const auto& c : clusters)
    out.insert(out.end(), c.eigenvalues.begin(), c.eigenvalues.end());
  return out;
}

SpectralDecomposition decompose(const Matrix& t, double cluster_gap) {
  if (t.rows() != t.cols()) throw DimensionMismatch("decompose requires a square matrix");
  const int n = static_cast<int>(t.rows());
  SpectralDecomposition dec;
  dec.op = t;
  dec.cluster_gap = cluster_gap;
  if (n == 0) return dec;

  SchurForm sf = make_schur(t, cluster_gap);
  std::vector<int> ids;
  for (int i = 0; i < n; ++i)
    if (std::find(ids.begin(), ids.end(), sf.id[i]) == ids.end()) ids.push_back(sf.id[i]);

  for (int cid : ids) {
    SpectralCluster cluster;
    Complex sum(0, 0);
    for (int i = 0; i < n; ++i)
      if (sf.id[i] == cid) {
        cluster.eigenvalues.push_back(sf.u(i, i));
        sum += sf.u(i, i);
      }
    cluster.multiplicity = static_cast<int>(cluster.eigenvalues.size());
    cluster.mean = sum / static_cast<double>(cluster.multiplicity);
    SchurForm work = sf;
    bubble_to_top(work, cid);
    cluster.frame = work.q.leftCols(cluster.multiplicity);
    dec.clusters.push_back(std::move(cluster));
  }
  // Deterministic cluster order.
  std::sort(dec.clusters.begin(), dec.clusters.end(),
            [](const SpectralCluster& a, const SpectralCluster& b) {
              if (a.mean.real() != b.mean.real()) return a.mean.real() < b.mean.real();
              return a.mean.imag() < b.mean.imag();
            });
  return dec;
}

Matrix left_frame(const SpectralDecomposition& dec, int cluster_index) {
  const auto& cluster = dec.clusters.at(cluster_index);
  // Adjoint-side route: the cluster of T* at the conjugate location carries the
  // left generalized eigenspace; no inversion of right frames is involved.
  SchurForm sf = make_schur(dec.op, dec.cluster_gap);
  // Re-identify the requested cluster by eigenvalue membership.
  int cid = -1;
  for (size_t i = 0; i < sf.id.size(); ++i) {
    if (std::abs(sf.u(i, i) - cluster.eigenvalues.front()) < dec.cluster_gap) {
      cid = sf.id[i];
      break;
    }
  }
  if (cid < 0) throw NotIsolated("cluster not found in decomposition");
  bubble_to_bottom(sf, cid);
  return sf.q.rightCols(cluster.multiplicity);
}

Matrix riesz_projection(const SpectralDecomposition& dec, int cluster_index) {
  const auto& cluster = dec.clusters.at(cluster_index);
  const Matrix& f = cluster.frame;
  const Matrix g = left_frame(dec, cluster_index);
  const Matrix m = g.adjoint() * f;
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0 || sv(0) / smin > tol::cond_limit)
    throw IllConditioned("near-degenerate spectral splitting in Riesz assembly");
  return f * svd.solve(g.adjoint());
}

Matrix invariant_frame(const Matrix& t, const std::function<bool(const Complex&)>& select) {
  SchurForm sf = make_schur(t, 0.0);
  const int n = static_cast<int>(t.rows());
  int count = 0;
  for (int i = 0; i < n; ++i) {
    sf.id[i] = select(sf.u(i, i)) ? 1 : 0;
    count += sf.id[i];
  }
  bubble_to_top(sf, 1);
  return sf.q.leftCols(count);
}

std::vector<int> unit_circle_clusters(const SpectralDecomposition& dec, double tol_circle) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(dec.clusters.size()); ++i) {
    const auto& c = dec.clusters[i];
    int on = 0;
    for (const auto& ev : c.eigenvalues)
      if (std::abs(std::abs(ev) - 1.0) <= tol_circle) ++on;
    if (on == 0) continue;
    if (on != c.multiplicity)
      throw NotIsolated("cluster mixes on- and off-circle eigenvalues");
    out.push_back(i);
  }
  return out;
}

namespace {

Matrix krein_2x2_path(const Complex& lambda, double a, double t) {
  Matrix m1(2, 2), m2(2, 2);
  m1 << Complex(1, -a), Complex(0, a), Complex(0, -a), Complex(1, a);
  m2 << std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t);
  return lambda * m1 * m2;
}

Matrix o11_path(const Complex& lambda, int sigma, int kappa, double t) {
  Matrix m(2, 2);
  m << sigma * std::cosh(t), kappa * std::sinh(t),
      -kappa * std::sinh(t), -sigma * std::cosh(t);
  return lambda * m;
}

// O(2,1) family: a rotation in the J-positive plane for t <= 0 shrinking into
// a triple collision at +1, then a boost expelling the pair off the circle.
// The simple mediating eigenvalue at +1 flips its inertia through t = 0.
Matrix mediated_path(const Complex& lambda, double t) {
  Matrix m = Matrix::Identity(3, 3);
  if (t <= 0.0) {
    const double th = -t;
    m(0, 0) = std::cos(th);
    m(0, 1) = -std::sin(th);
    m(1, 0) = std::sin(th);
    m(1, 1) = std::cos(th);
  } else {
    m(1, 1) = std::cosh(t);
    m(1, 2) = std::sinh(t);
    m(2, 1) = std::sinh(t);
    m(2, 2) = std::cosh(t);
  }
  return lambda * m;
}

void require_unit(const Complex& lambda) {
  if (std::abs(std::abs(lambda) - 1.0) > tol::circle)
    throw BadParams("collision anchor must lie on the unit circle");
}

void require_sign(int s, const char* name) {
  if (s != 1 && s != -1) throw BadParams(std::string(name) + " must be +1 or -1");
}

}  // namespace

Matrix collision_path(CollisionScenario scenario, const CollisionParams& p, double t) {
  require_unit(p.lambda);
  switch (scenario) {
    case CollisionScenario::krein_2x2:
      return krein_2x2_path(p.lambda, p.a, t);
    case CollisionScenario::o11_block:
      require_sign(p.sigma, "sigma");
      require_sign(p.kappa, "kappa");
      return o11_path(p.lambda, p.sigma, p.kappa, t);
    case CollisionScenario::quadruple: {
      const Matrix block = krein_2x2_path(p.lambda, p.a, t);
      Matrix m = Matrix::Zero(4, 4);
      m.topLeftCorner(2, 2) = block;
      m.bottomRightCorner(2, 2) = block.conjugate();
      return m;
    }
    case CollisionScenario::mediated: {
      if (std::abs(p.lambda.imag()) > tol::circle)
        throw BadParams("mediated scenario requires lambda = +1 or -1");
      return mediated_path(p.lambda.real() >= 0 ? 1.0 : -1.0, t);
    }
  }
  throw BadParams("unknown collision scenario");
}

CollisionSymmetries collision_symmetries(CollisionScenario scenario,
                                         const CollisionParams&) {
  CollisionSymmetries sym;
  switch (scenario) {
    case CollisionScenario::krein_2x2:
      sym.jf = make_symmetry(canon_J(1, 1), SymmetryFlavor::fundamental);
      break;
    case CollisionScenario::o11_block:
      sym.jf = make_symmetry(canon_J(1, 1), SymmetryFlavor::fundamental);
      sym.jr = make_symmetry(Matrix::Identity(2, 2), SymmetryFlavor::real);
      break;
    case CollisionScenario::quadruple: {
      Matrix jf = Matrix::Zero(4, 4);
      jf.topLeftCorner(2, 2) = canon_J(1, 1);
      jf.bottomRightCorner(2, 2) = canon_J(1, 1);
      sym.jf = make_symmetry(jf, SymmetryFlavor::fundamental);
      sym.jr = make_symmetry(canon_K(2), SymmetryFlavor::real);
      break;
    }
    case CollisionScenario::mediated:
      sym.jf = make_symmetry(canon_J(2, 1), SymmetryFlavor::fundamental);
      sym.jr = make_symmetry(Matrix::Identity(3, 3), SymmetryFlavor::real);
      break;
  }
  return sym;
}

}  // namespace kreintopo
