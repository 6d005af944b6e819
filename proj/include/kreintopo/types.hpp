#ifndef KREINTOPO_TYPES_HPP
#define KREINTOPO_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace kreintopo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using IntMatrix = Eigen::MatrixXi;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

constexpr double pi = 3.14159265358979323846;

// Central tolerances. Double precision with dims <= ~100 leaves ample headroom
// below each of these.
namespace tol {
inline constexpr double real = 1e-10;       // entrywise imaginary part of a real matrix
inline constexpr double unitary = 1e-10;    // ||M*M - 1||
inline constexpr double sym = 1e-10;        // defining symmetry relations
inline constexpr double circle = 1e-8;      // | |lambda| - 1 |
inline constexpr double cluster_gap = 1e-6; // eigenvalue clustering distance
inline constexpr double form = 1e-9;        // smallest admissible |eigenvalue| of a Krein form
inline constexpr double projection = 1e-9;  // ||P^2 - P||, ||PT - TP||
inline constexpr double subspace = 1e-9;    // invariant-subspace residual
inline constexpr double cond_limit = 1e10;  // cond(G*F) in Riesz assembly
inline constexpr double sv_min = 1e-8;      // strong-hypothesis singular value floor
inline constexpr double gap_dist = 1e-3;    // bulk transfer spectrum distance to S^1
inline constexpr double band_hit = 1e-6;    // Bloch band proximity for in-gap test
}

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error { using Error::Error; };
struct SingularInput : Error { using Error::Error; };
struct NotIsolated : Error { using Error::Error; };
struct DegenerateForm : Error { using Error::Error; };
struct SymmetryViolated : Error { using Error::Error; };
struct OddDimension : Error { using Error::Error; };
struct InconsistentSigns : Error { using Error::Error; };
struct SingularBlock : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };
struct BadParams : Error { using Error::Error; };
struct StrongHypothesisFailed : Error {
  double k2 = 0.0, singular_value = 0.0;
  StrongHypothesisFailed(const std::string& what, double k2_, double sv)
      : Error(what), k2(k2_), singular_value(sv) {}
};
struct VerticalHypothesisFailed : Error {
  int site = 0;
  double k1 = 0.0, singular_value = 0.0;
  VerticalHypothesisFailed(const std::string& what, int n, double k1_, double sv)
      : Error(what), site(n), k1(k1_), singular_value(sv) {}
};
struct NotInGap : Error { using Error::Error; };
struct WrongDimension : Error {
  int dimension = -1;
  WrongDimension(const std::string& what, int dim) : Error(what), dimension(dim) {}
};
struct NotLagrangian : Error { using Error::Error; };
struct PhaseTrackingAmbiguous : Error { using Error::Error; };
struct FlatBandDetected : Error { using Error::Error; };
struct NonIntegral : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

inline bool is_real(const Matrix& m, double tolerance = tol::real) {
  return m.imag().cwiseAbs().maxCoeff() <= tolerance;
}

inline bool is_unitary(const Matrix& m, double tolerance = tol::unitary) {
  const auto n = m.rows();
  if (n != m.cols()) return false;
  return (m.adjoint() * m - Matrix::Identity(n, n)).norm() <= tolerance;
}

inline bool is_hermitian(const Matrix& m, double tolerance = tol::unitary) {
  return (m - m.adjoint()).norm() <= tolerance;
}

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * pi);
  if (a <= -pi) a += 2.0 * pi;
  if (a > pi) a -= 2.0 * pi;
  return a;
}

// Uniform grid on the circle: {2 pi j / n} wrapped to (-pi, pi], sorted.
// Odd n samples k = 0 and avoids k = pi.
std::vector<double> circle_grid(int n, double scale = 1.0);

}  // namespace kreintopo

#endif
