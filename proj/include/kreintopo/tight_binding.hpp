#ifndef KREINTOPO_TIGHT_BINDING_HPP
#define KREINTOPO_TIGHT_BINDING_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kreintopo/symmetry.hpp"

namespace kreintopo {

// Symmetries of the Hamiltonian carried on the fiber: spin rotation for time
// reversal, particle-hole and sublattice conjugations with their parities.
struct SymmetryMetadata {
  struct Entry {
    Matrix matrix;
    int parity = 1;  // square sign of the fiber matrix
  };
  std::optional<Entry> trs, phs, chiral;

  bool empty() const { return !trs && !phs && !chiral; }
};

// Periodic 2D tight-binding Hamiltonian
//   H = sum_i (W_i^* U_i + W_i U_i^*) + V
// with magnetic translations U_i at rational flux 2 pi q / p in Landau gauge.
//
// flux_sign generalizes the magnetic phases entrywise: entry (r, s) of every
// hopping matrix sees flux flux_sign(r, s) * phi.  All +1 is the plain model
// above; BdG models carry -1 on the hole block (conjugated magnetic
// translations) and 0 on the pairing blocks (plain shifts).
struct HoppingModel {
  int fiber = 1;  // L
  int flux_num = 0;
  int flux_den = 1;
  Matrix w1, w2, w3, w4, v;
  IntMatrix flux_sign;  // L x L, entries in {-1, 0, +1}
  SymmetryMetadata metadata;
  std::string name;

  double flux() const { return 2.0 * pi * flux_num / flux_den; }
  int transfer_dim() const { return 2 * fiber * flux_den; }
};

// Reduces q/p, normalizes q into [0, p), fills a default flux_sign, and
// validates Hermiticity of V and shape of all blocks.
HoppingModel make_model(int fiber, int q, int p, const Matrix& w1, const Matrix& w2,
                        const Matrix& w3, const Matrix& w4, const Matrix& v,
                        const IntMatrix* flux_sign = nullptr,
                        SymmetryMetadata metadata = {});

struct FiberPair {
  Matrix a, b;  // Lp x Lp; b is Hermitian by construction
};

// Magnetic Bloch fibers of the Jacobi coefficients:
//   <m|A(k2)|l> = W1 e^{i phi m} d_{m,l} + W3 e^{i(phi m - k2)} d_{m,l-1}
//                 + W4^* e^{i(phi m + phi + k2)} d_{m,l+1}
//   <m|B(k2)|l> = W2^* e^{-i k2} d_{m,l-1} + W2 e^{i k2} d_{m,l+1} + V d_{m,l}
// with Kronecker deltas mod p and entrywise flux conjugation per flux_sign.
FiberPair fiber_AB(const HoppingModel& model, double k2);

// Smallest singular value of A(k2); the strong hypothesis requires it above
// tol::sv_min.
double fiber_min_sv(const HoppingModel& model, double k2);

// Transfer operator fiber [[ (E - B) A^{-1}, -A* ], [ A^{-1}, 0 ]]; I-unitary.
Matrix bulk_transfer_fiber(const HoppingModel& model, double E, double k2);

struct TransferSpectrum {
  std::vector<double> k2;
  std::vector<std::vector<Complex>> eigenvalues;  // per k2 point

  double min_distance_to_circle() const;
};

TransferSpectrum bulk_transfer_spectrum(const HoppingModel& model, double E,
                                        int grid_size = 201);

// Bloch Hamiltonian A(k2) e^{-i k1} + B(k2) + A(k2)^* e^{i k1}; Hermitian.
Matrix bloch_hamiltonian(const HoppingModel& model, double k1, double k2);

std::vector<double> bloch_bands(const HoppingModel& model, double k1, double k2);

struct GapStatus {
  bool in_gap = false;
  double transfer_distance = 0.0;  // min distance of bulk transfer spectrum to S^1
  double band_distance = 0.0;      // min |E_band - E| over the Brillouin grid
};

// E lies in a gap iff the transfer spectrum stays off the unit circle and no
// Bloch band attains E; both oracles are evaluated on the grid.
GapStatus energy_gap_status(const HoppingModel& model, double E, int grid_size = 201);

// Verifies declared symmetry metadata against the coefficient matrices
// (exact conditions on W_i, V); throws SymmetryViolated on failure.
void verify_metadata(const HoppingModel& model);

// Kind (eta_F, eta_R, eta_FR) of the transfer operator's Real Krein space
// implied by the metadata; eta_r is absent without TRS/PHS.
SymmetryKind transfer_kind(const HoppingModel& model);

// Fiber-level symmetry of the transfer operator: returns the conserving
// matrix on C^2 (x) C^{Lp} for TRS ((1 (x) I_s)) or PHS ((J (x) K_ph)).
Matrix transfer_real_symmetry(const HoppingModel& model);

// Model file I/O (JSON schema documented in the README); round-trips are
// bit-exact for all floating point payloads.
HoppingModel load_model(std::istream& in);
HoppingModel load_model_file(const std::string& path);
void save_model(const HoppingModel& model, std::ostream& out);
void save_model_file(const HoppingModel& model, const std::string& path);

}  // namespace kreintopo

#endif
