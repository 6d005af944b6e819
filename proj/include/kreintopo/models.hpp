#ifndef KREINTOPO_MODELS_HPP
#define KREINTOPO_MODELS_HPP

#include "kreintopo/tight_binding.hpp"

namespace kreintopo {
namespace models {

// Magnetic Laplacian on the square lattice, H = U1 + U1* + U2 + U2*.
HoppingModel harper(int q, int p);

// Honeycomb lattice with spin-orbit, Rashba and staggered terms; odd TRS.
// The fiber order is (A up, A down, B up, B down).
HoppingModel kane_mele(double lambda_so, double lambda_rashba, double lambda_stagger);

// BdG Hamiltonian with p +- i p pair potential; even PHS, kind (-1, 1, -1).
// sign = +1 or -1 selects the chirality of the pairing.
HoppingModel p_ip(double delta_p, double mu, int q, int p, int sign = 1);

// BdG Hamiltonian with d +- i d pair potential; odd PHS, kind (-1, -1, -1).
HoppingModel d_id(double delta_d, double mu, int q, int p, int sign = 1);

}  // namespace models
}  // namespace kreintopo

#endif
