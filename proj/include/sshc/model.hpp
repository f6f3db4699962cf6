// Chain parameter sets and Hamiltonian constructors: the finite dissipative
// chain, its two-band Bloch form, and optional on-site complex potentials.
#pragma once

#include <cstddef>

#include "sshc/complex_matrix.hpp"

namespace sshc {

enum class OnSiteKind {
    none,                // bare chain
    uniform_loss,        // -i*strength on every site
    staggered_gain_loss, // +i*strength on A sites, -i*strength on B sites
    endpoints_only,      // -i*strength on site 1, +i*strength on site 2N
};

struct OnSitePotential {
    OnSiteKind kind = OnSiteKind::none;
    double strength = 0.0;  // gamma_on >= 0
};

// All physical parameters of one chain configuration. Energies are quoted in
// units of t0; phi in [0, pi] interpolates between the fully dimerized limits.
struct ChainParams {
    std::size_t n_cells = 20;  // N
    double t0 = 1.0;
    double phi = 0.0;
    double gamma1 = 0.0;  // intracell dissipative rate
    double gamma2 = 0.0;  // intercell dissipative rate
    double tau = 0.0;     // shared-bath rate (dynamics module)
    double omega = 0.0;   // qubit frequency; 0 = rotating frame
    OnSitePotential onsite;

    void validate() const;  // throws std::invalid_argument on violation
};

// The complex hopping amplitudes together with their dissipation-free parts:
// t_A = t0(1 - cos phi) - i gamma1, t_B = t0(1 + cos phi) - i gamma2.
struct Couplings {
    cdouble t_A;
    cdouble t_B;
    double t_A_real;  // t0(1 - cos phi)
    double t_B_real;  // t0(1 + cos phi)
};

namespace model {

Couplings couplings(const ChainParams& p);

// Dense 2N x 2N single-excitation matrix of the open chain in site order
// (A1, B1, A2, B2, ..., AN, BN): intracell bonds t_A, intercell bonds t_B,
// omega plus any on-site potential on the diagonal. Complex symmetric
// (H = H^T) for every on-site variant.
ComplexMatrix build_open_chain(const ChainParams& p);

// 2x2 Bloch matrix at momentum k in [-pi, pi]: zero diagonal, upper-right
// t_A + t_B e^{-ik}, lower-left t_A + t_B e^{+ik}. Defined only for the
// translation-invariant chain (onsite none).
ComplexMatrix bloch_hamiltonian(const ChainParams& p, double k);

// Imaginary on-site shifts for the configured variant, one entry per site.
// This is the diagonal build_open_chain adds on top of omega; exposed so the
// open-system layer can apply the same convention.
cvector onsite_diagonal(const ChainParams& p);

}  // namespace model

}  // namespace sshc
