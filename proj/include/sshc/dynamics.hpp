#pragma once
// Open-system layer: collective-loss Lindblad model of the chain, its
// single-excitation conditional dynamics, and the adiabatic elimination of the
// interior sites onto an effective two-site edge coupling.

#include <cstddef>
#include <vector>

#include "sshc/complex_matrix.hpp"
#include "sshc/model.hpp"

namespace sshc {

// One collective lowering operator: the sum of the lowering operators of the
// listed chain sites, dissipating at `rate`.
struct JumpOp {
    std::vector<std::size_t> sites;
    double rate = 0.0;
};

// The chain coupled to its loss channels. Bond dissipation is generated
// entirely by the collective jumps (rate tau); the spectral-model loss rates
// gamma1/gamma2 in params are ignored here and emerge as tau/2 in the
// conditional Hamiltonian. M, G, V describe the interior sites
// (B_1, A_2, B_2, ..., A_N) as seen from the two ends, and are what the
// adiabatic elimination consumes. M_prime is the real dissipative kernel on
// the same sites, kept for reference; its entries mirror the imaginary parts
// of M.
struct LiouvillianModel {
    ChainParams params;
    ComplexMatrix H_T_block;      // 2N x 2N coherent part (real bonds + omega)
    std::vector<JumpOp> jump_ops;
    ComplexMatrix M;              // (2N-2)^2 interior block, complex symmetric
    ComplexMatrix M_prime;        // (2N-2)^2, real entries
    cvector G;                    // end couplings into the interior
    cvector V;
};

// Effective edge-edge coupling after eliminating the interior: the two-level
// Hamiltonian (delta_g - i delta_gamma)(|1><2N| + |2N><1|) with eigenvalues
// E_prime_{+-}.
struct EdgeCoupling {
    double delta_g = 0.0;
    double delta_gamma = 0.0;
    cdouble E_prime_plus;
    cdouble E_prime_minus;
};

// State of a trajectory at one grid time.
struct TrajectoryPoint {
    double t = 0.0;
    cvector psi;                      // single-excitation amplitudes
    std::vector<double> populations;  // |psi_s|^2 per site
    double excited = 0.0;             // total excited-state population
    double ground = 0.0;              // 1 - excited
};

namespace dynamics {

// Assemble the model for the given chain parameters. Jumps are the collective
// pairs (A_i + B_i) and (A_{i+1} + B_i), all at rate tau; the equivalent
// regrouping into local end dissipators plus interior/interaction pieces is
// not materialized beyond M, G, V. Construction cross-checks that the
// conditional Hamiltonian implied by the jump list matches the closed-chain
// builder at gamma1 = gamma2 = tau/2 plus the bath-induced diagonal shifts
// (logic_error on mismatch -- an internal invariant, not an input condition).
// For a single cell the interior is empty and M, G, V have size zero.
LiouvillianModel build_liouvillian(const ChainParams& p);

// H_T - (i/2) sum_L rate L^dag L on the single-excitation sector, plus any
// configured on-site variant. Governs the no-jump evolution; the jump term
// only feeds the global ground state.
ComplexMatrix conditional_hamiltonian(const LiouvillianModel& m);

// Eliminate the interior: solve M x = V and contract G^T x (no inversion of
// M). Throws SingularMiddleBlock when the interior block is singular --
// reported, never regularized. Requires at least two cells.
EdgeCoupling adiabatic_edge_coupling(const LiouvillianModel& m);

// Evolve a normalized single-excitation state through t_grid under the
// conditional Hamiltonian and report per-site populations, the total excited
// population, and the ground-state weight it has decayed into. The excited
// population is non-increasing whenever tau > 0.
std::vector<TrajectoryPoint> evolve_single_excitation(const LiouvillianModel& m,
                                                      const cvector& psi0,
                                                      const std::vector<double>& t_grid);

}  // namespace dynamics

}  // namespace sshc
