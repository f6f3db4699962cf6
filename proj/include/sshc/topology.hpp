// Phase classification, Bloch dispersion on a k-grid, and the energy winding
// number of the two-band chain.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sshc/complex_matrix.hpp"
#include "sshc/model.hpp"

namespace sshc {

enum class Phase { topological, trivial, boundary };

struct PhaseReport {
    Phase phase = Phase::boundary;
    double lhs = 0.0;  // t_A_real^2 + gamma1^2
    double rhs = 0.0;  // t_B_real^2 + gamma2^2
    std::optional<int> winding;   // filled by winding_number, not classify_phase
    double min_abs_E_on_grid = 0.0;
};

struct DispersionCurve {
    std::vector<double> k_grid;  // uniform over [-pi, pi], inclusive
    cvector E_plus;
    cvector E_minus;  // exactly -E_plus, entry by entry
};

namespace topology {

// Closed-form phase boundary: topological iff lhs < rhs - eps with
// eps = 1e-12 * t0^2; `boundary` within eps. Winding is left unset here.
PhaseReport classify_phase(const ChainParams& p);

// Band energies E_+(k) = sqrt(t_A^2 + t_B^2 + 2 t_A t_B cos k) on n_k points,
// with the square-root branch anchored to the principal value at k = -pi and
// continued without jumps along the grid.
DispersionCurve dispersion(const ChainParams& p, std::size_t n_k);

// Quantized winding of the band phase across the Brillouin zone, evaluated as
// a wrapped phase-difference sum on a closed k-grid. Requires n_k >= 1001;
// defaults high enough to resolve nearly touching bands.
int winding_number(const ChainParams& p, std::size_t n_k = 4001);

// Smallest |E_+(k)| on the n_k-point grid (gap diagnostic for PhaseReport).
double min_abs_E_on_grid(const ChainParams& p, std::size_t n_k);

}  // namespace topology

}  // namespace sshc
