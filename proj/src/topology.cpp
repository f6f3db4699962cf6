#include "sshc/topology.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "sshc/errors.hpp"

namespace sshc::topology {

namespace {

void require_bare_chain(const ChainParams& p, const char* who) {
    if (p.onsite.kind != OnSiteKind::none) {
        throw UnsupportedOnsite(std::string(who) + ": defined only for the bare chain");
    }
}

std::vector<double> k_grid(std::size_t n_k) {
    std::vector<double> ks(n_k);
    const double step = 2.0 * M_PI / static_cast<double>(n_k - 1);
    for (std::size_t j = 0; j < n_k; ++j) ks[j] = -M_PI + step * static_cast<double>(j);
    ks.back() = M_PI;
    return ks;
}

}  // namespace

PhaseReport classify_phase(const ChainParams& p) {
    p.validate();
    require_bare_chain(p, "classify_phase");
    const Couplings c = model::couplings(p);
    PhaseReport r;
    r.lhs = c.t_A_real * c.t_A_real + p.gamma1 * p.gamma1;
    r.rhs = c.t_B_real * c.t_B_real + p.gamma2 * p.gamma2;
    const double eps = 1e-12 * p.t0 * p.t0;
    if (r.lhs < r.rhs - eps) {
        r.phase = Phase::topological;
    } else if (r.lhs > r.rhs + eps) {
        r.phase = Phase::trivial;
    } else {
        r.phase = Phase::boundary;
    }
    return r;
}

DispersionCurve dispersion(const ChainParams& p, std::size_t n_k) {
    p.validate();
    require_bare_chain(p, "dispersion");
    if (n_k < 2) throw std::invalid_argument("dispersion: n_k must be >= 2");
    const Couplings c = model::couplings(p);
    const cdouble a2b2 = c.t_A * c.t_A + c.t_B * c.t_B;
    const cdouble ab2 = 2.0 * c.t_A * c.t_B;

    DispersionCurve curve;
    curve.k_grid = k_grid(n_k);
    curve.E_plus.resize(n_k);
    curve.E_minus.resize(n_k);
    cdouble prev(0.0, 0.0);
    for (std::size_t j = 0; j < n_k; ++j) {
        const cdouble s = std::sqrt(a2b2 + ab2 * std::cos(curve.k_grid[j]));
        // Principal value at the anchor, then whichever sign continues the
        // running branch without a jump.
        const cdouble e = (j == 0 || std::abs(s - prev) <= std::abs(-s - prev)) ? s : -s;
        curve.E_plus[j] = e;
        curve.E_minus[j] = -e;
        prev = e;
    }
    return curve;
}

double min_abs_E_on_grid(const ChainParams& p, std::size_t n_k) {
    p.validate();
    require_bare_chain(p, "min_abs_E_on_grid");
    if (n_k < 2) throw std::invalid_argument("min_abs_E_on_grid: n_k must be >= 2");
    const Couplings c = model::couplings(p);
    double min_abs = std::numeric_limits<double>::infinity();
    for (double k : k_grid(n_k)) {
        const cdouble ek(std::cos(k), std::sin(k));
        const double abs2 =
            std::abs(c.t_A + c.t_B * std::conj(ek)) * std::abs(c.t_A + c.t_B * ek);
        min_abs = std::min(min_abs, std::sqrt(abs2));
    }
    return min_abs;
}

int winding_number(const ChainParams& p, std::size_t n_k) {
    p.validate();
    require_bare_chain(p, "winding_number");
    if (n_k < 1001) throw std::invalid_argument("winding_number: n_k must be >= 1001");

    if (min_abs_E_on_grid(p, n_k) < 1e-8 * p.t0) {
        throw GapClosure("winding_number: band reaches zero on the grid");
    }

    // The band energy is E_+(k)^2 = h_-(k) h_+(k) with h_{-+}(k) = t_A +
    // t_B e^{+-ik}, the two off-diagonal Bloch entries. The total phase
    // accumulated by E_+ around the zone splits evenly between the two
    // factors, whose individual windings are opposite; the quantized invariant
    // is their relative winding, accumulated here as wrapped phase
    // differences of each factor over the closed grid.
    const Couplings c = model::couplings(p);
    const std::vector<double> ks = k_grid(n_k);
    double sum_minus = 0.0, sum_plus = 0.0;
    cdouble prev_minus, prev_plus;
    for (std::size_t j = 0; j < n_k; ++j) {
        const cdouble ek(std::cos(ks[j]), std::sin(ks[j]));
        const cdouble h_minus = c.t_A + c.t_B * ek;
        const cdouble h_plus = c.t_A + c.t_B * std::conj(ek);
        if (j > 0) {
            sum_minus += std::arg(h_minus * std::conj(prev_minus));
            sum_plus += std::arg(h_plus * std::conj(prev_plus));
        }
        prev_minus = h_minus;
        prev_plus = h_plus;
    }
    const double raw = 0.5 * (sum_minus - sum_plus);
    const double cycles = raw / (2.0 * M_PI);
    const double nearest = std::round(cycles);
    if (std::abs(raw - nearest * 2.0 * M_PI) > 1e-3) {
        throw NonQuantized("winding_number: accumulated phase is not near a multiple of 2*pi");
    }
    return static_cast<int>(nearest);
}

}  // namespace sshc::topology
