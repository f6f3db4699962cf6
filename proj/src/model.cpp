#include "sshc/model.hpp"

#include <cmath>
#include <stdexcept>

#include "sshc/errors.hpp"

namespace sshc {

void ChainParams::validate() const {
    if (n_cells < 1) throw std::invalid_argument("ChainParams: n_cells must be >= 1");
    if (!(t0 > 0.0) || !std::isfinite(t0)) {
        throw std::invalid_argument("ChainParams: t0 must be positive and finite");
    }
    if (!std::isfinite(phi) || phi < 0.0 || phi > M_PI) {
        throw std::invalid_argument("ChainParams: phi must lie in [0, pi]");
    }
    if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0) || !(tau >= 0.0)) {
        throw std::invalid_argument("ChainParams: gamma1, gamma2, tau must be nonnegative");
    }
    if (!std::isfinite(gamma1) || !std::isfinite(gamma2) || !std::isfinite(tau) ||
        !std::isfinite(omega)) {
        throw std::invalid_argument("ChainParams: rates and omega must be finite");
    }
    if (!(onsite.strength >= 0.0) || !std::isfinite(onsite.strength)) {
        throw std::invalid_argument("ChainParams: onsite strength must be nonnegative");
    }
}

namespace model {

Couplings couplings(const ChainParams& p) {
    p.validate();
    const double ta = p.t0 * (1.0 - std::cos(p.phi));
    const double tb = p.t0 * (1.0 + std::cos(p.phi));
    return {cdouble(ta, -p.gamma1), cdouble(tb, -p.gamma2), ta, tb};
}

ComplexMatrix build_open_chain(const ChainParams& p) {
    const Couplings c = couplings(p);
    const std::size_t n = 2 * p.n_cells;
    ComplexMatrix H(n, n);

    // Bonds alternate t_A (A_n-B_n) and t_B (B_n-A_{n+1}); both directions
    // carry the same amplitude, so the matrix stays complex symmetric even
    // though it is not Hermitian.
    for (std::size_t s = 0; s + 1 < n; ++s) {
        const cdouble hop = (s % 2 == 0) ? c.t_A : c.t_B;
        H(s, s + 1) = hop;
        H(s + 1, s) = hop;
    }

    const cvector shift = onsite_diagonal(p);
    for (std::size_t s = 0; s < n; ++s) H(s, s) = cdouble(p.omega, 0.0) + shift[s];
    return H;
}

cvector onsite_diagonal(const ChainParams& p) {
    p.validate();
    const std::size_t n = 2 * p.n_cells;
    cvector d(n, cdouble(0.0, 0.0));
    const double g = p.onsite.strength;
    switch (p.onsite.kind) {
        case OnSiteKind::none:
            break;
        case OnSiteKind::uniform_loss:
            for (std::size_t s = 0; s < n; ++s) d[s] = cdouble(0.0, -g);
            break;
        case OnSiteKind::staggered_gain_loss:
            for (std::size_t s = 0; s < n; ++s) {
                d[s] = (s % 2 == 0) ? cdouble(0.0, g) : cdouble(0.0, -g);
            }
            break;
        case OnSiteKind::endpoints_only:
            d[0] = cdouble(0.0, -g);
            d[n - 1] = cdouble(0.0, g);
            break;
    }
    return d;
}

ComplexMatrix bloch_hamiltonian(const ChainParams& p, double k) {
    if (p.onsite.kind != OnSiteKind::none) {
        throw UnsupportedOnsite("bloch_hamiltonian: defined only for the bare chain");
    }
    if (!std::isfinite(k) || k < -M_PI || k > M_PI) {
        throw std::invalid_argument("bloch_hamiltonian: k must lie in [-pi, pi]");
    }
    const Couplings c = couplings(p);
    ComplexMatrix Hk(2, 2);
    Hk(0, 1) = c.t_A + c.t_B * std::exp(cdouble(0.0, -k));
    Hk(1, 0) = c.t_A + c.t_B * std::exp(cdouble(0.0, k));
    return Hk;
}

}  // namespace model

}  // namespace sshc
