#include "sshc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sshc/errors.hpp"
#include "sshc/linalg.hpp"

namespace sshc::dynamics {

namespace {

// Expected form of the conditional Hamiltonian: the closed-chain builder with
// both bond losses at tau/2, plus the diagonal the baths induce (-i tau on
// interior sites, -i tau/2 at the two ends). Used only to cross-check the
// jump-list construction.
ComplexMatrix conditional_reference(const ChainParams& p) {
    ChainParams q = p;
    q.gamma1 = 0.5 * p.tau;
    q.gamma2 = 0.5 * p.tau;
    ComplexMatrix H = model::build_open_chain(q);
    const std::size_t n = H.rows();
    for (std::size_t s = 0; s < n; ++s) {
        const bool end = (s == 0 || s == n - 1);
        H(s, s) += cdouble(0.0, end ? -0.5 * p.tau : -p.tau);
    }
    return H;
}

}  // namespace

LiouvillianModel build_liouvillian(const ChainParams& p) {
    p.validate();
    const std::size_t N = p.n_cells;
    const std::size_t n = 2 * N;
    const std::size_t mid = n - 2;

    LiouvillianModel m;
    m.params = p;

    // Coherent part: bare bonds and omega only; every imaginary piece below
    // comes from the jump operators (or the on-site variant, applied later).
    ChainParams coherent = p;
    coherent.gamma1 = 0.0;
    coherent.gamma2 = 0.0;
    coherent.onsite = OnSitePotential{};
    m.H_T_block = model::build_open_chain(coherent);

    // Collective lowering operators, all at rate tau: one per cell (A_i + B_i)
    // and one per inter-cell bond (A_{i+1} + B_i).
    m.jump_ops.reserve(2 * N - 1);
    for (std::size_t i = 0; i < N; ++i) {
        m.jump_ops.push_back({{2 * i, 2 * i + 1}, p.tau});
    }
    for (std::size_t i = 0; i + 1 < N; ++i) {
        m.jump_ops.push_back({{2 * i + 1, 2 * i + 2}, p.tau});
    }

    // Interior block over (B_1, A_2, B_2, ..., A_N): interior index j maps to
    // chain site j+1, so the bond after interior site j is the inter-cell
    // coupling when j is even and the intra-cell coupling when j is odd.
    const Couplings c = model::couplings(p);
    if (mid > 0) {
        m.M = ComplexMatrix(mid, mid);
        m.M_prime = ComplexMatrix(mid, mid);
    }
    for (std::size_t j = 0; j < mid; ++j) {
        m.M(j, j) = cdouble(0.0, -p.tau);
        m.M_prime(j, j) = cdouble(p.tau, 0.0);
        if (j + 1 < mid) {
            const double bond = (j % 2 == 0) ? c.t_B_real : c.t_A_real;
            const cdouble hop(bond, -0.5 * p.tau);
            m.M(j, j + 1) = hop;
            m.M(j + 1, j) = hop;
            m.M_prime(j, j + 1) = cdouble(0.5 * p.tau, 0.0);
            m.M_prime(j + 1, j) = cdouble(0.5 * p.tau, 0.0);
        }
    }
    m.G.assign(mid, cdouble(0.0, 0.0));
    m.V.assign(mid, cdouble(0.0, 0.0));
    if (mid > 0) {
        const cdouble end_coupling(c.t_A_real, -0.5 * p.tau);
        m.G.front() = end_coupling;   // site 1 couples to B_1
        m.V.back() = end_coupling;    // site 2N couples to A_N
    }

    const ComplexMatrix built = conditional_hamiltonian(m);
    const ComplexMatrix expected = conditional_reference(p);
    double mismatch = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            mismatch = std::max(mismatch, std::abs(built(i, j) - expected(i, j)));
        }
    }
    if (mismatch > 1e-12) {
        throw std::logic_error(
            "build_liouvillian: jump list and closed-chain forms of the "
            "conditional Hamiltonian disagree by " + std::to_string(mismatch));
    }
    return m;
}

ComplexMatrix conditional_hamiltonian(const LiouvillianModel& m) {
    ComplexMatrix H = m.H_T_block;
    for (const JumpOp& op : m.jump_ops) {
        // L^dag L for a collective lowering operator is the all-ones block on
        // its support.
        const cdouble shift(0.0, -0.5 * op.rate);
        for (std::size_t a : op.sites) {
            for (std::size_t b : op.sites) H(a, b) += shift;
        }
    }
    const cvector extra = model::onsite_diagonal(m.params);
    for (std::size_t s = 0; s < H.rows(); ++s) H(s, s) += extra[s];
    return H;
}

EdgeCoupling adiabatic_edge_coupling(const LiouvillianModel& m) {
    if (m.M.rows() == 0) {
        throw std::invalid_argument(
            "adiabatic_edge_coupling: no interior sites to eliminate (need >= 2 cells)");
    }
    cvector x;
    try {
        x = linalg::solve(m.M, m.V);
    } catch (const SingularMatrix&) {
        throw SingularMiddleBlock(
            "adiabatic_edge_coupling: interior block is singular at these parameters");
    }
    const cdouble contraction = bilinear(m.G, x);

    EdgeCoupling e;
    e.delta_g = contraction.real();
    e.delta_gamma = contraction.imag();
    e.E_prime_plus = cdouble(e.delta_g, -e.delta_gamma);
    e.E_prime_minus = -e.E_prime_plus;
    return e;
}

std::vector<TrajectoryPoint> evolve_single_excitation(const LiouvillianModel& m,
                                                      const cvector& psi0,
                                                      const std::vector<double>& t_grid) {
    const std::size_t n = m.H_T_block.rows();
    if (psi0.size() != n) {
        throw std::invalid_argument("evolve_single_excitation: state length must be 2N");
    }
    const double nrm = norm2(psi0);
    if (std::abs(nrm - 1.0) > 1e-8) {
        throw std::invalid_argument("evolve_single_excitation: state must be normalized");
    }

    const ComplexMatrix H = conditional_hamiltonian(m);
    const std::vector<cvector> states = linalg::evolve(H, psi0, t_grid);

    std::vector<TrajectoryPoint> out(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        TrajectoryPoint& pt = out[k];
        pt.t = t_grid[k];
        pt.psi = states[k];
        pt.populations.resize(n);
        double total = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            pt.populations[s] = std::norm(pt.psi[s]);
            total += pt.populations[s];
        }
        pt.excited = total;
        pt.ground = 1.0 - total;
    }
    return out;
}

}  // namespace sshc::dynamics
