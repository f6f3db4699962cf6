// Schrodinger propagation psi(t) = exp(-iHt) psi(0) by the Dormand-Prince
// 5(4) embedded Runge-Kutta pair with adaptive step control. H may be
// non-Hermitian, so the norm is allowed to decay (or grow) freely.

#include "sshc/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sshc/errors.hpp"

namespace sshc::linalg {

namespace {

// Local error is controlled per unit time: an accepted step of size h may
// contribute at most kErrDensity * h * (1 + |psi|) to the global error. The
// density is kept far below the contractual ceiling so that long Hermitian
// runs hold their norm to well under 1e-8.
constexpr double kErrDensity = 1e-12;

void rhs(const ComplexMatrix& H, const cvector& y, cvector& out) {
    const std::size_t n = y.size();
    const cdouble* a = H.data();
    for (std::size_t i = 0; i < n; ++i) out[i] = cdouble(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const cdouble yj = y[j];
        if (yj == cdouble(0.0, 0.0)) continue;
        const cdouble* col = a + j * n;
        for (std::size_t i = 0; i < n; ++i) out[i] += col[i] * yj;
    }
    for (std::size_t i = 0; i < n; ++i) out[i] *= cdouble(0.0, -1.0);  // dpsi/dt = -i H psi
}

}  // namespace

std::vector<cvector> evolve(const ComplexMatrix& H, const cvector& psi0,
                            const std::vector<double>& t_grid) {
    if (!H.is_square()) throw std::invalid_argument("evolve: matrix must be square");
    if (psi0.size() != H.rows()) throw std::invalid_argument("evolve: state dimension mismatch");
    if (t_grid.empty()) throw std::invalid_argument("evolve: empty time grid");
    if (t_grid.front() != 0.0) throw std::invalid_argument("evolve: time grid must start at 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw std::invalid_argument("evolve: time grid must be strictly increasing");
        }
    }
    H.require_finite("evolve");

    const std::size_t n = psi0.size();
    std::vector<cvector> out;
    out.reserve(t_grid.size());
    out.push_back(psi0);
    if (t_grid.size() == 1) return out;

    // Dormand-Prince coefficients. k7 of an accepted step doubles as k1 of
    // the next one (first-same-as-last).
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double span = t_grid.back();
    const double h_min = 1e-12 * span;
    const double hnorm = H.frobenius_norm();

    cvector y = psi0;
    double t = 0.0;
    double h = std::min(span / 100.0, 0.1 / (hnorm + 1.0));
    cvector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);
    rhs(H, y, k1);
    bool k1_fresh = true;

    for (std::size_t g = 1; g < t_grid.size(); ++g) {
        const double t_target = t_grid[g];
        while (t < t_target) {
            if (h < h_min) throw StepUnderflow("evolve: step size collapsed below 1e-12 of span");
            bool clipped = false;
            double hs = h;
            if (t + hs >= t_target) {
                hs = t_target - t;
                clipped = true;
            }
            if (!k1_fresh) {
                rhs(H, y, k1);
                k1_fresh = true;
            }
            for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a21 * k1[i]);
            rhs(H, tmp, k2);
            for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
            rhs(H, tmp, k3);
            for (std::size_t i = 0; i < n; ++i)
                tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            rhs(H, tmp, k4);
            for (std::size_t i = 0; i < n; ++i)
                tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            rhs(H, tmp, k5);
            for (std::size_t i = 0; i < n; ++i)
                tmp[i] = y[i] +
                         hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            rhs(H, tmp, k6);
            for (std::size_t i = 0; i < n; ++i)
                ynew[i] = y[i] +
                          hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            rhs(H, ynew, k7);

            double err2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const cdouble e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                        e6 * k6[i] + e7 * k7[i]);
                err2 += std::norm(e);
            }
            const double err = std::sqrt(err2);
            const double tol = kErrDensity * hs * (1.0 + std::max(norm2(y), norm2(ynew)));

            if (err <= tol) {
                t = clipped ? t_target : t + hs;
                y = ynew;
                k1 = k7;
                k1_fresh = true;
            } else {
                k1_fresh = true;  // y unchanged, k1 still valid
            }
            const double grow =
                (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
            h = hs * std::min(5.0, std::max(0.2, grow));
        }
        out.push_back(y);
    }
    return out;
}

}  // namespace sshc::linalg
