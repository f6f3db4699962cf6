// Dense linear solve by LU factorization with partial pivoting.

#include "sshc/linalg.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sshc/errors.hpp"

namespace sshc::linalg {

cvector solve(const ComplexMatrix& A, const cvector& b) {
    if (!A.is_square()) throw std::invalid_argument("solve: matrix must be square");
    if (b.size() != A.rows()) throw std::invalid_argument("solve: dimension mismatch");
    A.require_finite("solve");
    for (const cdouble& z : b) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("solve: right-hand side has non-finite entry");
        }
    }

    const std::size_t n = A.rows();
    const double pivot_floor = 1e-14 * A.frobenius_norm();
    ComplexMatrix lu = A;
    cvector x = b;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
        }
        if (std::abs(lu(p, k)) < pivot_floor) {
            throw SingularMatrix("solve: pivot below 1e-14 * |A|_F");
        }
        if (p != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            std::swap(x[k], x[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const cdouble f = lu(i, k) / lu(k, k);
            lu(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            x[i] -= f * x[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        cdouble s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
        x[i] = s / lu(i, i);
    }
    return x;
}

}  // namespace sshc::linalg
