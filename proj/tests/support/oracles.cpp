#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace oracle {

std::vector<cdouble> char_poly(const ComplexMatrix& A) {
    const std::size_t n = A.rows();
    ComplexMatrix M = ComplexMatrix::identity(n);
    std::vector<cdouble> c(n);
    cdouble ck(1.0, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            // M <- A*M_prev + c_prev I
            M = A * M;
            for (std::size_t i = 0; i < n; ++i) M(i, i) += ck;
        }
        const ComplexMatrix AM = A * M;
        ck = -AM.trace() / static_cast<double>(k);
        c[k - 1] = ck;
    }
    return c;
}

namespace {

cdouble horner(const std::vector<cdouble>& c, cdouble x) {
    cdouble p(1.0, 0.0);
    for (const cdouble& ck : c) p = p * x + ck;
    return p;
}

}  // namespace

std::vector<cdouble> poly_roots(const std::vector<cdouble>& coeffs) {
    const std::size_t n = coeffs.size();
    if (n == 0) return {};
    double radius = 1.0;
    for (const cdouble& ck : coeffs) radius = std::max(radius, std::abs(ck));
    radius = 1.0 + radius;

    std::vector<cdouble> z(n);
    const cdouble seed(0.4, 0.9);
    cdouble p(1.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        p *= seed;
        z[j] = radius * p / std::abs(p);
    }

    for (int it = 0; it < 1000; ++it) {
        double worst = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            cdouble denom(1.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) denom *= z[j] - z[k];
            }
            if (denom == cdouble(0.0, 0.0)) {
                z[j] += cdouble(1e-8, 1e-8);
                continue;
            }
            const cdouble step = horner(coeffs, z[j]) / denom;
            z[j] -= step;
            worst = std::max(worst, std::abs(step));
        }
        if (worst < 1e-14 * radius) break;
    }
    return z;
}

std::vector<cdouble> eigenvalues_bruteforce(const ComplexMatrix& A) {
    return poly_roots(char_poly(A));
}

ComplexMatrix inverse2(const ComplexMatrix& A) {
    if (A.rows() != 2 || A.cols() != 2) throw std::invalid_argument("inverse2: not 2x2");
    const cdouble det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    ComplexMatrix inv(2, 2);
    inv(0, 0) = A(1, 1) / det;
    inv(0, 1) = -A(0, 1) / det;
    inv(1, 0) = -A(1, 0) / det;
    inv(1, 1) = A(0, 0) / det;
    return inv;
}

double multiset_distance(std::vector<cdouble> a, std::vector<cdouble> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    std::vector<char> used(b.size(), 0);
    for (const cdouble& x : a) {
        std::size_t best = b.size();
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(x - b[j]);
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        used[best] = 1;
        worst = std::max(worst, bd);
    }
    return worst;
}


ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B) {
    const std::size_t ar = A.rows(), ac = A.cols(), br = B.rows(), bc = B.cols();
    ComplexMatrix K(ar * br, ac * bc);
    for (std::size_t i = 0; i < ar; ++i) {
        for (std::size_t j = 0; j < ac; ++j) {
            for (std::size_t p = 0; p < br; ++p) {
                for (std::size_t q = 0; q < bc; ++q) {
                    K(i * br + p, j * bc + q) = A(i, j) * B(p, q);
                }
            }
        }
    }
    return K;
}

cvector vec(const ComplexMatrix& rho) {
    const std::size_t n = rho.rows();
    cvector v(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) v[j * n + i] = rho(i, j);
    }
    return v;
}

ComplexMatrix unvec(const cvector& v, std::size_t n) {
    ComplexMatrix rho(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) rho(i, j) = v[j * n + i];
    }
    return rho;
}

ComplexMatrix lindblad_superop(const ComplexMatrix& H,
                               const std::vector<ComplexMatrix>& jumps,
                               const std::vector<double>& rates) {
    const std::size_t n = H.rows();
    const ComplexMatrix id = ComplexMatrix::identity(n);
    const cdouble mi(0.0, -1.0);

    // -i (I (x) H - H^T (x) I)
    ComplexMatrix S = kron(id, H);
    const ComplexMatrix Ht = H.transpose();
    ComplexMatrix S2 = kron(Ht, id);
    for (std::size_t i = 0; i < S.rows(); ++i) {
        for (std::size_t j = 0; j < S.cols(); ++j) {
            S(i, j) = mi * (S(i, j) - S2(i, j));
        }
    }

    for (std::size_t k = 0; k < jumps.size(); ++k) {
        const ComplexMatrix& L = jumps[k];
        const ComplexMatrix Ld = L.adjoint();
        const ComplexMatrix LdL = Ld * L;
        ComplexMatrix Lconj(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) Lconj(i, j) = std::conj(L(i, j));
        }
        const ComplexMatrix sandwich = kron(Lconj, L);
        const ComplexMatrix left = kron(id, LdL);
        const ComplexMatrix right = kron(LdL.transpose(), id);
        for (std::size_t i = 0; i < S.rows(); ++i) {
            for (std::size_t j = 0; j < S.cols(); ++j) {
                S(i, j) += rates[k] *
                           (sandwich(i, j) - 0.5 * left(i, j) - 0.5 * right(i, j));
            }
        }
    }
    return S;
}

}  // namespace oracle
