// Non-Hermitian dense eigensolver: balance, Householder reduction to upper
// Hessenberg form, implicitly single-shifted complex QR with deflation for the
// eigenvalues, inverse iteration for the vectors, and a biorthonormal pairing
// pass that survives the near-degenerate pairs this library exists to study.

#include "sshc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sshc/errors.hpp"

namespace sshc::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxDim = 1024;

struct Givens {
    double c;
    cdouble s;
};

// Unitary rotation [c, s; -conj(s), c] mapping (f, g) to (r, 0).
Givens make_givens(cdouble f, cdouble g) {
    const double af = std::abs(f);
    const double ag = std::abs(g);
    if (ag == 0.0) return {1.0, cdouble(0.0, 0.0)};
    if (af == 0.0) return {0.0, std::conj(g) / ag};
    const double d = std::hypot(af, ag);
    return {af / d, (f / af) * std::conj(g) / d};
}

// Diagonal similarity scaling by powers of two; returns d with
// A_balanced = D^-1 A D, D = diag(d). A no-op for the already well-scaled
// chain matrices, but protects arbitrary input.
std::vector<double> balance(ComplexMatrix& A) {
    const std::size_t n = A.rows();
    std::vector<double> d(n, 1.0);
    for (int pass = 0; pass < 50; ++pass) {
        bool converged = true;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(A(j, i));
                r += std::abs(A(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            const double before = c + r;
            double f = 1.0;
            while (c < r / 2.0) { c *= 2.0; r /= 2.0; f *= 2.0; }
            while (c >= r * 2.0) { c /= 2.0; r *= 2.0; f /= 2.0; }
            if (f != 1.0 && (c + r) < 0.95 * before) {
                converged = false;
                d[i] *= f;
                for (std::size_t j = 0; j < n; ++j) A(j, i) *= f;
                for (std::size_t j = 0; j < n; ++j) A(i, j) /= f;
            }
        }
        if (converged) break;
    }
    return d;
}

// In-place reduction A -> upper Hessenberg via Householder reflectors,
// accumulating the unitary Q with Q^dagger A_in Q = A_out.
void hessenberg(ComplexMatrix& A, ComplexMatrix& Q) {
    const std::size_t n = A.rows();
    Q = ComplexMatrix::identity(n);
    if (n < 3) return;
    cvector v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(A(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;
        const cdouble x0 = A(k + 1, k);
        const cdouble alpha =
            (x0 == cdouble(0.0, 0.0)) ? cdouble(-xnorm, 0.0) : -(x0 / std::abs(x0)) * xnorm;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = A(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        const double vnorm = std::sqrt(vnorm2);
        if (vnorm < kEps * xnorm) continue;
        for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;

        // A <- (I - 2 v v^dagger) A on the trailing rows.
        for (std::size_t j = k; j < n; ++j) {
            cdouble s(0.0, 0.0);
            for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * A(i, j);
            s *= 2.0;
            for (std::size_t i = k + 1; i < n; ++i) A(i, j) -= s * v[i];
        }
        // A <- A (I - 2 v v^dagger) on the trailing columns.
        for (std::size_t i = 0; i < n; ++i) {
            cdouble s(0.0, 0.0);
            for (std::size_t j = k + 1; j < n; ++j) s += A(i, j) * v[j];
            s *= 2.0;
            for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= s * std::conj(v[j]);
        }
        // Q <- Q (I - 2 v v^dagger).
        for (std::size_t i = 0; i < n; ++i) {
            cdouble s(0.0, 0.0);
            for (std::size_t j = k + 1; j < n; ++j) s += Q(i, j) * v[j];
            s *= 2.0;
            for (std::size_t j = k + 1; j < n; ++j) Q(i, j) -= s * std::conj(v[j]);
        }
        A(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) A(i, k) = cdouble(0.0, 0.0);
    }
}

std::pair<cdouble, cdouble> eig2(cdouble a, cdouble b, cdouble c, cdouble d) {
    const cdouble m = 0.5 * (a + d);
    const cdouble det = a * d - b * c;
    const cdouble disc = std::sqrt(m * m - det);
    const cdouble l1 = (std::abs(m + disc) >= std::abs(m - disc)) ? m + disc : m - disc;
    const cdouble l2 = (l1 == cdouble(0.0, 0.0)) ? cdouble(0.0, 0.0) : det / l1;
    return {l1, l2};
}

void rotate_rows(ComplexMatrix& H, std::size_t i, const Givens& g, std::size_t jlo, std::size_t jhi) {
    for (std::size_t j = jlo; j <= jhi; ++j) {
        const cdouble a = H(i, j);
        const cdouble b = H(i + 1, j);
        H(i, j) = g.c * a + g.s * b;
        H(i + 1, j) = -std::conj(g.s) * a + g.c * b;
    }
}

void rotate_cols(ComplexMatrix& H, std::size_t j, const Givens& g, std::size_t ilo, std::size_t ihi) {
    for (std::size_t i = ilo; i <= ihi; ++i) {
        const cdouble a = H(i, j);
        const cdouble b = H(i, j + 1);
        H(i, j) = g.c * a + std::conj(g.s) * b;
        H(i, j + 1) = -g.s * a + g.c * b;
    }
}

// Eigenvalues of an upper Hessenberg matrix by the implicit single-shift QR
// iteration. Destroys its argument. Only the eigenvalues are needed here;
// eigenvectors are recovered later by inverse iteration on the untouched
// Hessenberg matrix, so no Schur vectors are accumulated.
std::vector<cdouble> qr_eigenvalues(ComplexMatrix H, double scale) {
    const std::size_t n = H.rows();
    std::vector<cdouble> ev(n);
    if (n == 1) {
        ev[0] = H(0, 0);
        return ev;
    }
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    long sweeps_total = 0;
    const long budget = 30 * static_cast<long>(n) + 100;
    int sweeps_this_block = 0;

    while (hi >= 0) {
        // Deflate negligible subdiagonal entries below the active block.
        for (std::ptrdiff_t i = hi; i >= 1; --i) {
            double tst = std::abs(H(i - 1, i - 1)) + std::abs(H(i, i));
            if (tst == 0.0) tst = scale;
            if (std::abs(H(i, i - 1)) <= kEps * tst) H(i, i - 1) = cdouble(0.0, 0.0);
        }
        if (hi == 0 || H(hi, hi - 1) == cdouble(0.0, 0.0)) {
            ev[hi] = H(hi, hi);
            --hi;
            sweeps_this_block = 0;
            continue;
        }
        if (hi == 1 || H(hi - 1, hi - 2) == cdouble(0.0, 0.0)) {
            const auto [l1, l2] = eig2(H(hi - 1, hi - 1), H(hi - 1, hi), H(hi, hi - 1), H(hi, hi));
            ev[hi - 1] = l1;
            ev[hi] = l2;
            hi -= 2;
            sweeps_this_block = 0;
            continue;
        }
        // Locate the top of the active block.
        std::ptrdiff_t lo = hi;
        while (lo > 0 && H(lo, lo - 1) != cdouble(0.0, 0.0)) --lo;

        if (++sweeps_total > budget) {
            throw NonConvergence("eig: QR sweep budget exhausted");
        }
        cdouble sigma;
        if (++sweeps_this_block % 10 == 0) {
            // Exceptional shift to break symmetry-induced stalls.
            sigma = H(hi, hi) + 0.75 * std::abs(H(hi, hi - 1));
        } else {
            const auto [l1, l2] = eig2(H(hi - 1, hi - 1), H(hi - 1, hi), H(hi, hi - 1), H(hi, hi));
            sigma = (std::abs(l1 - H(hi, hi)) <= std::abs(l2 - H(hi, hi))) ? l1 : l2;
        }

        // Implicit sweep: create the bulge from the shifted first column, then
        // chase it off the bottom of the active block.
        const std::size_t ulo = static_cast<std::size_t>(lo);
        const std::size_t uhi = static_cast<std::size_t>(hi);
        for (std::size_t k = ulo; k < uhi; ++k) {
            Givens g = (k == ulo) ? make_givens(H(ulo, ulo) - sigma, H(ulo + 1, ulo))
                                  : make_givens(H(k, k - 1), H(k + 1, k - 1));
            rotate_rows(H, k, g, ulo, uhi);
            rotate_cols(H, k, g, ulo, uhi);
            if (k > ulo) H(k + 1, k - 1) = cdouble(0.0, 0.0);
        }
    }
    return ev;
}

// LU of (Hess - lambda I) with partial pivoting on adjacent rows. Tiny pivots
// are replaced rather than rejected: this factorization exists to drive
// inverse iteration, where a nearly singular shift is the whole point.
struct HessSolver {
    ComplexMatrix U;
    std::vector<char> swapped;
    std::vector<cdouble> mult;
    double tiny;

    HessSolver(const ComplexMatrix& Hess, cdouble lambda, double scale)
        : U(Hess), swapped(Hess.rows(), 0), mult(Hess.rows(), cdouble(0.0, 0.0)) {
        const std::size_t n = U.rows();
        tiny = kEps * (scale + std::abs(lambda));
        if (tiny == 0.0) tiny = std::numeric_limits<double>::min() * 1e4;
        for (std::size_t i = 0; i < n; ++i) U(i, i) -= lambda;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (std::abs(U(k + 1, k)) > std::abs(U(k, k))) {
                swapped[k] = 1;
                for (std::size_t j = k; j < n; ++j) std::swap(U(k, j), U(k + 1, j));
            }
            if (std::abs(U(k, k)) < tiny) U(k, k) = cdouble(tiny, 0.0);
            const cdouble m = U(k + 1, k) / U(k, k);
            mult[k] = m;
            for (std::size_t j = k; j < n; ++j) U(k + 1, j) -= m * U(k, j);
            U(k + 1, k) = cdouble(0.0, 0.0);
        }
        if (std::abs(U(n - 1, n - 1)) < tiny) U(n - 1, n - 1) = cdouble(tiny, 0.0);
    }

    void solve_in_place(cvector& b) const {
        const std::size_t n = U.rows();
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (swapped[k]) std::swap(b[k], b[k + 1]);
            b[k + 1] -= mult[k] * b[k];
        }
        for (std::size_t i = n; i-- > 0;) {
            cdouble s = b[i];
            for (std::size_t j = i + 1; j < n; ++j) s -= U(i, j) * b[j];
            b[i] = s / U(i, i);
        }
    }
};

void normalize(cvector& v) {
    const double nv = norm2(v);
    if (nv > 0.0) scale(v, cdouble(1.0 / nv, 0.0));
}

// Deterministic, member-dependent real start vector so that repeated
// eigenvalues receive independent iterates.
cvector start_vector(std::size_t n, std::size_t member) {
    cvector v(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = static_cast<double>(j + 1) * static_cast<double>(member + 1);
        v[j] = 1.0 + 0.25 * std::cos(1.3 * x) + 0.1 * std::sin(0.7 * x + 0.5);
    }
    normalize(v);
    return v;
}

cvector inverse_iteration(const ComplexMatrix& Hess, const HessSolver& lu, cdouble lambda,
                          std::size_t member, double scale,
                          const std::vector<cvector>& avoid) {
    const std::size_t n = Hess.rows();
    cvector v = start_vector(n, member);
    const double resid_target = 64.0 * static_cast<double>(n) * kEps * (scale + std::abs(lambda));
    for (int round = 0; round < 2; ++round) {
        const bool orthogonalize = (round == 1);
        for (int it = 0; it < (round == 0 ? 3 : 4); ++it) {
            lu.solve_in_place(v);
            if (orthogonalize) {
                for (const cvector& u : avoid) {
                    const cdouble c = inner(u, v);
                    for (std::size_t i = 0; i < n; ++i) v[i] -= c * u[i];
                }
            }
            normalize(v);
            cvector r = Hess * v;
            for (std::size_t i = 0; i < n; ++i) r[i] -= lambda * v[i];
            if (norm2(r) <= resid_target) return v;
        }
        // A collapsed iterate (duplicate of an earlier cluster member) only
        // matters when that member converged to the same direction; retry with
        // per-iteration orthogonalization in that case.
        bool collapsed = false;
        for (const cvector& u : avoid) {
            if (std::abs(inner(u, v)) > 1.0 - 1e-6) collapsed = true;
        }
        if (!collapsed) break;
        v = start_vector(n, member + 7919);
    }
    return v;
}

struct SmallLU {
    ComplexMatrix lu;
    std::vector<std::size_t> perm;
    bool singular_below(double tol) const {
        for (std::size_t i = 0; i < lu.rows(); ++i) {
            if (std::abs(lu(i, i)) < tol) return true;
        }
        return false;
    }
};

SmallLU factor_small(ComplexMatrix S) {
    const std::size_t m = S.rows();
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < m; ++i) {
            if (std::abs(S(i, k)) > std::abs(S(p, k))) p = i;
        }
        if (p != k) {
            std::swap(perm[k], perm[p]);
            for (std::size_t j = 0; j < m; ++j) std::swap(S(k, j), S(p, j));
        }
        if (S(k, k) == cdouble(0.0, 0.0)) continue;
        for (std::size_t i = k + 1; i < m; ++i) {
            const cdouble f = S(i, k) / S(k, k);
            S(i, k) = f;
            for (std::size_t j = k + 1; j < m; ++j) S(i, j) -= f * S(k, j);
        }
    }
    return {std::move(S), std::move(perm)};
}

cvector solve_small(const SmallLU& f, cvector b) {
    const std::size_t m = b.size();
    cvector x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    }
    for (std::size_t i = m; i-- > 0;) {
        for (std::size_t j = i + 1; j < m; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

bool entrywise_equal_transpose(const ComplexMatrix& H) {
    for (std::size_t j = 0; j < H.cols(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (H(i, j) != H(j, i)) return false;
        }
    }
    return true;
}

struct OneSided {
    std::vector<cdouble> values;      // QR eigenvalues, sorted (Re, Im)
    std::vector<cvector> vectors;     // unit vectors in the original frame
};

// Eigenvalues plus inverse-iteration eigenvectors for one matrix. `cluster`
// radii follow the pairing tolerance so that near-degenerate members get
// distinct start vectors and collapse protection.
OneSided one_sided_decomposition(const ComplexMatrix& M, double cluster_tol) {
    const std::size_t n = M.rows();
    ComplexMatrix A = M;
    const std::vector<double> d = balance(A);
    ComplexMatrix Q;
    hessenberg(A, Q);
    const double scale = A.frobenius_norm();

    OneSided out;
    out.values = qr_eigenvalues(A, scale > 0.0 ? scale : 1.0);
    std::sort(out.values.begin(), out.values.end(), [](cdouble a, cdouble b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    out.vectors.resize(n);
    std::vector<cvector> cluster_members;
    for (std::size_t i = 0; i < n; ++i) {
        const bool same_cluster = i > 0 && std::abs(out.values[i] - out.values[i - 1]) <= cluster_tol;
        if (!same_cluster) cluster_members.clear();
        HessSolver lu(A, out.values[i], scale);
        cvector v = inverse_iteration(A, lu, out.values[i], cluster_members.size(), scale,
                                      cluster_members);
        cluster_members.push_back(v);
        // Back-transform: Hessenberg frame -> balanced frame -> original frame.
        cvector full = Q * v;
        for (std::size_t r = 0; r < n; ++r) full[r] *= d[r];
        normalize(full);
        out.vectors[i] = std::move(full);
    }
    return out;
}

}  // namespace

EigenDecomposition eig(const ComplexMatrix& H, LeftMode mode) {
    if (!H.is_square()) throw std::invalid_argument("eig: matrix must be square");
    if (H.rows() > kMaxDim) throw std::invalid_argument("eig: dimension exceeds 1024");
    H.require_finite("eig");
    const std::size_t n = H.rows();

    if (H.frobenius_norm() == 0.0) {
        // The zero matrix defeats every relative threshold below, but its
        // decomposition is trivial: answer it directly.
        EigenDecomposition d;
        d.eigenvalues.assign(n, cdouble(0.0, 0.0));
        d.right_vectors = ComplexMatrix::identity(n);
        d.left_vectors = ComplexMatrix::identity(n);
        d.residual_max = 0.0;
        return d;
    }

    const bool symmetric = entrywise_equal_transpose(H);
    if (mode == LeftMode::conjugate && !symmetric) {
        throw std::invalid_argument("eig: conjugate left-vector mode requires H = H^T");
    }
    const bool use_conjugate = (mode == LeftMode::conjugate) ||
                               (mode == LeftMode::automatic && symmetric);

    const double hnorm = H.frobenius_norm();
    const double scale = hnorm > 0.0 ? hnorm : 1.0;
    const double pair_tol = 1e-6 * scale;

    OneSided right = one_sided_decomposition(H, pair_tol);

    // Left vectors: eigenvectors of H^dagger, associated with the conjugated
    // eigenvalues. For complex-symmetric H they are the conjugates of the
    // right vectors; otherwise the adjoint problem is solved independently and
    // matched greedily by eigenvalue proximity (ties by overlap magnitude).
    std::vector<cvector> left(n);
    if (use_conjugate) {
        for (std::size_t i = 0; i < n; ++i) {
            cvector w(n);
            for (std::size_t r = 0; r < n; ++r) w[r] = std::conj(right.vectors[i][r]);
            left[i] = std::move(w);
        }
    } else {
        OneSided adj = one_sided_decomposition(H.adjoint(), pair_tol);
        std::vector<char> used(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = n, second = n;
            double bd = std::numeric_limits<double>::infinity(), sd = bd;
            for (std::size_t j = 0; j < n; ++j) {
                if (used[j]) continue;
                const double dist = std::abs(std::conj(adj.values[j]) - right.values[i]);
                if (dist < bd) {
                    second = best; sd = bd;
                    best = j; bd = dist;
                } else if (dist < sd) {
                    second = j; sd = dist;
                }
            }
            if (best == n || bd > pair_tol) {
                throw DefectivePairing("eig: no adjoint eigenvalue within pairing tolerance");
            }
            if (second < n && sd - bd <= 1e-12 * scale) {
                // Tie: keep the candidate with the larger overlap.
                const double o_best = std::abs(inner(adj.vectors[best], right.vectors[i]));
                const double o_second = std::abs(inner(adj.vectors[second], right.vectors[i]));
                if (o_second > o_best) best = second;
            }
            used[best] = 1;
            left[i] = adj.vectors[best];
        }
    }

    // Biorthonormalization. Within each eigenvalue cluster the raw overlap
    // matrix S = W^dagger V is inverted so that the stored pairs satisfy
    // <w_i|v_j> = delta_ij; across clusters the overlaps already vanish to
    // rounding. A collapsed overlap (|S_ii| ~ 0 before polishing, or a
    // singular S) means coalesced eigenvectors and is reported, not patched.
    std::size_t c_begin = 0;
    while (c_begin < n) {
        std::size_t c_end = c_begin + 1;
        while (c_end < n &&
               std::abs(right.values[c_end] - right.values[c_end - 1]) <= pair_tol) {
            ++c_end;
        }
        const std::size_t m = c_end - c_begin;
        ComplexMatrix S(m, m);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c) {
                S(r, c) = inner(left[c_begin + r], right.vectors[c_begin + c]);
            }
        }
        for (std::size_t r = 0; r < m; ++r) {
            if (std::abs(S(r, r)) < 1e-8) {
                throw DefectivePairing("eig: left/right overlap below 1e-8 (defective pair)");
            }
        }
        SmallLU f = factor_small(S);
        if (f.singular_below(1e-8)) {
            throw DefectivePairing("eig: cluster overlap matrix numerically singular");
        }
        // W <- W (S^{-1})^dagger, column by column.
        ComplexMatrix Sinv(m, m);
        for (std::size_t c = 0; c < m; ++c) {
            cvector e(m, cdouble(0.0, 0.0));
            e[c] = 1.0;
            Sinv.set_column(c, solve_small(f, std::move(e)));
        }
        std::vector<cvector> polished(m);
        for (std::size_t r = 0; r < m; ++r) {
            cvector w(n, cdouble(0.0, 0.0));
            for (std::size_t k = 0; k < m; ++k) {
                const cdouble coeff = std::conj(Sinv(r, k));
                const cvector& wk = left[c_begin + k];
                for (std::size_t s = 0; s < n; ++s) w[s] += coeff * wk[s];
            }
            polished[r] = std::move(w);
        }
        for (std::size_t r = 0; r < m; ++r) left[c_begin + r] = std::move(polished[r]);
        c_begin = c_end;
    }

    EigenDecomposition dec;
    dec.eigenvalues = std::move(right.values);
    dec.right_vectors = ComplexMatrix(n, n);
    dec.left_vectors = ComplexMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        dec.right_vectors.set_column(i, right.vectors[i]);
        dec.left_vectors.set_column(i, left[i]);
    }

    const ComplexMatrix HV = H * dec.right_vectors;
    const ComplexMatrix HW = H.adjoint() * dec.left_vectors;
    double rmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r_right = 0.0, r_left = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            r_right += std::norm(HV(s, i) - dec.eigenvalues[i] * dec.right_vectors(s, i));
            r_left += std::norm(HW(s, i) - std::conj(dec.eigenvalues[i]) * dec.left_vectors(s, i));
        }
        rmax = std::max(rmax, std::sqrt(r_right));
        rmax = std::max(rmax, std::sqrt(r_left));
    }
    dec.residual_max = rmax;
    return dec;
}

}  // namespace sshc::linalg
