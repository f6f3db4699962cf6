#pragma once
// Dense column-major complex matrix plus the handful of vector helpers the
// rest of the library needs. Deliberately small: this is storage and
// arithmetic, not a linear-algebra framework.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace sshc {

using cdouble = std::complex<double>;
using cvector = std::vector<cdouble>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);  // zero-filled

    // Row-wise brace construction, e.g. {{a, b}, {c, d}}. Throws
    // std::invalid_argument on ragged rows, empty input, or non-finite entries.
    ComplexMatrix(std::initializer_list<std::initializer_list<cdouble>> rows);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    cdouble& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    cdouble* data() noexcept { return data_.data(); }
    const cdouble* data() const noexcept { return data_.data(); }

    double frobenius_norm() const;
    cdouble trace() const;
    ComplexMatrix transpose() const;
    ComplexMatrix adjoint() const;

    bool all_finite() const noexcept;
    // Throws std::invalid_argument mentioning `context` if any entry is NaN/Inf.
    void require_finite(const char* context) const;

    cvector column(std::size_t j) const;
    void set_column(std::size_t j, const cvector& v);

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend cvector operator*(const ComplexMatrix& a, const cvector& x);
    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(cdouble s, const ComplexMatrix& a);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> data_;  // column-major
};

// Vector helpers (2-norm, dot products, axpy-style updates).
double norm2(const cvector& v);
// Sum of conj(a[i]) * b[i].
cdouble inner(const cvector& a, const cvector& b);
// Sum of a[i] * b[i] (no conjugation; the bilinear form used for
// complex-symmetric matrices).
cdouble bilinear(const cvector& a, const cvector& b);
void scale(cvector& v, cdouble s);
bool max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

}  // namespace sshc
