#include "sshc/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace sshc {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cdouble(0.0, 0.0)) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("ComplexMatrix: dimensions must be at least 1x1");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cdouble>> rows) {
    rows_ = rows.size();
    if (rows_ == 0) throw std::invalid_argument("ComplexMatrix: empty initializer");
    cols_ = rows.begin()->size();
    if (cols_ == 0) throw std::invalid_argument("ComplexMatrix: empty row");
    data_.assign(rows_ * cols_, cdouble(0.0, 0.0));
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != cols_) throw std::invalid_argument("ComplexMatrix: ragged rows");
        std::size_t j = 0;
        for (const cdouble& v : row) (*this)(i, j++) = v;
        ++i;
    }
    require_finite("ComplexMatrix construction");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cdouble& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

cdouble ComplexMatrix::trace() const {
    cdouble t = 0.0;
    std::size_t n = rows_ < cols_ ? rows_ : cols_;
    for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i) m(j, i) = (*this)(i, j);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i) m(j, i) = std::conj((*this)(i, j));
    return m;
}

bool ComplexMatrix::all_finite() const noexcept {
    for (const cdouble& v : data_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

void ComplexMatrix::require_finite(const char* context) const {
    if (!all_finite()) {
        throw std::invalid_argument(std::string(context) + ": non-finite matrix entry");
    }
}

cvector ComplexMatrix::column(std::size_t j) const {
    cvector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void ComplexMatrix::set_column(std::size_t j, const cvector& v) {
    if (v.size() != rows_) throw std::invalid_argument("set_column: size mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matmul: shape mismatch");
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t j = 0; j < b.cols_; ++j) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const cdouble bkj = b(k, j);
            if (bkj == cdouble(0.0, 0.0)) continue;
            const cdouble* acol = a.data_.data() + k * a.rows_;
            cdouble* ccol = c.data_.data() + j * c.rows_;
            for (std::size_t i = 0; i < a.rows_; ++i) ccol[i] += acol[i] * bkj;
        }
    }
    return c;
}

cvector operator*(const ComplexMatrix& a, const cvector& x) {
    if (a.cols_ != x.size()) throw std::invalid_argument("matvec: shape mismatch");
    cvector y(a.rows_, cdouble(0.0, 0.0));
    for (std::size_t j = 0; j < a.cols_; ++j) {
        const cdouble xj = x[j];
        if (xj == cdouble(0.0, 0.0)) continue;
        const cdouble* acol = a.data_.data() + j * a.rows_;
        for (std::size_t i = 0; i < a.rows_; ++i) y[i] += acol[i] * xj;
    }
    return y;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("add: shape mismatch");
    ComplexMatrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("sub: shape mismatch");
    ComplexMatrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
}

ComplexMatrix operator*(cdouble s, const ComplexMatrix& a) {
    ComplexMatrix c = a;
    for (cdouble& v : c.data_) v *= s;
    return c;
}

double norm2(const cvector& v) {
    double s = 0.0;
    for (const cdouble& x : v) s += std::norm(x);
    return std::sqrt(s);
}

cdouble inner(const cvector& a, const cvector& b) {
    cdouble s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

cdouble bilinear(const cvector& a, const cvector& b) {
    cdouble s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void scale(cvector& v, cdouble s) {
    for (cdouble& x : v) x *= s;
}

bool max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (std::abs(a(i, j) - b(i, j)) > tol) return false;
    return true;
}

}  // namespace sshc
