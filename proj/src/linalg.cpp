#include "qgames/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "qgames/errors.hpp"

namespace qgames {

ComplexVector::ComplexVector(std::size_t dim) : data_(dim) {
    if (dim == 0) throw InputError("vector dimension must be positive");
}

ComplexVector::ComplexVector(std::vector<Complex> entries) : data_(std::move(entries)) {
    if (data_.empty()) throw InputError("vector dimension must be positive");
}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries)
    : ComplexVector(std::vector<Complex>(entries)) {}

double ComplexVector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : data_) s += std::norm(a);
    return s;
}

double ComplexVector::norm() const { return std::sqrt(norm_squared()); }

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw InputError("matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (rows == 0 || cols == 0) throw InputError("matrix dimensions must be positive");
    if (data_.size() != rows * cols) {
        throw InputError("entry count " + std::to_string(data_.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    if (rows_ == 0 || cols_ == 0) throw InputError("matrix dimensions must be positive");
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw InputError("ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw InputError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& v) {
    if (a.cols() != v.size()) throw InputError("matvec: dimension mismatch");
    ComplexVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s{};
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& high, const ComplexMatrix& low) {
    ComplexMatrix out(high.rows() * low.rows(), high.cols() * low.cols());
    for (std::size_t hr = 0; hr < high.rows(); ++hr)
        for (std::size_t hc = 0; hc < high.cols(); ++hc) {
            const Complex h = high(hr, hc);
            for (std::size_t lr = 0; lr < low.rows(); ++lr)
                for (std::size_t lc = 0; lc < low.cols(); ++lc)
                    out(hr * low.rows() + lr, hc * low.cols() + lc) = h * low(lr, lc);
        }
    return out;
}

ComplexVector kron(const ComplexVector& high, const ComplexVector& low) {
    ComplexVector out(high.size() * low.size());
    for (std::size_t h = 0; h < high.size(); ++h)
        for (std::size_t l = 0; l < low.size(); ++l) out[h * low.size() + l] = high[h] * low[l];
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
    return out;
}

Complex trace(const ComplexMatrix& a) {
    if (!a.is_square()) throw InputError("trace of non-square matrix");
    Complex s{};
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
    return s;
}

ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v) {
    ComplexMatrix out(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * std::conj(v[j]);
    return out;
}

Complex inner(const ComplexVector& u, const ComplexVector& v) {
    if (u.size() != v.size()) throw InputError("inner: dimension mismatch");
    Complex s{};
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

Complex determinant(const ComplexMatrix& a) {
    if (!a.is_square()) throw InputError("determinant of non-square matrix");
    const std::size_t n = a.rows();
    // Gaussian elimination with partial pivoting.
    std::vector<Complex> m(a.entries().begin(), a.entries().end());
    Complex det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) pivot = r;
        if (m[pivot * n + col] == Complex{}) return 0.0;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m[pivot * n + c], m[col * n + c]);
            det = -det;
        }
        const Complex p = m[col * n + col];
        det *= p;
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex factor = m[r * n + col] / p;
            for (std::size_t c = col; c < n; ++c) m[r * n + c] -= factor * m[col * n + c];
        }
    }
    return det;
}

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InputError(std::string(op) + ": shape mismatch");
}

}  // namespace

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "add");
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) c(r, k) = a(r, k) + b(r, k);
    return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "subtract");
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) c(r, k) = a(r, k) - b(r, k);
    return c;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) c(r, k) = s * a(r, k);
    return c;
}

ComplexVector operator*(Complex s, const ComplexVector& v) {
    ComplexVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw InputError("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double unitarity_residual(const ComplexMatrix& u) {
    if (!u.is_square()) return std::numeric_limits<double>::infinity();
    return max_abs_diff(matmul(dagger(u), u), ComplexMatrix::identity(u.rows()));
}

bool is_unitary(const ComplexMatrix& u, double tol) { return unitarity_residual(u) < tol; }

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (!a.is_square()) return false;
    return max_abs_diff(a, dagger(a)) < tol;
}

}  // namespace qgames
