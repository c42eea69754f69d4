#pragma once

// Dense complex linear algebra for small Hilbert spaces (dimension <= 3^9).
//
// Kronecker convention: kron(high, low) puts `high` on the more significant
// index, so kron(U_n, ..., U_1) matches ket labels written |x_n ... x_1>.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qgames {

using Complex = std::complex<double>;

inline constexpr double kAcceptTol = 1e-9;
inline constexpr double kAlgebraTol = 1e-12;

class ComplexVector {
public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t dim);
    explicit ComplexVector(std::vector<Complex> entries);
    ComplexVector(std::initializer_list<Complex> entries);

    std::size_t size() const { return data_.size(); }
    Complex& operator[](std::size_t i) { return data_[i]; }
    const Complex& operator[](std::size_t i) const { return data_[i]; }

    std::span<const Complex> entries() const { return data_; }
    std::span<Complex> entries() { return data_; }

    double norm_squared() const;
    double norm() const;

    friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

private:
    std::vector<Complex> data_;
};

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major);
    // Row-wise literal: {{a, b}, {c, d}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    static ComplexMatrix diagonal(std::span<const double> diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const { return data_; }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& v);
ComplexMatrix kron(const ComplexMatrix& high, const ComplexMatrix& low);
ComplexVector kron(const ComplexVector& high, const ComplexVector& low);
ComplexMatrix dagger(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);
ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v);
Complex inner(const ComplexVector& u, const ComplexVector& v);  // <u|v>, conjugates u
Complex determinant(const ComplexMatrix& a);

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
ComplexVector operator*(Complex s, const ComplexVector& v);

// max |a_ij - b_ij|; throws InputError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexVector& a, const ComplexVector& b);

// ||U^dagger U - I||_max; infinity for non-square input.
double unitarity_residual(const ComplexMatrix& u);
bool is_unitary(const ComplexMatrix& u, double tol = kAcceptTol);
bool is_hermitian(const ComplexMatrix& a, double tol = kAlgebraTol);

}  // namespace qgames
