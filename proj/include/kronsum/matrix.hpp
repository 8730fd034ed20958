#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace kronsum {

using Complex = std::complex<double>;

/// Thrown when operand shapes do not conform (including non-square inputs).
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a matrix required to be invertible is singular.
struct SingularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an iterative kernel fails to converge, e.g. a principal
/// square root hitting the branch cut on the negative real axis.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense complex matrix with row-major storage.
///
/// Immutable by convention: operations return fresh values. Entries are
/// expected to be finite; constructors taking caller data validate this.
class Matrix {
public:
    Matrix() = default;   // 0x0 placeholder; any arithmetic on it throws
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
    Matrix(std::initializer_list<std::initializer_list<Complex>> init);

    static Matrix identity(std::size_t n);
    /// Unit matrix E_ij (zero-based indices).
    static Matrix unit(std::size_t n, std::size_t i, std::size_t j);
    static Matrix diagonal(const std::vector<Complex>& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_ && rows_ > 0; }
    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& data() const { return data_; }

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(Complex scalar);

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex scalar, Matrix a);
Matrix operator*(Matrix a, Complex scalar);

Matrix transpose(const Matrix& a);
Matrix conjugate(const Matrix& a);
Matrix adjoint(const Matrix& a);

Complex trace(const Matrix& a);
Matrix commutator(const Matrix& a, const Matrix& b);       // AB - BA
Matrix anticommutator(const Matrix& a, const Matrix& b);   // AB + BA

double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
double one_norm(const Matrix& a);   // max column sum
double frobenius_norm(const Matrix& a);
bool is_finite(const Matrix& a);

/// Entrywise comparison in the max norm.
bool approx_equal(const Matrix& a, const Matrix& b, double tol);

}  // namespace kronsum
