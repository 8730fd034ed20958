#include "kronsum/matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace kronsum {

namespace {

void require_nonzero_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw ShapeError("matrix dimensions must be positive, got " + std::to_string(rows) +
                         "x" + std::to_string(cols));
    }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (!a.same_shape(b)) {
        throw ShapeError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    require_nonzero_dims(rows, cols);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    require_nonzero_dims(rows, cols);
    if (data_.size() != rows * cols) {
        throw ShapeError("matrix data length " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!is_finite(*this)) {
        throw ShapeError("matrix data contains non-finite entries");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    require_nonzero_dims(rows_, cols_);
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_) {
            throw ShapeError("ragged initializer list");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    if (!is_finite(*this)) {
        throw ShapeError("matrix data contains non-finite entries");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = 1.0;
    }
    return out;
}

Matrix Matrix::unit(std::size_t n, std::size_t i, std::size_t j) {
    if (i >= n || j >= n) {
        throw ShapeError("unit matrix index out of range");
    }
    Matrix out(n, n);
    out(i, j) = 1.0;
    return out;
}

Matrix Matrix::diagonal(const std::vector<Complex>& entries) {
    Matrix out(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        out(i, i) = entries[i];
    }
    return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    require_same_shape(*this, other, "add");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += other.data_[k];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    require_same_shape(*this, other, "subtract");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

Matrix& Matrix::operator*=(Complex scalar) {
    for (auto& v : data_) {
        v *= scalar;
    }
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) {
    a += b;
    return a;
}

Matrix operator-(Matrix a, const Matrix& b) {
    a -= b;
    return a;
}

Matrix operator-(Matrix a) {
    a *= Complex(-1.0);
    return a;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("multiply: inner dimensions " + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Matrix operator*(Complex scalar, Matrix a) {
    a *= scalar;
    return a;
}

Matrix operator*(Matrix a, Complex scalar) {
    a *= scalar;
    return a;
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = a(i, j);
        }
    }
    return out;
}

Matrix conjugate(const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = std::conj(a(i, j));
        }
    }
    return out;
}

Matrix adjoint(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

Complex trace(const Matrix& a) {
    if (!a.is_square()) {
        throw ShapeError("trace requires a square matrix");
    }
    Complex sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        sum += a(i, i);
    }
    return sum;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    if (!a.is_square() || !a.same_shape(b)) {
        throw ShapeError("commutator requires square matrices of equal size");
    }
    return a * b - b * a;
}

Matrix anticommutator(const Matrix& a, const Matrix& b) {
    if (!a.is_square() || !a.same_shape(b)) {
        throw ShapeError("anticommutator requires square matrices of equal size");
    }
    return a * b + b * a;
}

double max_abs(const Matrix& a) {
    double best = 0.0;
    for (const auto& v : a.data()) {
        best = std::max(best, std::abs(v));
    }
    return best;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double best = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        best = std::max(best, std::abs(a.data()[k] - b.data()[k]));
    }
    return best;
}

double one_norm(const Matrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            sum += std::abs(a(i, j));
        }
        best = std::max(best, sum);
    }
    return best;
}

double frobenius_norm(const Matrix& a) {
    double sum = 0.0;
    for (const auto& v : a.data()) {
        sum += std::norm(v);
    }
    return std::sqrt(sum);
}

bool is_finite(const Matrix& a) {
    for (const auto& v : a.data()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            return false;
        }
    }
    return true;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
    return a.same_shape(b) && max_abs_diff(a, b) <= tol;
}

}  // namespace kronsum
