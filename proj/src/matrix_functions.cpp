#include "kronsum/matrix_functions.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace kronsum {

namespace {

void require_square(const Matrix& a, const char* op) {
    if (!a.is_square()) {
        throw ShapeError(std::string(op) + " requires a square matrix");
    }
}

}  // namespace

Complex determinant(const Matrix& a) {
    require_square(a, "determinant");
    const std::size_t n = a.rows();
    Matrix u = a;
    Complex det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(u(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double mag = std::abs(u(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0) {
            return 0.0;
        }
        if (pivot != col) {
            for (std::size_t j = col; j < n; ++j) {
                std::swap(u(pivot, j), u(col, j));
            }
            det = -det;
        }
        det *= u(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex factor = u(r, col) / u(col, col);
            if (factor == Complex(0.0)) {
                continue;
            }
            for (std::size_t j = col; j < n; ++j) {
                u(r, j) -= factor * u(col, j);
            }
        }
    }
    return det;
}

Matrix inverse(const Matrix& a) {
    require_square(a, "inverse");
    const std::size_t n = a.rows();
    Matrix work = a;
    Matrix out = Matrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(work(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double mag = std::abs(work(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0) {
            throw SingularError("inverse of a singular matrix");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(pivot, j), work(col, j));
                std::swap(out(pivot, j), out(col, j));
            }
        }
        const Complex inv_pivot = Complex(1.0) / work(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            work(col, j) *= inv_pivot;
            out(col, j) *= inv_pivot;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            const Complex factor = work(r, col);
            if (factor == Complex(0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                work(r, j) -= factor * work(col, j);
                out(r, j) -= factor * out(col, j);
            }
        }
    }
    return out;
}

Matrix expm(const Matrix& a) {
    require_square(a, "expm");
    const std::size_t n = a.rows();

    // Scale so the Taylor series converges fast, then square back.
    int squarings = 0;
    double norm = one_norm(a);
    while (norm > 0.25 && squarings < 60) {
        norm *= 0.5;
        ++squarings;
    }
    Matrix x = std::ldexp(1.0, -squarings) * a;

    Matrix sum = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (int k = 1; k <= 80; ++k) {
        term = (Complex(1.0 / k)) * (term * x);
        sum += term;
        if (max_abs(term) <= 1e-17 * std::max(1.0, max_abs(sum))) {
            break;
        }
    }
    for (int s = 0; s < squarings; ++s) {
        sum = sum * sum;
    }
    return sum;
}

namespace {

/// Principal square root via the Denman-Beavers iteration.
Matrix sqrtm_principal(const Matrix& a) {
    const std::size_t n = a.rows();
    Matrix y = a;
    Matrix z = Matrix::identity(n);
    for (int iter = 0; iter < 60; ++iter) {
        Matrix y_inv;
        Matrix z_inv;
        try {
            y_inv = inverse(y);
            z_inv = inverse(z);
        } catch (const SingularError&) {
            throw ConvergenceError("matrix square root iteration hit a singular iterate");
        }
        Matrix y_next = Complex(0.5) * (y + z_inv);
        Matrix z_next = Complex(0.5) * (z + y_inv);
        const double step = max_abs_diff(y_next, y);
        y = std::move(y_next);
        z = std::move(z_next);
        if (!is_finite(y) || !is_finite(z)) {
            throw ConvergenceError("matrix square root iteration diverged");
        }
        if (step <= 1e-15 * std::max(1.0, max_abs(y))) {
            return y;
        }
    }
    throw ConvergenceError("matrix square root iteration did not converge");
}

}  // namespace

Matrix logm_principal(const Matrix& a) {
    require_square(a, "logm");
    const std::size_t n = a.rows();
    if (determinant(a) == Complex(0.0)) {
        throw SingularError("logarithm of a singular matrix");
    }

    Matrix x = a;
    const Matrix id = Matrix::identity(n);
    int roots = 0;
    while (one_norm(x - id) > 0.25) {
        if (roots >= 50) {
            throw ConvergenceError("logarithm reduction did not reach the identity");
        }
        x = sqrtm_principal(x);
        ++roots;
    }

    // log(I + E) with ||E|| small, alternating series.
    const Matrix e = x - id;
    Matrix sum(n, n);
    Matrix power = id;
    for (int k = 1; k <= 80; ++k) {
        power = power * e;
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        Matrix term = Complex(sign / k) * power;
        sum += term;
        if (max_abs(term) <= 1e-17 * std::max(1.0, max_abs(sum))) {
            break;
        }
    }
    return std::ldexp(1.0, roots) * sum;
}

std::size_t numeric_rank(const Matrix& a, double rel_tol) {
    Matrix work = a;
    const double scale = std::max(1.0, max_abs(a));
    const double threshold = rel_tol * scale;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::size_t rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pivot = row;
        double best = std::abs(work(row, col));
        for (std::size_t r = row + 1; r < rows; ++r) {
            const double mag = std::abs(work(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best <= threshold) {
            continue;
        }
        if (pivot != row) {
            for (std::size_t j = 0; j < cols; ++j) {
                std::swap(work(pivot, j), work(row, j));
            }
        }
        for (std::size_t r = row + 1; r < rows; ++r) {
            const Complex factor = work(r, col) / work(row, col);
            if (factor == Complex(0.0)) {
                continue;
            }
            for (std::size_t j = col; j < cols; ++j) {
                work(r, j) -= factor * work(row, j);
            }
        }
        ++rank;
        ++row;
    }
    return rank;
}

}  // namespace kronsum
