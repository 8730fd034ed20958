#include "kronsum/kron.hpp"

#include <string>

namespace kronsum {

namespace {

void require_block_shape(const Matrix& x, const BlockDims& dims, const char* op) {
    const std::size_t mn = dims.product();
    if (x.rows() != mn || x.cols() != mn) {
        throw ShapeError(std::string(op) + ": expected a " + std::to_string(mn) + "x" +
                         std::to_string(mn) + " matrix, got " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()));
    }
}

}  // namespace

Matrix kron_product(const Matrix& a, const Matrix& b) {
    if (a.rows() == 0 || b.rows() == 0) {
        throw ShapeError("kron_product of an empty matrix");
    }
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex(0.0)) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

Matrix kron_sum(const Matrix& a, const Matrix& b) {
    if (!a.is_square() || !b.is_square()) {
        throw ShapeError("kron_sum requires square matrices");
    }
    const std::size_t m = a.rows();
    const std::size_t n = b.rows();
    Matrix out(m * n, m * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) {
                for (std::size_t k = 0; k < n; ++k) {
                    for (std::size_t l = 0; l < n; ++l) {
                        out(i * n + k, j * n + l) = b(k, l);
                    }
                }
                for (std::size_t k = 0; k < n; ++k) {
                    out(i * n + k, j * n + k) += a(i, j);
                }
            } else if (a(i, j) != Complex(0.0)) {
                for (std::size_t k = 0; k < n; ++k) {
                    out(i * n + k, j * n + k) = a(i, j);
                }
            }
        }
    }
    return out;
}

Matrix vec(const Matrix& x) {
    if (x.rows() == 0) {
        throw ShapeError("vec of an empty matrix");
    }
    return Matrix(x.rows() * x.cols(), 1, x.data());
}

Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols) {
    if (v.cols() != 1 || v.rows() != rows * cols) {
        throw ShapeError("unvec: expected a " + std::to_string(rows * cols) +
                         "-entry column vector");
    }
    return Matrix(rows, cols, v.data());
}

Matrix perfect_shuffle(std::size_t m, std::size_t n) {
    const BlockDims dims(m, n);
    const std::size_t mn = dims.product();
    Matrix out(mn, mn);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(i * n + j, j * m + i) = 1.0;
        }
    }
    return out;
}

Matrix rearrange(const Matrix& x, std::size_t d) {
    if (d == 0) {
        throw ShapeError("rearrange needs a positive block size");
    }
    require_block_shape(x, BlockDims(d, d), "rearrange");
    Matrix out(d * d, d * d);
    for (std::size_t p = 0; p < d; ++p) {
        for (std::size_t q = 0; q < d; ++q) {
            for (std::size_t r = 0; r < d; ++r) {
                for (std::size_t s = 0; s < d; ++s) {
                    out(p * d + r, q * d + s) = x(p * d + q, r * d + s);
                }
            }
        }
    }
    return out;
}

Matrix partial_trace_1(const Matrix& x, const BlockDims& dims) {
    require_block_shape(x, dims, "partial_trace_1");
    Matrix out(dims.n, dims.n);
    for (std::size_t j = 0; j < dims.m; ++j) {
        for (std::size_t k = 0; k < dims.n; ++k) {
            for (std::size_t l = 0; l < dims.n; ++l) {
                out(k, l) += x(j * dims.n + k, j * dims.n + l);
            }
        }
    }
    return out;
}

Matrix partial_trace_2(const Matrix& x, const BlockDims& dims) {
    require_block_shape(x, dims, "partial_trace_2");
    Matrix out(dims.m, dims.m);
    for (std::size_t i = 0; i < dims.m; ++i) {
        for (std::size_t j = 0; j < dims.m; ++j) {
            for (std::size_t k = 0; k < dims.n; ++k) {
                out(i, j) += x(i * dims.n + k, j * dims.n + k);
            }
        }
    }
    return out;
}

}  // namespace kronsum
