#include "compcon/matrix.hpp"

#include <string>

#include "compcon/error.hpp"

namespace compcon {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw ShapeMismatch("matrix " + std::to_string(rows_) + "x" + std::to_string(cols_) + " given " +
                            std::to_string(data_.size()) + " entries");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeMismatch("cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t r1 = 0; r1 < a.rows(); ++r1) {
        for (std::size_t c1 = 0; c1 < a.cols(); ++c1) {
            const Rational& x = a(r1, c1);
            if (x.is_zero()) continue;
            for (std::size_t r2 = 0; r2 < b.rows(); ++r2) {
                for (std::size_t c2 = 0; c2 < b.cols(); ++c2) {
                    out(r1 * b.rows() + r2, c1 * b.cols() + c2) = x * b(r2, c2);
                }
            }
        }
    }
    return out;
}

}  // namespace compcon
