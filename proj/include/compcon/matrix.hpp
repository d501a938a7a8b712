#pragma once

#include <cstddef>
#include <vector>

#include "compcon/rational.hpp"

namespace compcon {

// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> data);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const std::vector<Rational>& data() const noexcept { return data_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix transpose() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

// a * b; throws ShapeMismatch.
Matrix multiply(const Matrix& a, const Matrix& b);
// Standard Kronecker product: (r1, r2) -> r1 * b.rows() + r2.
Matrix kronecker(const Matrix& a, const Matrix& b);

}  // namespace compcon
