#pragma once

#include <optional>
#include <vector>

#include "supercoh/scalar.hpp"

namespace supercoh {

// Dense matrix over the Gaussian rationals, row major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Matrix operator*(const Matrix& o) const;
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    std::size_t rank() const;
    // Basis of {x : A x = 0}.
    std::vector<std::vector<Scalar>> nullspace() const;
    // Some x with A x = b, or nothing.
    std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const;

    static Matrix identity(std::size_t n);

private:
    // Reduced row echelon form in place; returns pivot columns.
    std::vector<std::size_t> rref(std::vector<std::vector<Scalar>>* rhs = nullptr);

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> a_;
};

}  // namespace supercoh
