#include "supercoh/linalg.hpp"

#include "supercoh/error.hpp"

namespace supercoh {

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const
{
    if (cols_ != o.rows_)
        throw Error(ErrorKind::InvalidArgument, "matrix shapes do not match");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& x = (*this)(i, k);
            if (x.isZero())
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r(i, j) += x * o(k, j);
        }
    return r;
}

std::vector<std::size_t> Matrix::rref(std::vector<std::vector<Scalar>>* rhs)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t piv = row;
        while (piv < rows_ && (*this)(piv, col).isZero())
            ++piv;
        if (piv == rows_)
            continue;
        if (piv != row) {
            for (std::size_t k = 0; k < cols_; ++k)
                std::swap((*this)(piv, k), (*this)(row, k));
            if (rhs)
                std::swap((*rhs)[piv], (*rhs)[row]);
        }
        Scalar inv = (*this)(row, col).inverse();
        for (std::size_t k = col; k < cols_; ++k)
            (*this)(row, k) *= inv;
        if (rhs)
            for (auto& x : (*rhs)[row])
                x *= inv;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == row || (*this)(r, col).isZero())
                continue;
            Scalar f = (*this)(r, col);
            for (std::size_t k = col; k < cols_; ++k)
                if (!(*this)(row, k).isZero())
                    (*this)(r, k) -= f * (*this)(row, k);
            if (rhs)
                for (std::size_t k = 0; k < (*rhs)[r].size(); ++k)
                    (*rhs)[r][k] -= f * (*rhs)[row][k];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t Matrix::rank() const
{
    Matrix m = *this;
    return m.rref().size();
}

std::vector<std::vector<Scalar>> Matrix::nullspace() const
{
    Matrix m = *this;
    auto pivots = m.rref();
    std::vector<bool> isPivot(cols_, false);
    for (auto p : pivots)
        isPivot[p] = true;
    std::vector<std::vector<Scalar>> out;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (isPivot[free])
            continue;
        std::vector<Scalar> x(cols_);
        x[free] = Scalar(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            x[pivots[r]] = -m(r, free);
        out.push_back(std::move(x));
    }
    return out;
}

std::optional<std::vector<Scalar>> Matrix::solve(const std::vector<Scalar>& b) const
{
    if (b.size() != rows_)
        throw Error(ErrorKind::InvalidArgument, "right-hand side has wrong length");
    Matrix m = *this;
    std::vector<std::vector<Scalar>> rhs(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        rhs[r] = {b[r]};
    auto pivots = m.rref(&rhs);
    for (std::size_t r = pivots.size(); r < rows_; ++r)
        if (!rhs[r][0].isZero())
            return std::nullopt;
    std::vector<Scalar> x(cols_);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = rhs[r][0];
    return x;
}

}  // namespace supercoh
