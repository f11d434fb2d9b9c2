#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lipbox/rational.hpp"

namespace lipbox {

// Dense row-major rational matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    VecView row(std::size_t i) const { return VecView(data_).subspan(i * cols_, cols_); }
    Vec column(std::size_t j) const;

    Vec apply(VecView x) const;
    // x^T M
    Vec apply_transpose(VecView y) const;
    Matrix transpose() const;
    bool is_zero() const;

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Rational& s, const Matrix& a);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

    const std::vector<Rational>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

// Outer product a b^T.
Matrix outer(VecView a, VecView b);

std::size_t rank(const std::vector<Vec>& rows, std::size_t cols);

// Basis of {x : r.x = 0 for every row r}.
std::vector<Vec> kernel(const std::vector<Vec>& rows, std::size_t cols);

// Some x with A x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Matrix& a, VecView b);

// Indices of a maximal linearly independent subset, greedily in order.
std::vector<std::size_t> independent_rows(const std::vector<Vec>& rows, std::size_t cols);

}  // namespace lipbox
