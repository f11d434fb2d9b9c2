#include "lipbox/linalg.hpp"

#include <utility>

#include "lipbox/error.hpp"

namespace lipbox {

namespace {

struct Echelon {
    std::vector<Vec> rows;                 // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivot_cols;   // one per row
    std::vector<std::size_t> source_rows;  // original index of the row that produced each pivot
};

// Reduced row echelon form; rows are processed in order so source_rows is the
// greedy independent subset.
Echelon reduce(std::vector<Vec> rows, std::size_t cols) {
    Echelon e;
    for (std::size_t idx = 0; idx < rows.size(); ++idx) {
        Vec r = std::move(rows[idx]);
        for (std::size_t k = 0; k < e.rows.size(); ++k) {
            const Rational f = r[e.pivot_cols[k]];
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (e.rows[k][j] != 0) r[j] -= f * e.rows[k][j];
            }
        }
        std::size_t p = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (r[j] != 0) {
                p = j;
                break;
            }
        }
        if (p == cols) continue;
        const Rational inv = 1 / r[p];
        for (auto& x : r) x *= inv;
        for (auto& other : e.rows) {
            const Rational f = other[p];
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (r[j] != 0) other[j] -= f * r[j];
            }
        }
        e.rows.push_back(std::move(r));
        e.pivot_cols.push_back(p);
        e.source_rows.push_back(idx);
    }
    return e;
}

}  // namespace

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionMismatch("matrix rows of unequal width");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Vec Matrix::column(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

Vec Matrix::apply(VecView x) const {
    if (x.size() != cols_) throw DimensionMismatch("matrix-vector product: width mismatch");
    Vec y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) y[i] = dot(row(i), x);
    return y;
}

Vec Matrix::apply_transpose(VecView y) const {
    if (y.size() != rows_) throw DimensionMismatch("vector-matrix product: height mismatch");
    Vec x(cols_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
        if (y[i] == 0) continue;
        for (std::size_t j = 0; j < cols_; ++j) {
            if ((*this)(i, j) != 0) x[j] += y[i] * (*this)(i, j);
        }
    }
    return x;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_zero() const { return lipbox::is_zero(data_); }

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum: shape mismatch");
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference: shape mismatch");
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& f = a(i, k);
            if (f == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += f * b(k, j);
        }
    return c;
}

Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x *= s;
    return c;
}

Matrix outer(VecView a, VecView b) {
    Matrix m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
    return m;
}

std::size_t rank(const std::vector<Vec>& rows, std::size_t cols) { return reduce(rows, cols).rows.size(); }

std::vector<std::size_t> independent_rows(const std::vector<Vec>& rows, std::size_t cols) {
    return reduce(rows, cols).source_rows;
}

std::vector<Vec> kernel(const std::vector<Vec>& rows, std::size_t cols) {
    Echelon e = reduce(rows, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivot_cols) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vec v = zeros(cols);
        v[free] = 1;
        for (std::size_t k = 0; k < e.rows.size(); ++k) v[e.pivot_cols[k]] = -e.rows[k][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Matrix& a, VecView b) {
    if (b.size() != a.rows()) throw DimensionMismatch("solve: right-hand side length mismatch");
    const std::size_t n = a.cols();
    std::vector<Vec> aug;
    aug.reserve(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Vec r(a.row(i).begin(), a.row(i).end());
        r.push_back(b[i]);
        aug.push_back(std::move(r));
    }
    Echelon e = reduce(std::move(aug), n + 1);
    Vec x = zeros(n);
    for (std::size_t k = 0; k < e.rows.size(); ++k) {
        if (e.pivot_cols[k] == n) return std::nullopt;
        x[e.pivot_cols[k]] = e.rows[k][n];
    }
    return x;
}

}  // namespace lipbox
