#pragma once

#include "oracles.hpp"

#include "lipbox/lp.hpp"
#include "lipbox/operators.hpp"
#include "lipbox/spaces.hpp"

namespace fixtures {

using lipbox::FiniteMetricSpace;
using lipbox::Rational;
using lipbox::Vec;

// {0, a, b} on a line at positions 0, 1, 2.
inline FiniteMetricSpace x3() { return lipbox::validate_metric({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {"0", "a", "b"}); }

// {0, a, b} with a, b on opposite sides of 0.
inline FiniteMetricSpace x3_prime() {
    return lipbox::validate_metric({{0, 1, 1}, {1, 0, 2}, {1, 2, 0}}, {"0", "a", "b"});
}

inline FiniteMetricSpace two_point() { return lipbox::validate_metric({{0, 1}, {1, 0}}, {"0", "a"}); }

// Shortest-path closure of a random symmetric table with entries in [1, 6].
inline FiniteMetricSpace random_metric(oracle::Rng& rng, std::size_t n) {
    std::vector<Vec> d(n, Vec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = rng.rational(1, 6, 2);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return lipbox::validate_metric(d);
}

inline lipbox::Matrix random_matrix(oracle::Rng& rng, std::size_t rows, std::size_t cols, long range = 3,
                                    long den = 2) {
    lipbox::Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.rational(-range, range, den);
    return m;
}

inline lipbox::LipLinearOperator random_operator(oracle::Rng& rng, const FiniteMetricSpace& x,
                                                 const lipbox::PolyhedralNorm& e, const lipbox::PolyhedralNorm& f,
                                                 long range = 3, long den = 2) {
    std::vector<lipbox::Matrix> table;
    for (std::size_t i = 1; i < x.size(); ++i) table.push_back(random_matrix(rng, f.dimension(), e.dimension(), range, den));
    return lipbox::LipLinearOperator(x, e, f, std::move(table));
}

inline lipbox::FreeTensor random_tensor(oracle::Rng& rng, std::size_t points, std::size_t dim) {
    lipbox::FreeTensor u;
    for (std::size_t i = 0; i < points; ++i) u.rows.push_back(rng.vec(dim, -3, 3, 3));
    return u;
}

// Primal side of pi: min sum d(x,y) lambda over representations
// u = sum lambda_(x,y,v) delta_(x,y) (x) v, v a primal vertex of B_E.
inline Rational projective_primal(const lipbox::FreeTensor& u, const FiniteMetricSpace& x,
                                  const lipbox::PolyhedralNorm& e) {
    using namespace lipbox;
    const std::size_t k = e.dimension();
    const std::size_t n = x.free_dimension();
    std::vector<Vec> columns;
    Vec cost;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (i == j) continue;
            for (const auto& v : e.primal_generators()) {
                Vec col = zeros(n * k);
                for (std::size_t c = 0; c < k; ++c) {
                    if (i) col[(i - 1) * k + c] += v[c];
                    if (j) col[(j - 1) * k + c] -= v[c];
                }
                columns.push_back(std::move(col));
                cost.push_back(x.distance(i, j));
            }
        }
    LinearProgram lp(columns.size(), Sense::Minimize);
    lp.objective = cost;
    Vec flat = u.flatten();
    for (std::size_t r = 0; r < n * k; ++r) {
        Vec row(columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) row[c] = columns[c][r];
        lp.add(std::move(row), Relation::Equal, flat[r]);
    }
    return solve_lp(lp).value;
}

}  // namespace fixtures
