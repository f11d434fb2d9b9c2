#include "lipbox/operators.hpp"

#include <algorithm>

#include "lipbox/error.hpp"
#include "lipbox/lp.hpp"

namespace lipbox {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DimensionMismatch(what);
}

// max over x != y of norm(value(x) - value(y)) / d(x, y), base point included.
template <class Value, class Norm>
Rational pairwise_lipschitz(const FiniteMetricSpace& x, Value value, Norm norm) {
    Rational best = 0;
    std::vector<Vec> values;
    for (std::size_t i = 0; i < x.size(); ++i) values.push_back(value(i));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            best = std::max(best, norm(subtract(values[i], values[j])) / x.distance(i, j));
        }
    }
    return best;
}

}  // namespace

// ------------------------------------------------------------------ values

LipschitzMap::LipschitzMap(FiniteMetricSpace x, PolyhedralNorm e, std::vector<Vec> v)
    : domain(std::move(x)), codomain(std::move(e)), values(std::move(v)) {
    require(values.size() == domain.free_dimension(), "Lipschitz map table does not cover the non-base points");
    for (const auto& r : values) require(r.size() == codomain.dimension(), "Lipschitz map value of wrong length");
}

Vec LipschitzMap::at(std::size_t point) const { return point == 0 ? zeros(codomain.dimension()) : values[point - 1]; }

PointMap::PointMap(FiniteMetricSpace x, FiniteMetricSpace x0, std::vector<std::size_t> img)
    : domain(std::move(x)), codomain(std::move(x0)), image(std::move(img)) {
    if (image.size() != domain.size()) throw DimensionMismatch("point map must list an image for every point");
    if (image[0] != 0) throw InvalidInput("point map must send the base point to the base point");
    for (auto p : image) {
        if (p >= codomain.size()) throw InvalidInput("point map image is not a point of the codomain space");
    }
}

PointMap PointMap::identity(const FiniteMetricSpace& x) {
    std::vector<std::size_t> img(x.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = i;
    return PointMap(x, x, std::move(img));
}

LipLinearOperator::LipLinearOperator(FiniteMetricSpace x, PolyhedralNorm e, PolyhedralNorm f, std::vector<Matrix> table)
    : x_(std::move(x)), e_(std::move(e)), f_(std::move(f)), table_(std::move(table)) {
    require(table_.size() == x_.free_dimension(), "operator table does not cover the non-base points");
    for (const auto& m : table_) {
        require(m.rows() == f_.dimension() && m.cols() == e_.dimension(),
                "operator matrix shape does not match dim F x dim E");
    }
}

LipLinearOperator LipLinearOperator::zero(FiniteMetricSpace x, PolyhedralNorm e, PolyhedralNorm f) {
    std::vector<Matrix> table(x.free_dimension(), Matrix(f.dimension(), e.dimension()));
    return LipLinearOperator(std::move(x), std::move(e), std::move(f), std::move(table));
}

Matrix LipLinearOperator::at(std::size_t point) const {
    return point == 0 ? Matrix(f_.dimension(), e_.dimension()) : table_[point - 1];
}

Vec LipLinearOperator::apply(std::size_t point, VecView e) const {
    require(e.size() == e_.dimension(), "vector does not match the domain norm");
    return point == 0 ? zeros(f_.dimension()) : table_[point - 1].apply(e);
}

LipschitzMap LipLinearOperator::slice(VecView e) const {
    std::vector<Vec> values;
    for (std::size_t i = 1; i < x_.size(); ++i) values.push_back(apply(i, e));
    return LipschitzMap(x_, f_, std::move(values));
}

bool operator==(const LipLinearOperator& a, const LipLinearOperator& b) {
    return a.x_ == b.x_ && a.e_ == b.e_ && a.f_ == b.f_ && a.table_ == b.table_;
}

TwoLipschitzTable::TwoLipschitzTable(FiniteMetricSpace xs, FiniteMetricSpace ys, PolyhedralNorm f,
                                     std::vector<std::vector<Vec>> v)
    : x(std::move(xs)), y(std::move(ys)), codomain(std::move(f)), values(std::move(v)) {
    require(values.size() == x.size(), "two-Lipschitz table needs one row per point of X");
    for (std::size_t i = 0; i < values.size(); ++i) {
        require(values[i].size() == y.size(), "two-Lipschitz table needs one column per point of Y");
        for (std::size_t j = 0; j < values[i].size(); ++j) {
            require(values[i][j].size() == codomain.dimension(), "two-Lipschitz entry of wrong length");
            if ((i == 0 || j == 0) && !is_zero(values[i][j])) {
                throw InvalidInput("two-Lipschitz table must vanish when either argument is the base point");
            }
        }
    }
}

FreeTensor FreeTensor::zero(std::size_t points, std::size_t dim) { return {std::vector<Vec>(points, zeros(dim))}; }

FreeTensor FreeTensor::elementary(const FiniteMetricSpace& x, std::size_t p, std::size_t q, VecView e) {
    FreeTensor u = zero(x.free_dimension(), e.size());
    if (p != 0) u.rows[p - 1] = add(u.rows[p - 1], e);
    if (q != 0) u.rows[q - 1] = subtract(u.rows[q - 1], e);
    return u;
}

Vec FreeTensor::flatten() const {
    Vec out;
    for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
}

FreeTensor FreeTensor::unflatten(VecView flat, std::size_t points, std::size_t dim) {
    require(flat.size() == points * dim, "flattened tensor of wrong length");
    FreeTensor u;
    for (std::size_t i = 0; i < points; ++i) u.rows.emplace_back(flat.begin() + i * dim, flat.begin() + (i + 1) * dim);
    return u;
}

FreeTensor operator+(const FreeTensor& a, const FreeTensor& b) {
    require(a.rows.size() == b.rows.size(), "tensor shapes differ");
    FreeTensor u;
    for (std::size_t i = 0; i < a.rows.size(); ++i) u.rows.push_back(add(a.rows[i], b.rows[i]));
    return u;
}

FreeTensor operator*(const Rational& s, const FreeTensor& a) {
    FreeTensor u;
    for (const auto& r : a.rows) u.rows.push_back(scale(r, s));
    return u;
}

// ------------------------------------------------------------------- norms

Rational lip_norm(const LipschitzMap& r) {
    return pairwise_lipschitz(r.domain, [&](std::size_t i) { return r.at(i); },
                              [&](VecView v) { return r.codomain(v); });
}

Rational lip_norm(const PointMap& r) {
    Rational best = 0;
    for (std::size_t i = 0; i < r.domain.size(); ++i) {
        for (std::size_t j = i + 1; j < r.domain.size(); ++j) {
            best = std::max(best, r.codomain.distance(r.image[i], r.image[j]) / r.domain.distance(i, j));
        }
    }
    return best;
}

Rational lipl_norm(const LipLinearOperator& t, const NormFunction& codomain) {
    const auto& x = t.domain();
    const auto& gens = t.domain_norm().primal_generators();
    Rational best = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            Matrix diff = t.at(i) - t.at(j);
            if (diff.is_zero()) continue;
            Rational op = 0;
            for (const auto& v : gens) op = std::max(op, codomain(diff.apply(v)));
            best = std::max(best, op / x.distance(i, j));
        }
    }
    return best;
}

Rational lipl_norm(const LipLinearOperator& t) {
    const auto& f = t.codomain_norm();
    return lipl_norm(t, [&](VecView v) { return f(v); });
}

Rational lip_norm_of_table(const LipLinearOperator& t, const Caps& caps) {
    PolyhedralNorm op = operator_norm_space(t.domain_norm(), t.codomain_norm(), caps);
    return pairwise_lipschitz(t.domain(), [&](std::size_t i) { return t.at(i).data(); },
                              [&](VecView v) { return op(v); });
}

Rational slice_norm(const LipLinearOperator& t) {
    Rational best = 0;
    for (const auto& v : t.domain_norm().primal_generators()) best = std::max(best, lip_norm(t.slice(v)));
    return best;
}

Rational blip_norm(const TwoLipschitzTable& t) {
    Rational best = 0;
    for (std::size_t x = 0; x < t.x.size(); ++x)
        for (std::size_t x2 = x + 1; x2 < t.x.size(); ++x2)
            for (std::size_t y = 0; y < t.y.size(); ++y)
                for (std::size_t y2 = y + 1; y2 < t.y.size(); ++y2) {
                    Vec mixed = add(subtract(t.values[x][y], t.values[x][y2]),
                                    subtract(t.values[x2][y2], t.values[x2][y]));
                    best = std::max(best, t.codomain(mixed) / (t.x.distance(x, x2) * t.y.distance(y, y2)));
                }
    return best;
}

Vec linearize_apply(const LipLinearOperator& t, const FreeTensor& u) {
    require(u.rows.size() == t.domain().free_dimension(), "tensor does not match the operator's domain space");
    Vec out = zeros(t.codomain_norm().dimension());
    for (std::size_t i = 0; i < u.rows.size(); ++i) {
        require(u.rows[i].size() == t.domain_norm().dimension(), "tensor row does not match the domain norm");
        out = add(out, t.table()[i].apply(u.rows[i]));
    }
    return out;
}

Rational linearization_norm(const LipLinearOperator& t) {
    const auto& x = t.domain();
    Rational best = 0;
    for (const auto& m : free_ball_molecules(x)) {
        for (const auto& v : t.domain_norm().primal_generators()) {
            FreeTensor u;
            for (const auto& c : m.coefficients) u.rows.push_back(scale(v, c));
            best = std::max(best, t.codomain_norm()(linearize_apply(t, u)));
        }
    }
    return best;
}

namespace {

// Rows of the scalar LipL unit ball of X x E over tables g (flattened):
// (g(x) - g(y)) . v <= d(x, y) for every pair and primal vertex v of B_E.
Polytope scalar_lipl_ball(const FiniteMetricSpace& x, const PolyhedralNorm& e) {
    const std::size_t k = e.dimension();
    Polytope ball;
    ball.dimension = x.free_dimension() * k;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (i == j) continue;
            for (const auto& v : e.primal_generators()) {
                Vec row = zeros(ball.dimension);
                for (std::size_t c = 0; c < k; ++c) {
                    if (i != 0) row[(i - 1) * k + c] += v[c];
                    if (j != 0) row[(j - 1) * k + c] -= v[c];
                }
                ball.add(std::move(row), x.distance(i, j));
            }
        }
    }
    // Symmetric generators make (i, j) and (j, i) produce the same rows.
    std::vector<std::pair<Vec, Rational>> rows;
    for (std::size_t r = 0; r < ball.rows.size(); ++r) rows.emplace_back(ball.rows[r], ball.rhs[r]);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    Polytope out;
    out.dimension = ball.dimension;
    for (auto& [row, rhs] : rows) out.add(std::move(row), std::move(rhs));
    return out;
}

}  // namespace

Rational projective_norm(const FreeTensor& u, const FiniteMetricSpace& x, const PolyhedralNorm& e) {
    require(u.rows.size() == x.free_dimension(), "tensor does not match the metric space");
    for (const auto& r : u.rows) require(r.size() == e.dimension(), "tensor row does not match the norm");
    Vec flat = u.flatten();
    if (is_zero(flat)) return 0;
    Polytope ball = scalar_lipl_ball(x, e);
    LinearProgram lp(ball.dimension, Sense::Maximize);
    lp.objective = flat;
    for (std::size_t j = 0; j < ball.dimension; ++j) lp.set_free(j);
    for (std::size_t r = 0; r < ball.rows.size(); ++r) lp.add(ball.rows[r], Relation::LessEqual, ball.rhs[r]);
    LpSolution s = solve_lp(lp);
    if (s.status != LpStatus::Optimal) throw std::logic_error("projective norm LP is not bounded and feasible");
    return s.value;
}

Rational injective_norm(const FreeTensor& u, const FiniteMetricSpace& x, const PolyhedralNorm& e) {
    require(u.rows.size() == x.free_dimension(), "tensor does not match the metric space");
    for (const auto& r : u.rows) require(r.size() == e.dimension(), "tensor row does not match the norm");
    Rational best = 0;
    for (const auto& f : cached_ball_vertices(x)) {
        for (const auto& w : e.dual_representatives()) {
            Rational s = 0;
            for (std::size_t i = 0; i < u.rows.size(); ++i) s += f[i] * dot(w, u.rows[i]);
            best = std::max(best, abs(s));
        }
    }
    return best;
}

PolyhedralNorm projective_norm_space(const FiniteMetricSpace& x, const PolyhedralNorm& e, const Caps& caps) {
    Polytope ball = scalar_lipl_ball(x, e);
    std::vector<Vec> w = enumerate_vertices(ball, caps);
    std::vector<Vec> generators;
    for (const auto& m : free_ball_molecules(x)) {
        for (const auto& v : e.primal_generators()) {
            Vec g;
            for (const auto& c : m.coefficients)
                for (const auto& vc : v) g.push_back(c * vc);
            generators.push_back(std::move(g));
        }
    }
    Caps wide = caps;
    wide.dim = std::max(caps.dim, ball.dimension);
    return PolyhedralNorm::with_primal_generators(std::move(w), std::move(generators), wide);
}

Rational pair(const FreeTensor& u, const LipLinearOperator& t) {
    require(t.codomain_norm().dimension() == 1, "pairing needs a scalar-valued operator");
    return linearize_apply(t, u)[0];
}

// -------------------------------------------------------------- constructions

LipLinearOperator associate_TR(const LipschitzMap& r) {
    const std::size_t k = r.codomain.dimension();
    std::vector<Matrix> table;
    for (const auto& v : r.values) table.push_back(Matrix::from_rows({v}, k));
    return LipLinearOperator(r.domain, r.codomain.dual(), PolyhedralNorm::scalar(), std::move(table));
}

LipLinearOperator elementary_operator(const FiniteMetricSpace& x, const PolyhedralNorm& e, const PolyhedralNorm& f,
                                      const LipschitzFunctionVector& fn, VecView functional, VecView z) {
    require(fn.values.size() == x.free_dimension(), "function does not match the metric space");
    require(functional.size() == e.dimension() && z.size() == f.dimension(), "functional or vector of wrong length");
    Matrix rank_one = outer(z, functional);
    std::vector<Matrix> table;
    for (const auto& c : fn.values) table.push_back(c * rank_one);
    return LipLinearOperator(x, e, f, std::move(table));
}

LipLinearOperator compose(const Matrix& w, const PolyhedralNorm& f, const LipLinearOperator& t, const PointMap& r,
                          const Matrix& v, const PolyhedralNorm& e) {
    require(r.codomain == t.domain(), "point map does not land in the operator's domain space");
    require(w.cols() == t.codomain_norm().dimension() && w.rows() == f.dimension(), "outer map has the wrong shape");
    require(v.rows() == t.domain_norm().dimension() && v.cols() == e.dimension(), "inner map has the wrong shape");
    std::vector<Matrix> table;
    for (std::size_t i = 1; i < r.domain.size(); ++i) table.push_back(w * t.at(r.image[i]) * v);
    return LipLinearOperator(r.domain, e, f, std::move(table));
}

LipLinearOperator delta_box(const Matrix& v, const FiniteMetricSpace& x, const PolyhedralNorm& e,
                            const PolyhedralNorm& f, const Caps& caps) {
    if (x.size() > caps.points) throw CapExceeded("points", caps.points, x.size());
    require(v.cols() == e.dimension() && v.rows() == f.dimension(), "linear map has the wrong shape");
    const std::size_t n = x.free_dimension();
    const std::size_t k = f.dimension();
    std::vector<Matrix> table;
    for (std::size_t i = 0; i < n; ++i) {
        Matrix m(n * k, e.dimension());
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < e.dimension(); ++c) m(i * k + r, c) = v(r, c);
        table.push_back(std::move(m));
    }
    return LipLinearOperator(x, e, projective_norm_space(x, f, caps), std::move(table));
}

LipLinearOperator from_two_lipschitz(const TwoLipschitzTable& t, const Caps& caps) {
    PolyhedralNorm fy = free_space_norm(t.y, caps);
    std::vector<Matrix> table;
    for (std::size_t i = 1; i < t.x.size(); ++i) {
        Matrix m(t.codomain.dimension(), t.y.free_dimension());
        for (std::size_t j = 1; j < t.y.size(); ++j)
            for (std::size_t r = 0; r < m.rows(); ++r) m(r, j - 1) = t.values[i][j][r];
        table.push_back(std::move(m));
    }
    return LipLinearOperator(t.x, std::move(fy), t.codomain, std::move(table));
}

TwoLipschitzTable to_two_lipschitz(const LipLinearOperator& t, const FiniteMetricSpace& y) {
    require(t.domain_norm().dimension() == y.free_dimension(), "operator domain is not F(Y)");
    std::vector<std::vector<Vec>> values(t.domain().size());
    for (std::size_t i = 0; i < t.domain().size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            values[i].push_back(j == 0 ? zeros(t.codomain_norm().dimension()) : t.apply(i, delta(y, j).coefficients));
        }
    }
    return TwoLipschitzTable(t.domain(), y, t.codomain_norm(), std::move(values));
}

TwoLipschitzTable sample_two_lipschitz(const LipLinearOperator& t, const std::vector<Vec>& points) {
    if (points.empty() || !is_zero(points[0])) throw InvalidInput("sample grid must start with the zero vector");
    const auto& e = t.domain_norm();
    std::vector<Vec> d(points.size(), Vec(points.size(), Rational(0)));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j) d[i][j] = e(subtract(points[i], points[j]));
    FiniteMetricSpace g = validate_metric(d);
    std::vector<std::vector<Vec>> values(t.domain().size());
    for (std::size_t i = 0; i < t.domain().size(); ++i)
        for (const auto& p : points) values[i].push_back(t.apply(i, p));
    return TwoLipschitzTable(t.domain(), std::move(g), t.codomain_norm(), std::move(values));
}

}  // namespace lipbox
