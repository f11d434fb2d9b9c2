#include "lipbox/spaces.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

#include "lipbox/error.hpp"
#include "lipbox/lp.hpp"

namespace lipbox {

// ---------------------------------------------------------------- metric space

struct FiniteMetricSpace::Impl {
    std::vector<std::string> labels;
    std::vector<Vec> d;
    mutable std::once_flag vertices_once;
    mutable std::vector<Vec> vertices;
};

std::size_t FiniteMetricSpace::size() const { return impl_ ? impl_->labels.size() : 0; }
const std::string& FiniteMetricSpace::label(std::size_t i) const { return impl_->labels.at(i); }
const std::vector<std::string>& FiniteMetricSpace::labels() const { return impl_->labels; }
const Rational& FiniteMetricSpace::distance(std::size_t i, std::size_t j) const { return impl_->d.at(i).at(j); }
const std::vector<Vec>& FiniteMetricSpace::distances() const { return impl_->d; }

std::optional<std::size_t> FiniteMetricSpace::find(std::string_view label) const {
    for (std::size_t i = 0; i < size(); ++i) {
        if (impl_->labels[i] == label) return i;
    }
    return std::nullopt;
}

bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    if (a.impl_ == b.impl_) return true;
    if (!a.impl_ || !b.impl_) return false;
    return a.impl_->labels == b.impl_->labels && a.impl_->d == b.impl_->d;
}

std::vector<MetricViolation> metric_violations(const std::vector<Vec>& d, const std::vector<std::string>& labels) {
    using Kind = MetricViolation::Kind;
    std::vector<MetricViolation> out;
    const std::size_t n = d.size();
    auto name = [&](std::size_t i) { return i < labels.size() ? labels[i] : std::to_string(i); };
    if (n == 0) {
        out.push_back({Kind::Shape, {}, "distance table is empty"});
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i].size() != n) {
            out.push_back({Kind::Shape, {i}, "distance table is not square (row " + name(i) + ")"});
            return out;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i][i] != 0) out.push_back({Kind::Diagonal, {i}, "d(" + name(i) + "," + name(i) + ") is not zero"});
        for (std::size_t j = i + 1; j < n; ++j) {
            if (d[i][j] != d[j][i]) {
                out.push_back({Kind::Asymmetry, {i, j}, "asymmetry: d(" + name(i) + "," + name(j) + ") != d(" +
                                                             name(j) + "," + name(i) + ")"});
            }
            if (d[i][j] < 0 || d[j][i] < 0) {
                out.push_back({Kind::Negative, {i, j}, "negative distance between " + name(i) + " and " + name(j)});
            } else if (d[i][j] == 0 || d[j][i] == 0) {
                out.push_back({Kind::ZeroDistance, {i, j},
                               "zero distance between distinct points " + name(i) + " and " + name(j)});
            }
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t z = x + 1; z < n; ++z) {
            for (std::size_t y = 0; y < n; ++y) {
                if (y == x || y == z) continue;
                if (d[x][z] > d[x][y] + d[y][z]) {
                    out.push_back({Kind::Triangle, {x, y, z},
                                   "triangle-violation (" + name(x) + "," + name(y) + "," + name(z) + "): d(" +
                                       name(x) + "," + name(z) + ")=" + to_string(d[x][z]) + " > " +
                                       to_string(d[x][y] + d[y][z])});
                }
            }
        }
    }
    return out;
}

FiniteMetricSpace validate_metric(const std::vector<Vec>& distances, std::vector<std::string> labels) {
    const std::size_t n = distances.size();
    if (labels.empty()) {
        labels.push_back("0");
        for (std::size_t i = 1; i < n; ++i) labels.push_back("x" + std::to_string(i));
    }
    if (labels.size() != n) throw InvalidInput("label count differs from distance table size");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw InvalidInput("duplicate point labels");
    auto violations = metric_violations(distances, labels);
    if (!violations.empty()) {
        std::string msg = "invalid metric:";
        for (const auto& v : violations) msg += "\n  " + v.message;
        throw InvalidInput(msg);
    }
    auto impl = std::make_shared<FiniteMetricSpace::Impl>();
    impl->labels = std::move(labels);
    impl->d = distances;
    FiniteMetricSpace space;
    space.impl_ = std::move(impl);
    return space;
}

FreeVector delta(const FiniteMetricSpace& x, std::size_t point) {
    FreeVector m{zeros(x.free_dimension())};
    if (point != 0) m.coefficients.at(point - 1) = 1;
    return m;
}

Polytope lipschitz_ball(const FiniteMetricSpace& x) {
    const std::size_t n = x.size();
    Polytope p;
    p.dimension = x.free_dimension();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            Vec row = zeros(p.dimension);
            if (a > 0) row[a - 1] = 1;
            row[b - 1] = -1;
            p.add(row, x.distance(a, b));
            p.add(scale(row, -1), x.distance(a, b));
        }
    }
    return p;
}

const std::vector<Vec>& cached_ball_vertices(const FiniteMetricSpace& x, const Caps& caps) {
    if (x.size() > caps.points) throw CapExceeded("points", caps.points, x.size());
    if (x.size() < 2) throw InvalidInput("Lipschitz ball of a one-point space is trivial");
    const auto& impl = *x.impl_;
    std::call_once(impl.vertices_once, [&] { impl.vertices = enumerate_vertices(lipschitz_ball(x), caps); });
    return impl.vertices;
}

std::vector<LipschitzFunctionVector> lipschitz_ball_vertices(const FiniteMetricSpace& x, const Caps& caps) {
    std::vector<LipschitzFunctionVector> out;
    for (const auto& v : cached_ball_vertices(x, caps)) out.push_back({v});
    return out;
}

Rational lipschitz_constant(const FiniteMetricSpace& x, VecView f) {
    if (f.size() != x.free_dimension()) throw DimensionMismatch("function length differs from |X| - 1");
    Rational best = 0;
    for (std::size_t a = 0; a < x.size(); ++a) {
        for (std::size_t b = a + 1; b < x.size(); ++b) {
            best = std::max(best, Rational(abs(at_point(f, a) - at_point(f, b)) / x.distance(a, b)));
        }
    }
    return best;
}

Rational free_norm(const FreeVector& m, const FiniteMetricSpace& x) {
    const std::size_t k = x.free_dimension();
    if (m.coefficients.size() != k) throw DimensionMismatch("free vector length differs from |X| - 1");
    // min sum d(x,y)(l+ + l-) with sum (l+ - l-)(delta_x - delta_y) = m.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = a + 1; b < x.size(); ++b) pairs.emplace_back(a, b);
    LinearProgram lp(2 * pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        lp.objective[2 * p] = x.distance(pairs[p].first, pairs[p].second);
        lp.objective[2 * p + 1] = lp.objective[2 * p];
    }
    for (std::size_t z = 1; z <= k; ++z) {
        Vec row = zeros(lp.variable_count());
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            Rational c = Rational(pairs[p].first == z ? 1 : 0) - Rational(pairs[p].second == z ? 1 : 0);
            row[2 * p] = c;
            row[2 * p + 1] = -c;
        }
        lp.add(std::move(row), Relation::Equal, m.coefficients[z - 1]);
    }
    LpSolution s = solve_lp(lp);
    if (s.status != LpStatus::Optimal) throw std::logic_error("free norm program is not optimal");
    return s.value;
}

std::vector<FreeVector> free_ball_molecules(const FiniteMetricSpace& x) {
    std::vector<FreeVector> out;
    for (std::size_t a = 0; a < x.size(); ++a) {
        for (std::size_t b = 0; b < x.size(); ++b) {
            if (a == b) continue;
            Vec m = subtract(delta(x, a).coefficients, delta(x, b).coefficients);
            out.push_back({scale(m, 1 / x.distance(a, b))});
        }
    }
    return out;
}

// ----------------------------------------------------------- polyhedral norms

struct PolyhedralNorm::Impl {
    std::size_t dim = 0;
    std::vector<Vec> dual;
    std::vector<Vec> representatives;
    Caps caps;
    bool primal_known = false;
    std::once_flag primal_once;
    std::vector<Vec> primal;
};

std::shared_ptr<PolyhedralNorm::Impl> PolyhedralNorm::make_impl(std::vector<Vec> w, const Caps& caps) {
    if (w.empty()) throw InvalidInput("polyhedral norm needs at least one dual vertex");
    const std::size_t n = w.front().size();
    if (n == 0) throw InvalidInput("polyhedral norm of dimension zero");
    if (n > caps.dim) throw CapExceeded("dim", caps.dim, n);
    for (const auto& v : w) {
        if (v.size() != n) throw DimensionMismatch("dual vertices of unequal length");
    }
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    for (const auto& v : w) {
        if (!std::binary_search(w.begin(), w.end(), scale(v, -1))) {
            throw InvalidInput("dual vertex list is not symmetric");
        }
    }
    if (rank(w, n) < n) throw InvalidInput("dual vertices do not span; the induced functional is only a seminorm");
    auto impl = std::make_shared<PolyhedralNorm::Impl>();
    impl->dim = n;
    impl->caps = caps;
    for (const auto& v : w) {
        if (is_zero(v)) continue;
        Vec neg = scale(v, -1);
        if (v > neg) impl->representatives.push_back(v);
    }
    impl->dual = std::move(w);
    return impl;
}

PolyhedralNorm PolyhedralNorm::from_dual_vertices(std::vector<Vec> dual_vertices, const Caps& caps) {
    PolyhedralNorm n;
    n.impl_ = make_impl(std::move(dual_vertices), caps);
    return n;
}

PolyhedralNorm PolyhedralNorm::with_primal_generators(std::vector<Vec> dual_vertices, std::vector<Vec> generators,
                                                      const Caps& caps) {
    PolyhedralNorm n;
    n.impl_ = make_impl(std::move(dual_vertices), caps);
    for (const auto& g : generators) {
        if (g.size() != n.impl_->dim) throw DimensionMismatch("primal generator of wrong length");
    }
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    n.impl_->primal = std::move(generators);
    n.impl_->primal_known = true;
    return n;
}

PolyhedralNorm PolyhedralNorm::l1(std::size_t n, const Caps& caps) {
    if (n == 0) throw InvalidInput("polyhedral norm of dimension zero");
    if (n > caps.dim) throw CapExceeded("dim", caps.dim, n);
    std::vector<Vec> signs;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Vec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? -1 : 1;
        signs.push_back(std::move(v));
    }
    std::vector<Vec> units;
    for (std::size_t i = 0; i < n; ++i) {
        units.push_back(unit_vector(n, i));
        units.push_back(scale(unit_vector(n, i), -1));
    }
    return with_primal_generators(std::move(signs), std::move(units), caps);
}

PolyhedralNorm PolyhedralNorm::linf(std::size_t n, const Caps& caps) { return l1(n, caps).dual(); }

std::size_t PolyhedralNorm::dimension() const { return impl_->dim; }
const std::vector<Vec>& PolyhedralNorm::dual_vertices() const { return impl_->dual; }
const std::vector<Vec>& PolyhedralNorm::dual_representatives() const { return impl_->representatives; }

const std::vector<Vec>& PolyhedralNorm::primal_generators() const {
    if (impl_->primal_known) return impl_->primal;
    std::call_once(impl_->primal_once, [this] {
        Polytope ball;
        ball.dimension = impl_->dim;
        for (const auto& w : impl_->dual) ball.add(w, 1);
        impl_->primal = enumerate_vertices(ball, impl_->caps);
    });
    return impl_->primal;
}

Rational PolyhedralNorm::operator()(VecView x) const {
    if (x.size() != impl_->dim) {
        throw DimensionMismatch("norm of a vector of length " + std::to_string(x.size()) + " in dimension " +
                                std::to_string(impl_->dim));
    }
    Rational best = 0;
    for (const auto& w : impl_->representatives) best = std::max(best, Rational(abs(dot(w, x))));
    return best;
}

Rational PolyhedralNorm::dual_norm(VecView functional) const {
    if (functional.size() != impl_->dim) throw DimensionMismatch("functional of wrong length");
    Rational best = 0;
    for (const auto& v : primal_generators()) best = std::max(best, dot(functional, v));
    return best;
}

PolyhedralNorm PolyhedralNorm::dual() const {
    return with_primal_generators(primal_generators(), impl_->dual, impl_->caps);
}

std::string PolyhedralNorm::describe() const {
    std::ostringstream os;
    os << "polyhedral norm on Q^" << impl_->dim << " with " << impl_->dual.size() << " dual vertices";
    return os.str();
}

bool operator==(const PolyhedralNorm& a, const PolyhedralNorm& b) {
    if (a.impl_ == b.impl_) return true;
    if (!a.impl_ || !b.impl_) return false;
    return a.impl_->dual == b.impl_->dual;
}

Rational poly_norm_eval(const PolyhedralNorm& norm, VecView x) { return norm(x); }

Rational operator_norm(const Matrix& m, const PolyhedralNorm& e, const PolyhedralNorm& f) {
    if (m.cols() != e.dimension() || m.rows() != f.dimension()) {
        throw DimensionMismatch("operator shape does not match its domain and codomain norms");
    }
    Rational best = 0;
    for (const auto& v : e.primal_generators()) best = std::max(best, f(m.apply(v)));
    return best;
}

PolyhedralNorm operator_norm_space(const PolyhedralNorm& e, const PolyhedralNorm& f, const Caps& caps) {
    std::vector<Vec> w;
    for (const auto& z : f.dual_vertices()) {
        for (const auto& v : e.primal_generators()) w.push_back(outer(z, v).data());
    }
    Caps wide = caps;
    wide.dim = std::max(caps.dim, e.dimension() * f.dimension());
    return PolyhedralNorm::from_dual_vertices(std::move(w), wide);
}

PolyhedralNorm free_space_norm(const FiniteMetricSpace& y, const Caps& caps) {
    std::vector<Vec> w = cached_ball_vertices(y, caps);
    std::vector<Vec> molecules;
    for (auto& m : free_ball_molecules(y)) molecules.push_back(std::move(m.coefficients));
    PolyhedralNorm norm = PolyhedralNorm::with_primal_generators(w, molecules, caps);
    // Every molecule lies in the unit ball and every vertex of the ball is a molecule.
    for (const auto& m : molecules) {
        if (norm(m) > 1) throw std::logic_error("molecule outside the free-space unit ball");
    }
    Polytope ball;
    ball.dimension = y.free_dimension();
    for (const auto& f : w) ball.add(f, 1);
    for (const auto& v : enumerate_vertices(ball, caps)) {
        if (!std::binary_search(norm.primal_generators().begin(), norm.primal_generators().end(), v)) {
            throw std::logic_error("free-space ball vertex that is not a molecule");
        }
    }
    return norm;
}

std::vector<Vec> arrangement_rays(const PolyhedralNorm& e) {
    const std::size_t n = e.dimension();
    const auto& hyper = e.dual_representatives();
    std::vector<Vec> rays;
    auto push = [&](Vec k) {
        Rational len = e(k);
        if (len == 0) return;
        k = scale(k, 1 / len);
        rays.push_back(scale(k, -1));
        rays.push_back(std::move(k));
    };
    if (n == 1) {
        push(Vec{1});
    } else if (hyper.size() >= n - 1) {
        std::vector<std::size_t> pick(n - 1);
        for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
        const std::size_t h = hyper.size();
        for (;;) {
            std::vector<Vec> rows;
            for (auto i : pick) rows.push_back(hyper[i]);
            auto ker = kernel(rows, n);
            if (ker.size() == 1) push(ker.front());
            std::size_t k = pick.size();
            while (k > 0 && pick[k - 1] == h - pick.size() + k - 1) --k;
            if (k == 0) break;
            ++pick[k - 1];
            for (std::size_t j = k; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    return rays;
}

}  // namespace lipbox
