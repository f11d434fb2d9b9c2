#include "lipbox/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "lipbox/error.hpp"
#include "lipbox/linalg.hpp"
#include "lipbox/lp.hpp"

namespace lipbox {

namespace {

class Bitset {
public:
    explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool subset_of(const Bitset& other) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            if ((words_[k] & ~other.words_[k]) != 0) return false;
        }
        return true;
    }
    friend Bitset operator&(const Bitset& a, const Bitset& b) {
        Bitset c = a;
        for (std::size_t k = 0; k < c.words_.size(); ++k) c.words_[k] &= b.words_[k];
        return c;
    }

private:
    std::vector<std::uint64_t> words_;
};

struct Ray {
    Vec y;
    Bitset tight;
};

// Rays are scaled so the homogenizing coordinate is 1 when positive, otherwise
// so the largest coordinate magnitude is 1.
void normalize(Vec& y) {
    const Rational& t = y.back();
    Rational s;
    if (t > 0) {
        s = t;
    } else {
        for (const auto& v : y) s = std::max(s, Rational(abs(v)));
    }
    if (s == 0 || s == 1) return;
    for (auto& v : y) v /= s;
}

void check_interior(const Polytope& p) {
    // max s  s.t.  a_i.x + s <= b_i,  s <= 1: positive iff the interior is nonempty.
    const std::size_t d = p.dimension;
    LinearProgram lp(d + 1, Sense::Maximize);
    lp.objective[d] = 1;
    for (std::size_t j = 0; j <= d; ++j) lp.set_free(j);
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        Vec r = p.rows[i];
        r.push_back(1);
        lp.add(std::move(r), Relation::LessEqual, p.rhs[i]);
    }
    lp.add(unit_vector(d + 1, d), Relation::LessEqual, 1);
    LpSolution s = solve_lp(lp);
    if (s.status != LpStatus::Optimal || s.value <= 0) {
        throw DegeneratePolytope("polytope is empty or not full-dimensional");
    }
}

}  // namespace

bool contains(const Polytope& p, VecView x) {
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        if (dot(p.rows[i], x) > p.rhs[i]) return false;
    }
    return true;
}

std::vector<Vec> enumerate_vertices(const Polytope& p, const Caps& caps) {
    const std::size_t d = p.dimension;
    if (d > caps.ambient_dim) throw CapExceeded("ambient-dimension", caps.ambient_dim, d);
    if (p.rows.size() != p.rhs.size()) throw InvalidInput("polytope: row and right-hand-side counts differ");
    for (const auto& r : p.rows) {
        if (r.size() != d) throw DimensionMismatch("polytope: row width differs from dimension");
    }
    if (d == 0) throw DegeneratePolytope("zero-dimensional polytope");
    if (rank(p.rows, d) < d) throw UnboundedPolytope("inequality system does not have full rank");
    check_interior(p);

    // Homogenized cone { (x,t) : a_i.x - b_i t <= 0, -t <= 0 }.
    const std::size_t dim = d + 1;
    std::vector<Vec> cone;
    cone.reserve(p.rows.size() + 1);
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        Vec r = p.rows[i];
        r.push_back(-p.rhs[i]);
        cone.push_back(std::move(r));
    }
    {
        Vec r = zeros(dim);
        r[d] = -1;
        cone.push_back(std::move(r));
    }
    const std::size_t m = cone.size();

    std::vector<std::size_t> initial = independent_rows(cone, dim);
    if (initial.size() < dim) throw UnboundedPolytope("homogenized cone is not pointed");
    initial.resize(dim);

    // Simplicial start: the rays are the columns of -(M_S)^{-1}.
    std::vector<Ray> rays;
    {
        std::vector<Vec> ms;
        for (auto i : initial) ms.push_back(cone[i]);
        Matrix msm = Matrix::from_rows(ms, dim);
        for (std::size_t k = 0; k < dim; ++k) {
            Vec rhs = zeros(dim);
            rhs[k] = -1;
            auto y = solve(msm, rhs);
            if (!y) throw std::logic_error("independent rows produced a singular system");
            Ray ray{std::move(*y), Bitset(m)};
            for (std::size_t j = 0; j < dim; ++j) {
                if (j != k) ray.tight.set(initial[j]);
            }
            normalize(ray.y);
            rays.push_back(std::move(ray));
        }
    }

    std::vector<bool> processed(m, false);
    for (auto i : initial) processed[i] = true;

    for (std::size_t row = 0; row < m; ++row) {
        if (processed[row]) continue;
        processed[row] = true;
        const Vec& a = cone[row];
        std::vector<Rational> value(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<Ray> next;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            value[k] = dot(a, rays[k].y);
            if (value[k] > 0) pos.push_back(k);
            else if (value[k] < 0) neg.push_back(k);
        }
        if (pos.empty()) {
            for (std::size_t k = 0; k < rays.size(); ++k) {
                if (value[k] == 0) rays[k].tight.set(row);
            }
            continue;
        }
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (value[k] <= 0) {
                Ray r = rays[k];
                if (value[k] == 0) r.tight.set(row);
                next.push_back(std::move(r));
            }
        }
        for (auto ip : pos) {
            for (auto in : neg) {
                Bitset common = rays[ip].tight & rays[in].tight;
                if (common.count() + 2 < dim) continue;
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
                    if (k != ip && k != in && common.subset_of(rays[k].tight)) adjacent = false;
                }
                if (!adjacent) continue;
                Vec y(dim);
                for (std::size_t j = 0; j < dim; ++j) y[j] = value[ip] * rays[in].y[j] - value[in] * rays[ip].y[j];
                normalize(y);
                common.set(row);
                next.push_back(Ray{std::move(y), std::move(common)});
                if (next.size() > caps.vertices) throw CapExceeded("vertices", caps.vertices, next.size());
            }
        }
        rays = std::move(next);
    }

    std::vector<Vec> vertices;
    vertices.reserve(rays.size());
    for (auto& r : rays) {
        if (r.y[d] == 0) throw UnboundedPolytope("polytope has a recession direction");
        Vec x(r.y.begin(), r.y.begin() + static_cast<std::ptrdiff_t>(d));
        if (r.y[d] != 1) {
            for (auto& v : x) v /= r.y[d];
        }
        vertices.push_back(std::move(x));
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (vertices.size() > caps.vertices) throw CapExceeded("vertices", caps.vertices, vertices.size());
    return vertices;
}

}  // namespace lipbox
