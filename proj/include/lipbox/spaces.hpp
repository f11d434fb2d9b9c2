#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lipbox/caps.hpp"
#include "lipbox/linalg.hpp"
#include "lipbox/polytope.hpp"
#include "lipbox/rational.hpp"

namespace lipbox {

struct MetricViolation {
    enum class Kind { Shape, Negative, Diagonal, Asymmetry, ZeroDistance, Triangle };
    Kind kind;
    std::vector<std::size_t> points;
    std::string message;
};

// Finite pointed metric space. Point 0 is the base point. Immutable; copies
// share storage.
class FiniteMetricSpace {
public:
    FiniteMetricSpace() = default;

    std::size_t size() const;
    // Number of non-base points, i.e. the dimension of F(X) and X^#.
    std::size_t free_dimension() const { return size() - 1; }
    const std::string& label(std::size_t i) const;
    const std::vector<std::string>& labels() const;
    std::optional<std::size_t> find(std::string_view label) const;
    const Rational& distance(std::size_t i, std::size_t j) const;
    const std::vector<Vec>& distances() const;

    friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b);

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;

    friend FiniteMetricSpace validate_metric(const std::vector<Vec>&, std::vector<std::string>);
    friend const std::vector<Vec>& cached_ball_vertices(const FiniteMetricSpace&, const Caps&);
};

std::vector<MetricViolation> metric_violations(const std::vector<Vec>& distances,
                                               const std::vector<std::string>& labels);

// Labels default to "0", "x1", "x2", ... Throws InvalidInput itemizing every
// violation.
FiniteMetricSpace validate_metric(const std::vector<Vec>& distances, std::vector<std::string> labels = {});

// m = sum_x a_x delta_(x,0), coordinates over the non-base points.
struct FreeVector {
    Vec coefficients;
    friend bool operator==(const FreeVector&, const FreeVector&) = default;
};

// f over the non-base points; f(0) = 0.
struct LipschitzFunctionVector {
    Vec values;
    friend bool operator==(const LipschitzFunctionVector&, const LipschitzFunctionVector&) = default;
    friend bool operator<(const LipschitzFunctionVector& a, const LipschitzFunctionVector& b) {
        return a.values < b.values;
    }
};

// Value of a function/vector at point i, with the base point reading as 0.
inline Rational at_point(VecView coords, std::size_t i) { return i == 0 ? Rational(0) : coords[i - 1]; }

FreeVector delta(const FiniteMetricSpace& x, std::size_t point);

// { f : |f(x) - f(y)| <= d(x,y) } in coordinates over the non-base points.
Polytope lipschitz_ball(const FiniteMetricSpace& x);
std::vector<LipschitzFunctionVector> lipschitz_ball_vertices(const FiniteMetricSpace& x, const Caps& caps = {});
// Cached on the space; the first call's caps govern enumeration.
const std::vector<Vec>& cached_ball_vertices(const FiniteMetricSpace& x, const Caps& caps = {});

Rational lipschitz_constant(const FiniteMetricSpace& x, VecView f);
Rational free_norm(const FreeVector& m, const FiniteMetricSpace& x);
std::vector<FreeVector> free_ball_molecules(const FiniteMetricSpace& x);

// Norm on Q^n given by the vertices W of its dual unit ball:
// ||x|| = max_{w in W} w.x. Immutable; copies share storage.
class PolyhedralNorm {
public:
    PolyhedralNorm() = default;

    // W must be symmetric and span the dual space. Duplicates are dropped.
    static PolyhedralNorm from_dual_vertices(std::vector<Vec> dual_vertices, const Caps& caps = {});
    // As above, plus a finite set whose convex hull is the primal unit ball.
    // The generators are trusted; callers validate them.
    static PolyhedralNorm with_primal_generators(std::vector<Vec> dual_vertices, std::vector<Vec> primal_generators,
                                                 const Caps& caps = {});
    static PolyhedralNorm l1(std::size_t n, const Caps& caps = {});
    static PolyhedralNorm linf(std::size_t n, const Caps& caps = {});
    static PolyhedralNorm scalar() { return linf(1); }

    std::size_t dimension() const;
    const std::vector<Vec>& dual_vertices() const;
    // One functional from each {w, -w} pair.
    const std::vector<Vec>& dual_representatives() const;
    // Vertices of the primal unit ball (enumerated on first use unless supplied).
    const std::vector<Vec>& primal_generators() const;

    Rational operator()(VecView x) const;
    Rational dual_norm(VecView functional) const;
    PolyhedralNorm dual() const;
    std::string describe() const;

    friend bool operator==(const PolyhedralNorm& a, const PolyhedralNorm& b);

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    static std::shared_ptr<Impl> make_impl(std::vector<Vec> dual_vertices, const Caps& caps);
};

Rational poly_norm_eval(const PolyhedralNorm& norm, VecView x);

// Operator norm of M : E -> F (rows = dim F, cols = dim E).
Rational operator_norm(const Matrix& m, const PolyhedralNorm& e, const PolyhedralNorm& f);

// The operator norm E -> F as a polyhedral norm on row-major flattened
// matrices: dual vertices z (x) v for z in W_F and v primal vertices of B_E.
PolyhedralNorm operator_norm_space(const PolyhedralNorm& e, const PolyhedralNorm& f, const Caps& caps = {});

// F(Y) with dual ball B_{Y#} and primal generators the normalized molecules;
// the generator set is checked against vertex enumeration of the primal ball.
PolyhedralNorm free_space_norm(const FiniteMetricSpace& y, const Caps& caps = {});

// Lines of the hyperplane arrangement {w.e = 0 : w in W}, both orientations,
// each scaled to norm 1. Extreme rays of every cell of the arrangement.
std::vector<Vec> arrangement_rays(const PolyhedralNorm& e);

}  // namespace lipbox
