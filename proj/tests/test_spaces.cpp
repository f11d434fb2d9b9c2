#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"

#include "lipbox/error.hpp"
#include "lipbox/spaces.hpp"

using namespace lipbox;
using oracle::r;

namespace {

Rational max_over_vertices(const FiniteMetricSpace& x, const FreeVector& m) {
    Rational best = 0;
    for (const auto& f : lipschitz_ball_vertices(x)) best = std::max(best, dot(f.values, m.coefficients));
    return best;
}

}  // namespace

TEST_CASE("validate_metric") {
    auto x = fixtures::x3();
    CHECK(x.size() == 3);
    CHECK(x.distance(0, 2) == 2);
    CHECK(x.find("b") == 2u);

    try {
        validate_metric({{0, 1, 1}, {1, 0, 3}, {1, 3, 0}}, {"0", "a", "b"});
        FAIL("expected a triangle violation");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).find("triangle-violation (a,0,b)") != std::string::npos);
    }
    auto v = metric_violations({{0, 1, 1}, {1, 0, 0}, {1, 0, 0}}, {"0", "a", "b"});
    REQUIRE(!v.empty());
    CHECK(v.front().kind == MetricViolation::Kind::ZeroDistance);
    auto asym = metric_violations({{0, 1}, {2, 0}}, {"0", "a"});
    REQUIRE(!asym.empty());
    CHECK(asym.front().kind == MetricViolation::Kind::Asymmetry);
    CHECK_THROWS_AS(validate_metric({{0, 1}, {1}}), InvalidInput);
    // collinear points satisfy the triangle inequality with equality
    CHECK_NOTHROW(validate_metric({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
}

TEST_CASE("lipschitz_ball_vertices") {
    auto as_vecs = [](const std::vector<LipschitzFunctionVector>& fs) {
        std::vector<Vec> out;
        for (const auto& f : fs) out.push_back(f.values);
        std::sort(out.begin(), out.end());
        return out;
    };
    CHECK(as_vecs(lipschitz_ball_vertices(fixtures::x3())) == std::vector<Vec>{{-1, -2}, {-1, 0}, {1, 0}, {1, 2}});
    CHECK(as_vecs(lipschitz_ball_vertices(fixtures::two_point())) == std::vector<Vec>{{-1}, {1}});
    CHECK(as_vecs(lipschitz_ball_vertices(fixtures::x3_prime())) ==
          std::vector<Vec>{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}});

    Caps caps;
    caps.points = 2;
    CHECK_THROWS_AS(lipschitz_ball_vertices(fixtures::x3(), caps), CapExceeded);
}

TEST_CASE("free_norm examples") {
    auto x = fixtures::x3();
    FreeVector da = delta(x, 1);
    FreeVector db = delta(x, 2);
    CHECK(free_norm(da, x) == 1);
    CHECK(free_norm({subtract(db.coefficients, da.coefficients)}, x) == 1);
    CHECK(free_norm({add(da.coefficients, db.coefficients)}, x) == 3);
    CHECK(max_over_vertices(x, {add(da.coefficients, db.coefficients)}) == 3);
}

TEST_CASE("free_ball_molecules") {
    CHECK(free_ball_molecules(fixtures::two_point()) == std::vector<FreeVector>{{{-1}}, {{1}}});
    auto x = fixtures::x3();
    auto mols = free_ball_molecules(x);
    CHECK(mols.size() == 6);
    bool attained = false;
    for (const auto& m : mols) {
        Rational n = free_norm(m, x);
        CHECK(n <= 1);
        attained = attained || n == 1;
    }
    CHECK(attained);
}

TEST_CASE("poly_norm_eval") {
    auto l1 = PolyhedralNorm::l1(2);
    auto linf = PolyhedralNorm::linf(2);
    CHECK(poly_norm_eval(l1, Vec{1, -2}) == 3);
    CHECK(poly_norm_eval(linf, Vec{1, -2}) == 2);
    CHECK(poly_norm_eval(l1, Vec{0, 0}) == 0);
    CHECK(poly_norm_eval(linf, Vec{0, 0}) == 0);
    CHECK_THROWS_AS(poly_norm_eval(l1, Vec{1, 2, 3}), DimensionMismatch);
    CHECK_THROWS_AS(PolyhedralNorm::from_dual_vertices({{1, 0}, {-1, 0}}), InvalidInput);
    CHECK_THROWS_AS(PolyhedralNorm::from_dual_vertices({{1, 0}, {0, 1}, {-1, 0}}), InvalidInput);

    // Hexagonal norm: the primal ball is enumerated and every dual vertex is
    // attained at some primal vertex.
    auto hex = PolyhedralNorm::from_dual_vertices({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}});
    for (const auto& w : hex.dual_vertices()) {
        Rational best = 0;
        Vec argmax;
        for (const auto& v : hex.primal_generators()) {
            if (dot(w, v) > best || argmax.empty()) {
                best = dot(w, v);
                argmax = v;
            }
        }
        CHECK(best == 1);
        CHECK(hex(argmax) == 1);
    }
    CHECK(hex.dual().dual_vertices() == hex.primal_generators());
}

TEST_CASE("free-norm duality and norm axioms on random metrics") {
    oracle::Rng rng(11);
    for (int t = 0; t < 8; ++t) {
        auto x = fixtures::random_metric(rng, static_cast<std::size_t>(rng.integer(2, 5)));
        for (std::size_t a = 0; a < x.size(); ++a)
            for (std::size_t b = 0; b < x.size(); ++b) {
                if (a == b) continue;
                FreeVector m{subtract(delta(x, a).coefficients, delta(x, b).coefficients)};
                CHECK(free_norm(m, x) == x.distance(a, b));
            }
        for (int k = 0; k < 6; ++k) {
            FreeVector m{rng.vec(x.free_dimension(), -3, 3, 4)};
            FreeVector m2{rng.vec(x.free_dimension(), -3, 3, 4)};
            Rational c = rng.rational(-3, 3, 2);
            Rational nm = free_norm(m, x);
            CHECK(nm == max_over_vertices(x, m));
            CHECK(free_norm({scale(m.coefficients, c)}, x) == abs(c) * nm);
            CHECK(free_norm({add(m.coefficients, m2.coefficients)}, x) <= nm + free_norm(m2, x));
        }
    }
}

TEST_CASE("free_space_norm and arrangement rays") {
    auto y = fixtures::x3();
    auto fy = free_space_norm(y);
    CHECK(fy.dimension() == 2);
    CHECK(fy(delta(y, 2).coefficients) == 2);
    oracle::Rng rng(5);
    for (int k = 0; k < 10; ++k) {
        Vec m = rng.vec(2, -4, 4, 3);
        CHECK(fy(m) == free_norm({m}, y));
    }

    auto rays = arrangement_rays(PolyhedralNorm::linf(2));
    // Lines e1 = 0 and e2 = 0.
    CHECK(rays == std::vector<Vec>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}});
    auto rays_l1 = arrangement_rays(PolyhedralNorm::l1(2));
    // Lines e1 + e2 = 0 and e1 - e2 = 0, scaled to l1 norm 1.
    CHECK(rays_l1.size() == 4);
    for (const auto& v : rays_l1) CHECK(PolyhedralNorm::l1(2)(v) == 1);
    CHECK(arrangement_rays(PolyhedralNorm::scalar()) == std::vector<Vec>{{-1}, {1}});
}
