#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"

#include "lipbox/error.hpp"
#include "lipbox/lp.hpp"
#include "lipbox/polytope.hpp"

using namespace lipbox;
using oracle::r;

TEST_CASE("solve_lp: one-constraint maximization") {
    LinearProgram lp(1, Sense::Maximize);
    lp.objective = {1};
    lp.add({1}, Relation::LessEqual, 3);
    auto s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == 3);
    CHECK(s.primal == Vec{3});
    CHECK(check_solution(lp, s).ok());
}

TEST_CASE("solve_lp: contradictory bounds are infeasible") {
    LinearProgram lp(1);
    lp.add({1}, Relation::GreaterEqual, 1);
    lp.add({1}, Relation::LessEqual, 0);
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);
}

TEST_CASE("solve_lp: separable") {
    LinearProgram lp(2, Sense::Maximize);
    lp.objective = {1, 1};
    lp.add({1, 0}, Relation::LessEqual, 1);
    lp.add({0, 1}, Relation::LessEqual, 2);
    auto s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == 3);
    CHECK(check_solution(lp, s).ok());
}

TEST_CASE("solve_lp: unbounded and malformed programs") {
    LinearProgram lp(2, Sense::Maximize);
    lp.objective = {1, 0};
    lp.add({0, 1}, Relation::LessEqual, 1);
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);

    LinearProgram bad(2);
    bad.add({1}, Relation::LessEqual, 1);
    CHECK_THROWS_AS(solve_lp(bad), InvalidInput);
}

TEST_CASE("solve_lp: free variables, equalities and redundant rows") {
    // min |x| + |y| written with free x,y and epigraph t,s.
    LinearProgram lp(4);
    lp.objective = {0, 0, 1, 1};
    lp.set_free(0);
    lp.set_free(1);
    lp.add({1, 1, 0, 0}, Relation::Equal, -3);
    lp.add({2, 2, 0, 0}, Relation::Equal, -6);  // redundant
    lp.add({1, 0, -1, 0}, Relation::LessEqual, 0);
    lp.add({-1, 0, -1, 0}, Relation::LessEqual, 0);
    lp.add({0, 1, 0, -1}, Relation::LessEqual, 0);
    lp.add({0, -1, 0, -1}, Relation::LessEqual, 0);
    auto s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == 3);
    auto c = check_solution(lp, s);
    CHECK_MESSAGE(c.ok(), c.detail);
}

TEST_CASE("solve_lp: random programs carry exact certificates") {
    oracle::Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
        const std::size_t m = static_cast<std::size_t>(rng.integer(1, 6));
        LinearProgram lp(n, trial % 2 ? Sense::Maximize : Sense::Minimize);
        lp.objective = rng.vec(n, -4, 4, 3);
        for (std::size_t j = 0; j < n; ++j) {
            if (rng.integer(0, 2) == 0) lp.set_free(j);
        }
        for (std::size_t i = 0; i < m; ++i) {
            auto rel = static_cast<Relation>(rng.integer(0, 2));
            lp.add(rng.vec(n, -3, 3, 2), rel, rng.rational(-5, 5, 2));
        }
        // Box keeps most instances bounded.
        for (std::size_t j = 0; j < n; ++j) {
            lp.add(unit_vector(n, j), Relation::LessEqual, 10);
            lp.add(unit_vector(n, j), Relation::GreaterEqual, -10);
        }
        auto s = solve_lp(lp);
        if (s.status == LpStatus::Optimal) {
            auto c = check_solution(lp, s);
            CHECK_MESSAGE(c.ok(), c.detail);
        } else {
            CHECK(s.status == LpStatus::Infeasible);
        }
    }
}

namespace {

Polytope box2() {
    Polytope p;
    p.dimension = 2;
    p.add({1, 0}, 1);
    p.add({-1, 0}, 1);
    p.add({0, 1}, 1);
    p.add({0, -1}, 1);
    return p;
}

}  // namespace

TEST_CASE("enumerate_vertices: square") {
    auto v = enumerate_vertices(box2());
    std::vector<Vec> expected = {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
    CHECK(v == expected);
}

TEST_CASE("enumerate_vertices: Lipschitz ball of the three-point line") {
    // |f(a)| <= 1, |f(b)| <= 2, |f(b) - f(a)| <= 1
    Polytope p;
    p.dimension = 2;
    p.add({1, 0}, 1);
    p.add({-1, 0}, 1);
    p.add({0, 1}, 2);
    p.add({0, -1}, 2);
    p.add({-1, 1}, 1);
    p.add({1, -1}, 1);
    auto v = enumerate_vertices(p);
    std::vector<Vec> expected = {{-1, -2}, {-1, 0}, {1, 0}, {1, 2}};
    CHECK(v == expected);
    CHECK(v == oracle::brute_force_vertices(p));
}

TEST_CASE("enumerate_vertices: simplex") {
    Polytope p;
    p.dimension = 2;
    p.add({-1, 0}, 0);
    p.add({0, -1}, 0);
    p.add({1, 1}, 1);
    std::vector<Vec> expected = {{0, 0}, {0, 1}, {1, 0}};
    CHECK(enumerate_vertices(p) == expected);
}

TEST_CASE("enumerate_vertices: errors") {
    Polytope half;
    half.dimension = 2;
    half.add({1, 0}, 1);
    half.add({0, 1}, 1);
    half.add({-1, 0}, 1);
    CHECK_THROWS_AS(enumerate_vertices(half), UnboundedPolytope);

    Polytope flat = box2();
    flat.add({0, 1}, 0);
    flat.add({0, -1}, 0);
    CHECK_THROWS_AS(enumerate_vertices(flat), DegeneratePolytope);

    Polytope big;
    big.dimension = 11;
    for (std::size_t i = 0; i < 11; ++i) {
        big.add(unit_vector(11, i), 1);
        big.add(scale(unit_vector(11, i), -1), 1);
    }
    CHECK_THROWS_AS(enumerate_vertices(big), CapExceeded);
    Caps tight;
    tight.vertices = 3;
    CHECK_THROWS_AS(enumerate_vertices(box2(), tight), CapExceeded);
}

TEST_CASE("enumerate_vertices: random polytopes against brute force and LP") {
    oracle::Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t d = static_cast<std::size_t>(rng.integer(2, 4));
        Polytope p;
        p.dimension = d;
        for (std::size_t i = 0; i < d; ++i) {
            p.add(unit_vector(d, i), rng.integer(1, 3));
            p.add(scale(unit_vector(d, i), -1), rng.integer(1, 3));
        }
        const std::size_t extra = static_cast<std::size_t>(rng.integer(0, 5));
        for (std::size_t k = 0; k < extra; ++k) p.add(rng.vec(d, -3, 3), rng.integer(1, 6));

        auto v = enumerate_vertices(p);
        CHECK(v == oracle::brute_force_vertices(p));

        Polytope shuffled = p;
        std::vector<std::size_t> order(p.rows.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng.engine());
        for (std::size_t i = 0; i < order.size(); ++i) {
            shuffled.rows[i] = p.rows[order[i]];
            shuffled.rhs[i] = p.rhs[order[i]];
        }
        CHECK(enumerate_vertices(shuffled) == v);

        Vec c = rng.vec(d, -5, 5, 3);
        Rational best = dot(c, v.front());
        for (const auto& x : v) best = std::max(best, dot(c, x));
        LinearProgram lp(d, Sense::Maximize);
        lp.objective = c;
        for (std::size_t j = 0; j < d; ++j) lp.set_free(j);
        for (std::size_t i = 0; i < p.rows.size(); ++i) lp.add(p.rows[i], Relation::LessEqual, p.rhs[i]);
        auto s = solve_lp(lp);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.value == best);
        for (const auto& x : v) {
            std::vector<Vec> tight;
            for (std::size_t i = 0; i < p.rows.size(); ++i) {
                if (dot(p.rows[i], x) == p.rhs[i]) tight.push_back(p.rows[i]);
            }
            CHECK(rank(tight, d) == d);
        }
    }
}

TEST_CASE("rational parsing and power enclosures") {
    CHECK(parse_rational("3/6") == r(1, 2));
    CHECK(parse_rational("-2") == -2);
    CHECK(parse_rational("0.25") == r(1, 4));
    CHECK(to_string(r(-6, 4)) == "-3/2");
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
    CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);

    CHECK(root_bounds(r(9, 4), 2).is_exact());
    CHECK(root_bounds(r(9, 4), 2).lo == r(3, 2));
    Bounds s2 = root_bounds(2, 2);
    CHECK(s2.lo * s2.lo < 2);
    CHECK(s2.hi * s2.hi > 2);
    CHECK(s2.hi - s2.lo < Rational(1, 1000000000));
    Bounds tiny = root_bounds(r(1, 1000000007), 3);
    CHECK(tiny.lo * tiny.lo * tiny.lo <= r(1, 1000000007));
    CHECK(tiny.hi * tiny.hi * tiny.hi >= r(1, 1000000007));
    CHECK((tiny.hi - tiny.lo) / tiny.hi < Rational(1, 1000000000));

    // (1 + 1)^2 for s = 1/2
    Bounds q = lr_norm_bounds(Vec{1, 1}, r(1, 2));
    CHECK(q.is_exact());
    CHECK(q.lo == 4);
    Bounds two = lr_norm_bounds(Vec{3, -4}, 2);
    CHECK(two.lo == 5);
    Bounds ugly = lr_norm_bounds(Vec{1, 2}, 2);
    CHECK(ugly.lo * ugly.lo <= 5);
    CHECK(ugly.hi * ugly.hi >= 5);
}
