#include "doctest.h"
#include "fixtures.hpp"

#include "lipbox/error.hpp"
#include "lipbox/integral.hpp"

using namespace lipbox;
using oracle::r;

namespace {

const PolyhedralNorm R1 = PolyhedralNorm::scalar();

LipLinearOperator line_operator() {
    return LipLinearOperator(fixtures::x3(), R1, R1, {Matrix::from_rows({{1}}, 1), Matrix::from_rows({{2}}, 1)});
}

// Row r of every A(x): the scalar operator e_r* o T.
LipLinearOperator coordinate(const LipLinearOperator& t, std::size_t r) {
    std::vector<Matrix> table;
    for (const auto& m : t.table()) table.push_back(Matrix::from_rows({Vec(m.row(r).begin(), m.row(r).end())}, m.cols()));
    return LipLinearOperator(t.domain(), t.domain_norm(), R1, std::move(table));
}

LipLinearOperator scaled(const LipLinearOperator& t, const Rational& s) {
    std::vector<Matrix> table;
    for (const auto& m : t.table()) table.push_back(s * m);
    return LipLinearOperator(t.domain(), t.domain_norm(), t.codomain_norm(), std::move(table));
}

LipLinearOperator sum(const LipLinearOperator& a, const LipLinearOperator& b) {
    std::vector<Matrix> table;
    for (std::size_t i = 0; i < a.table().size(); ++i) table.push_back(a.table()[i] + b.table()[i]);
    return LipLinearOperator(a.domain(), a.domain_norm(), a.codomain_norm(), std::move(table));
}

}  // namespace

TEST_CASE("integral_norm examples") {
    auto res = integral_norm(line_operator());
    CHECK(res.value == 1);
    REQUIRE(res.certificate.atoms.size() == 1);
    CHECK(res.certificate.atoms[0].f == Vec{1, 2});
    CHECK(res.certificate.atoms[0].functional == Vec{1});
    CHECK(res.certificate.weights() == Vec{1});
    CHECK(eps_dual_check(line_operator()) == 1);

    auto zero = LipLinearOperator::zero(fixtures::x3(), PolyhedralNorm::l1(2), R1);
    CHECK(integral_norm(zero).value == 0);
    CHECK(integral_norm(zero).certificate.atoms.empty());
    CHECK(eps_dual_check(zero) == 0);

    auto el = elementary_operator(fixtures::x3(), R1, R1, LipschitzFunctionVector{{1, 2}}, Vec{1}, Vec{1});
    CHECK(integral_norm(el).value == 1);
    CHECK(eps_dual_check(el) == 1);
}

TEST_CASE("integral duality, bounds and reconstruction, scalar codomain") {
    oracle::Rng rng(61);
    std::vector<FiniteMetricSpace> spaces = {fixtures::x3(), fixtures::x3_prime(), fixtures::random_metric(rng, 4)};
    std::vector<PolyhedralNorm> norms = {PolyhedralNorm::l1(2), PolyhedralNorm::linf(2)};
    for (int t = 0; t < 20; ++t) {
        const auto& x = spaces[static_cast<std::size_t>(t % 3)];
        const auto& e = norms[static_cast<std::size_t>(rng.integer(0, 1))];
        auto op = fixtures::random_operator(rng, x, e, R1);
        auto res = integral_norm(op);
        CHECK(res.value == eps_dual_check(op));
        CHECK(lipl_norm(op) <= res.value);
        CHECK(res.certificate.mass == res.value);
        CHECK(reconstruct(res.certificate, x, e, R1) == op);
        CHECK(verify_integral(res.certificate, op).passed);
        auto fac = factorize_Linfty(res.certificate, x, e);
        CHECK(res.value <= fac.product);
        CHECK(fac.lip_r <= 1);
        CHECK(fac.v_norm <= 1);
        // The discrete integral reproduces T on every point and basis vector.
        for (std::size_t p = 0; p < x.size(); ++p) {
            for (std::size_t k = 0; k < e.dimension(); ++k) {
                Rational s = 0;
                for (std::size_t a = 0; a < fac.mu.size(); ++a) s += fac.r[p][a] * fac.v(a, k) * fac.mu[a];
                CHECK(s == op.at(p)(0, k));
            }
        }
        CHECK(eps_dual_check(scaled(op, 5)) == 5 * res.value);
        auto other = fixtures::random_operator(rng, x, e, R1);
        CHECK(integral_norm(sum(op, other)).value <= res.value + integral_norm(other).value);
    }
}

TEST_CASE("integral_norm, vector codomain") {
    oracle::Rng rng(62);
    for (int t = 0; t < 8; ++t) {
        auto x = t % 2 ? fixtures::x3() : fixtures::x3_prime();
        auto op = fixtures::random_operator(rng, x, PolyhedralNorm::linf(2), PolyhedralNorm::l1(2));
        auto res = integral_norm(op);
        // ||z||_1 separates the LP by coordinate.
        CHECK(res.value == integral_norm(coordinate(op, 0)).value + integral_norm(coordinate(op, 1)).value);
        CHECK(lipl_norm(op) <= res.value);
        CHECK(verify_integral(res.certificate, op).passed);

        auto op2 = fixtures::random_operator(rng, x, PolyhedralNorm::l1(2), PolyhedralNorm::linf(2));
        auto res2 = integral_norm(op2);
        CHECK(verify_integral(res2.certificate, op2).passed);
        CHECK(res2.value == res2.certificate.mass);
        // ||z||_inf >= |z_r|, and stacking coordinate solutions gives mass
        // at most the sum.
        Rational c0 = integral_norm(coordinate(op2, 0)).value;
        Rational c1 = integral_norm(coordinate(op2, 1)).value;
        CHECK(std::max(c0, c1) <= res2.value);
        CHECK(res2.value <= c0 + c1);
    }
}

TEST_CASE("rank-one operators and T_R") {
    oracle::Rng rng(63);
    for (int t = 0; t < 10; ++t) {
        auto x = fixtures::random_metric(rng, static_cast<std::size_t>(rng.integer(2, 4)));
        Vec fv = rng.vec(x.size() - 1, -3, 3, 2);
        if (is_zero(fv)) continue;
        auto e = rng.integer(0, 1) ? PolyhedralNorm::l1(2) : PolyhedralNorm::linf(2);
        auto f = rng.integer(0, 1) ? PolyhedralNorm::l1(2) : PolyhedralNorm::linf(2);
        Vec es = rng.vec(2, -2, 2, 1);
        Vec z = rng.vec(2, -2, 2, 1);
        if (is_zero(es) || is_zero(z)) continue;
        auto el = elementary_operator(x, e, f, LipschitzFunctionVector{fv}, es, z);
        auto res = integral_norm(el);
        CHECK(res.value == lipschitz_constant(x, fv) * e.dual_norm(es) * f(z));
        CHECK(verify_integral(res.certificate, el).passed);

        // R(x) = f(x) z into E; T_R lives on X x E*.
        std::vector<Vec> vals;
        for (const auto& c : fv) vals.push_back(scale(z, c));
        auto tr = associate_TR(LipschitzMap(x, e, vals));
        CHECK(integral_norm(tr).value == lipschitz_constant(x, fv) * e(z));
        CHECK(eps_dual_check(tr) == integral_norm(tr).value);
    }
}

TEST_CASE("reconstruct and factorize_Linfty") {
    auto x = fixtures::x3();
    CHECK(reconstruct({}, x, R1, R1) == LipLinearOperator::zero(x, R1, R1));

    IntegralCertificate one;
    one.atoms.push_back({{1, 0}, {1}, {r(3, 2)}});
    one.mass = r(3, 2);
    CHECK(reconstruct(one, x, R1, R1) ==
          elementary_operator(x, R1, R1, LipschitzFunctionVector{{1, 0}}, Vec{1}, Vec{r(3, 2)}));

    IntegralCertificate bad = one;
    bad.atoms[0].f = {2, 0};
    CHECK_THROWS_AS(reconstruct(bad, x, R1, R1), InvalidInput);
    CHECK(!verify_integral(bad, line_operator()).passed);
    bad = one;
    bad.atoms[0].functional = {2};
    CHECK_THROWS_AS(reconstruct(bad, x, R1, R1), InvalidInput);

    auto res = integral_norm(line_operator());
    auto fac = factorize_Linfty(res.certificate, x, R1);
    CHECK(fac.product == 1);
    CHECK(fac.product == res.value);

    auto empty = factorize_Linfty({}, x, R1);
    CHECK(empty.product == 0);
    CHECK(empty.mu.empty());

    IntegralCertificate vec;
    vec.atoms.push_back({{1, 2}, {1}, {1, 0}});
    CHECK_THROWS_AS(factorize_Linfty(vec, x, R1), DimensionMismatch);
    CHECK_THROWS_AS(eps_dual_check(LipLinearOperator::zero(x, R1, PolyhedralNorm::l1(2))), DimensionMismatch);

    // A certificate claiming the wrong mass fails.
    auto wrong = res.certificate;
    wrong.mass = 2;
    CHECK(!verify_integral(wrong, line_operator()).passed);
}
