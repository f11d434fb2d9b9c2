#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace lipbox {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Vec = std::vector<Rational>;
using VecView = std::span<const Rational>;

// Accepts "p/q", integers and finite decimals ("0.25", "-1.5e-2" is rejected).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

Rational dot(VecView a, VecView b);
Vec add(VecView a, VecView b);
Vec subtract(VecView a, VecView b);
Vec scale(VecView a, const Rational& s);
bool is_zero(VecView a);
Vec zeros(std::size_t n);
Vec unit_vector(std::size_t n, std::size_t i);

// Two-sided rational enclosure of a real number. lo == hi means exact.
struct Bounds {
    Rational lo;
    Rational hi;

    static Bounds exact(const Rational& v) { return {v, v}; }
    bool is_exact() const { return lo == hi; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool overlaps(const Bounds& other) const { return lo <= other.hi && other.lo <= hi; }
    friend bool operator==(const Bounds&, const Bounds&) = default;
};

Bounds operator+(const Bounds& a, const Bounds& b);
Bounds operator*(const Bounds& a, const Bounds& b);  // both nonnegative

// Enclosure of x^(1/k) for x >= 0; exact when x is a perfect k-th power.
// Otherwise the width is below 2^-precision_bits relative to the value.
Bounds root_bounds(const Rational& x, unsigned long k, unsigned precision_bits = 96);

// Enclosure of x^e for x >= 0 and rational e > 0.
Bounds pow_bounds(const Rational& x, const Rational& exponent, unsigned precision_bits = 96);
Bounds pow_bounds(const Bounds& x, const Rational& exponent, unsigned precision_bits = 96);

// Enclosure of the l_r (quasi-)norm (sum |t_i|^r)^(1/r), any rational r > 0.
Bounds lr_norm_bounds(VecView values, const Rational& r, unsigned precision_bits = 96);

bool is_integer(const Rational& r);
Rational power(const Rational& x, unsigned k);

}  // namespace lipbox
