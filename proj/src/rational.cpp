#include "lipbox/rational.hpp"

#include <algorithm>
#include <cctype>

#include <gmp.h>

#include "lipbox/error.hpp"

namespace lipbox {

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) throw InvalidInput("malformed number '" + std::string(whole) + "'");
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw InvalidInput("malformed number '" + std::string(whole) + "'");
        }
    }
    return Integer(std::string(digits));
}

// floor(a^(1/k)) for a >= 0; sets exact when the root is an integer.
Integer integer_root(const Integer& a, unsigned long k, bool& exact) {
    Integer r;
    exact = mpz_root(r.backend().data(), a.backend().data(), k) != 0;
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer num = parse_integer(s.substr(0, slash), text);
        Integer den = parse_integer(s.substr(slash + 1), text);
        if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
        value = Rational(num, den);
    } else if (auto dot_pos = s.find('.'); dot_pos != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot_pos);
        std::string_view frac_part = s.substr(dot_pos + 1);
        if (int_part.empty() && frac_part.empty()) {
            throw InvalidInput("malformed number '" + std::string(text) + "'");
        }
        Integer whole = int_part.empty() ? Integer(0) : parse_integer(int_part, text);
        Integer frac = frac_part.empty() ? Integer(0) : parse_integer(frac_part, text);
        Integer den = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
        value = Rational(whole * den + frac, den);
    } else {
        value = Rational(parse_integer(s, text));
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational dot(VecView a, VecView b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot product of vectors with different lengths");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    }
    return s;
}

Vec add(VecView a, VecView b) {
    if (a.size() != b.size()) throw DimensionMismatch("sum of vectors with different lengths");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vec subtract(VecView a, VecView b) {
    if (a.size() != b.size()) throw DimensionMismatch("difference of vectors with different lengths");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vec scale(VecView a, const Rational& s) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}

bool is_zero(VecView a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
}

Vec zeros(std::size_t n) { return Vec(n, Rational(0)); }

Vec unit_vector(std::size_t n, std::size_t i) {
    Vec v = zeros(n);
    v.at(i) = 1;
    return v;
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

Rational power(const Rational& x, unsigned k) {
    Integer n = boost::multiprecision::pow(numerator(x), k);
    Integer d = boost::multiprecision::pow(denominator(x), k);
    return Rational(n, d);
}

Bounds operator+(const Bounds& a, const Bounds& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Bounds operator*(const Bounds& a, const Bounds& b) { return {a.lo * b.lo, a.hi * b.hi}; }

Bounds root_bounds(const Rational& x, unsigned long k, unsigned precision_bits) {
    if (x < 0) throw InvalidInput("root of a negative number");
    if (k == 0) throw InvalidInput("zeroth root");
    if (x == 0 || k == 1) return Bounds::exact(x);
    const Integer& a = numerator(x);
    const Integer& b = denominator(x);
    bool exact_num = false;
    bool exact_den = false;
    Integer ra = integer_root(a, k, exact_num);
    Integer rb = integer_root(b, k, exact_den);
    if (exact_num && exact_den) return Bounds::exact(Rational(ra, rb));

    // floor((a * S^k / b)^(1/k)) / S with S = 2^shift chosen so the integer has
    // at least precision_bits significant bits.
    long bits_a = static_cast<long>(msb(a)) + 1;
    long bits_b = static_cast<long>(msb(b)) + 1;
    long needed = static_cast<long>(precision_bits) * static_cast<long>(k) + bits_b - bits_a + 2;
    unsigned long shift = static_cast<unsigned long>(std::max<long>(needed, 0) / static_cast<long>(k) + 1);
    Integer scaled = (a << (shift * k)) / b;
    bool ignored = false;
    Integer r = integer_root(scaled, k, ignored);
    Integer s = Integer(1) << shift;
    return {Rational(r, s), Rational(r + 1, s)};
}

Bounds pow_bounds(const Rational& x, const Rational& exponent, unsigned precision_bits) {
    if (exponent <= 0) throw InvalidInput("power with nonpositive exponent");
    if (x < 0) throw InvalidInput("fractional power of a negative number");
    const Integer& num = numerator(exponent);
    const Integer& den = denominator(exponent);
    if (num > 1u << 20 || den > 1u << 20) throw InvalidInput("exponent too large");
    Rational raised = power(x, num.convert_to<unsigned>());
    return root_bounds(raised, den.convert_to<unsigned long>(), precision_bits);
}

Bounds pow_bounds(const Bounds& x, const Rational& exponent, unsigned precision_bits) {
    Bounds lo = pow_bounds(x.lo, exponent, precision_bits);
    Bounds hi = pow_bounds(x.hi, exponent, precision_bits);
    return {lo.lo, hi.hi};
}

Bounds lr_norm_bounds(VecView values, const Rational& r, unsigned precision_bits) {
    if (r <= 0) throw InvalidInput("l_r norm with nonpositive r");
    std::size_t nonzero = 0;
    Rational last;
    for (const auto& v : values) {
        if (v != 0) {
            ++nonzero;
            last = abs(v);
        }
    }
    if (nonzero == 0) return Bounds::exact(0);
    if (nonzero == 1) return Bounds::exact(last);
    Bounds sum = Bounds::exact(0);
    for (const auto& v : values) {
        if (v != 0) sum = sum + pow_bounds(Rational(abs(v)), r, precision_bits);
    }
    Rational inv = 1 / r;
    return pow_bounds(sum, inv, precision_bits);
}

}  // namespace lipbox
