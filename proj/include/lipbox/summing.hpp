#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lipbox/operators.hpp"

namespace lipbox {

struct SummingOptions {
    Caps caps;
    // Relative gap at which approximate constraint generation stops.
    Rational tolerance{1, 1000000000};
    // Half-width of the integer direction grid used when q is neither 1 nor 2.
    long grid = 2;
};

// A symmetric seminorm phi on E, either as phi(e) = max_u |u.e| over a finite
// list of functionals or through an oracle returning certified bounds.
struct Seminorm {
    std::size_t dimension = 0;
    std::optional<std::vector<Vec>> functionals;
    std::function<Bounds(VecView)> oracle;

    static Seminorm from_functionals(std::size_t dimension, std::vector<Vec> functionals);
    static Seminorm from_oracle(std::size_t dimension, std::function<Bounds(VecView)> oracle);
    // e -> ||v e||_F.
    static Seminorm of_map(const Matrix& v, const PolyhedralNorm& f);

    Bounds operator()(VecView e) const;
};

struct DominationCertificate {
    enum class Kind { LipschitzP, LinearQ, TwoMeasure };
    Kind kind = Kind::LipschitzP;
    Rational p = 1;
    Rational q = 1;
    // Lipschitz-p: vertices of B_{X#}. Linear-q: dual vertices of B_E.
    // Two-measure: the first measure, on B_{X#}.
    std::vector<Vec> support;
    Vec weights;
    // Two-measure only: the second measure, on B_{E*}.
    std::vector<Vec> support2;
    Vec weights2;
    Rational constant = 0;
    std::string label;
};

std::string to_string(DominationCertificate::Kind kind);

struct SummingResult {
    Bounds value;
    bool exact = true;
    std::size_t iterations = 0;
    DominationCertificate certificate;
};

// Target distances over all ordered pairs of X, as certified intervals.
using DistanceTable = std::vector<std::vector<Bounds>>;

SummingResult lipschitz_p_summing(const FiniteMetricSpace& x, const DistanceTable& target, const Rational& p,
                                  const SummingOptions& options = {});
SummingResult lipschitz_p_summing(const LipschitzMap& r, const Rational& p, const SummingOptions& options = {});
SummingResult lipschitz_p_summing(const PointMap& r, const Rational& p, const SummingOptions& options = {});

SummingResult q_summing(const Seminorm& phi, const PolyhedralNorm& e, const Rational& q,
                        const SummingOptions& options = {});
SummingResult q_summing(const Matrix& v, const PolyhedralNorm& e, const PolyhedralNorm& f, const Rational& q,
                        const SummingOptions& options = {});

struct DominatedResult {
    Bounds value;
    bool exact = true;
    std::vector<DominationCertificate> certificates;
    // Route A: pi_q(A(x) - A(y)) for every pair; the subject of the
    // Lipschitz-p certificate.
    DistanceTable pair_targets;
    // Route B: e -> pi_p^L(x -> A(x) e); the subject of the linear-q certificate.
    std::optional<Seminorm> slice_seminorm;
};

DominatedResult dominated_via_A(const LipLinearOperator& t, const Rational& p, const Rational& q,
                                const SummingOptions& options = {});
DominatedResult dominated_via_B(const LipLinearOperator& t, const Rational& p, const Rational& q,
                                const SummingOptions& options = {});

// delta_(p,q)(T) through a product certificate: lower bound max of the two
// route values (each is dominated by delta), upper bound the constant of a
// two-measure certificate improved by alternating exact LPs (one measure
// fixed, the other optimal). Supports p = 1 and q in {1, 2}.
struct DominatedNorm {
    Bounds value;
    DominationCertificate certificate;  // two-measure
    DominatedResult route_a;
    DominatedResult route_b;
    std::size_t rounds = 0;
};

DominatedNorm dominated_norm(const LipLinearOperator& t, const Rational& p, const Rational& q,
                             const SummingOptions& options = {});

struct SampleTriple {
    std::size_t x = 0;
    std::size_t y = 0;
    Vec e;
};
using SequenceSample = std::vector<SampleTriple>;

// ||(T(x_i,e_i) - T(y_i,e_i))||_s / (sup_f ||(f(x_i) - f(y_i))||_p ||(e_i)||_{q,w})
// with 1/s = 1/p + 1/q. Throws InvalidInput on a zero denominator.
Bounds dominated_lower_bound(const LipLinearOperator& t, const Rational& p, const Rational& q,
                             const SequenceSample& sample);

struct VerificationReport {
    bool passed = true;
    bool exhaustive = true;
    std::size_t checked = 0;
    std::string witness;
};

VerificationReport verify_certificate(const DominationCertificate& cert, const FiniteMetricSpace& x,
                                      const DistanceTable& target);
VerificationReport verify_certificate(const DominationCertificate& cert, const LipschitzMap& r);
VerificationReport verify_certificate(const DominationCertificate& cert, const PolyhedralNorm& e,
                                      const Seminorm& phi, long grid = 2);
VerificationReport verify_certificate(const DominationCertificate& cert, const LipLinearOperator& t, long grid = 2);
// Every certificate of a dominated result, against its recorded subject.
VerificationReport verify_dominated(const DominatedResult& result, const LipLinearOperator& t);

// Exact distance table of x -> values under a norm.
DistanceTable distance_table(const FiniteMetricSpace& x, const std::function<Bounds(std::size_t, std::size_t)>& d);

}  // namespace lipbox
