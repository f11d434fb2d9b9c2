#include "lipbox/summing.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "lipbox/error.hpp"
#include "lipbox/lp.hpp"

namespace lipbox {

namespace {

void require_exponent(const Rational& r, const char* name) {
    if (r < 1) throw InvalidInput(std::string(name) + " must be at least 1");
}

// |a|^p, exact for integer p.
Bounds abs_pow(const Rational& a, const Rational& p) {
    Rational m = abs(a);
    if (is_integer(p)) return Bounds::exact(power(m, numerator(p).convert_to<unsigned>()));
    return pow_bounds(m, p);
}

Bounds pow_of(const Bounds& b, const Rational& p) {
    if (is_integer(p)) {
        unsigned k = numerator(p).convert_to<unsigned>();
        return {power(b.lo, k), power(b.hi, k)};
    }
    return pow_bounds(b, p);
}

// Mass bounds -> value bounds, value = mass^(1/p).
Bounds root_of_mass(const Rational& lo, const Rational& hi, const Rational& p) {
    Rational inv = 1 / p;
    return {pow_bounds(lo, inv).lo, pow_bounds(hi, inv).hi};
}

bool leading_positive(VecView v) {
    for (const auto& c : v) {
        if (c != 0) return c > 0;
    }
    return false;
}

// One vector from each {v, -v}, dropping zeros and duplicates.
std::vector<Vec> sign_representatives(const std::vector<Vec>& vs) {
    std::set<Vec> out;
    for (const auto& v : vs) {
        if (is_zero(v)) continue;
        out.insert(leading_positive(v) ? v : scale(v, -1));
    }
    return {out.begin(), out.end()};
}

// min sum nu subject to sum_k rows[c][k] nu_k >= rhs[c] for every constraint c.
LpSolution solve_mass(const std::vector<Vec>& rows, const Vec& rhs, std::size_t width) {
    LinearProgram lp(width, Sense::Minimize);
    lp.objective.assign(width, Rational(1));
    for (std::size_t c = 0; c < rows.size(); ++c) lp.add(rows[c], Relation::GreaterEqual, rhs[c]);
    LpSolution s = solve_lp(lp);
    if (s.status != LpStatus::Optimal) throw std::logic_error("domination LP is not solvable: " + to_string(s.status));
    return s;
}

DominationCertificate make_certificate(DominationCertificate::Kind kind, const std::vector<Vec>& support,
                                       const Vec& nu, const Rational& mass, const Rational& constant) {
    DominationCertificate cert;
    cert.kind = kind;
    cert.constant = constant;
    for (std::size_t k = 0; k < support.size(); ++k) {
        if (nu[k] == 0) continue;
        cert.support.push_back(support[k]);
        cert.weights.push_back(nu[k] / mass);
    }
    if (cert.support.empty()) {
        cert.support.push_back(support.front());
        cert.weights.push_back(1);
    }
    return cert;
}

std::string pair_label(const FiniteMetricSpace& x, std::size_t i, std::size_t j) {
    return "(" + x.label(i) + "," + x.label(j) + ")";
}

std::string vec_text(VecView v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

// Integer vectors in [-g, g]^d with positive leading entry.
std::vector<Vec> direction_grid(std::size_t d, long g) {
    std::vector<Vec> out;
    if (g <= 0) return out;
    Vec v(d, Rational(-g));
    for (;;) {
        if (leading_positive(v)) out.push_back(v);
        std::size_t i = 0;
        while (i < d && v[i] == g) v[i++] = -g;
        if (i == d) break;
        v[i] += 1;
    }
    return out;
}

// Clears denominators and, past 2^24, rounds to a nearby integer vector.
Vec tame_direction(VecView x) {
    Integer l = 1;
    for (const auto& c : x) l = lcm(l, Integer(denominator(c)));
    Vec out;
    Integer biggest = 0;
    for (const auto& c : x) {
        Integer v = Integer(numerator(c)) * (l / Integer(denominator(c)));
        biggest = std::max(biggest, Integer(abs(v)));
        out.push_back(Rational(v));
    }
    const Integer limit = Integer(1) << 24;
    if (biggest > limit) {
        for (auto& c : out) {
            Rational s = c * Rational(limit) / Rational(biggest);
            Integer fl = numerator(s) / denominator(s);
            if (s < 0 && Rational(fl) != s) fl -= 1;
            c = (s - Rational(fl) >= Rational(1, 2)) ? Rational(fl + 1) : Rational(fl);
        }
    }
    return out;
}

// Vertices of conv(points) after dropping duplicates; a point is removed when
// a small LP writes it as a convex combination of the others.
std::vector<Vec> prune_to_extreme(std::vector<Vec> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() <= 4) return points;
    std::vector<Vec> kept = points;
    for (std::size_t i = 0; i < kept.size();) {
        std::vector<Vec> others;
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (j != i) others.push_back(kept[j]);
        const std::size_t d = kept[i].size();
        LinearProgram lp(others.size(), Sense::Minimize);
        for (std::size_t r = 0; r < d; ++r) {
            Vec row(others.size());
            for (std::size_t j = 0; j < others.size(); ++j) row[j] = others[j][r];
            lp.add(std::move(row), Relation::Equal, kept[i][r]);
        }
        lp.add(Vec(others.size(), Rational(1)), Relation::Equal, 1);
        if (solve_lp(lp).status == LpStatus::Optimal) {
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    return kept;
}

}  // namespace

std::string to_string(DominationCertificate::Kind kind) {
    switch (kind) {
        case DominationCertificate::Kind::LipschitzP: return "lipschitz-p";
        case DominationCertificate::Kind::LinearQ: return "linear-q";
        case DominationCertificate::Kind::TwoMeasure: return "two-measure";
    }
    return "?";
}

// ---------------------------------------------------------------- seminorms

Seminorm Seminorm::from_functionals(std::size_t dimension, std::vector<Vec> functionals) {
    for (const auto& u : functionals) {
        if (u.size() != dimension) throw DimensionMismatch("seminorm functional of wrong length");
    }
    Seminorm s;
    s.dimension = dimension;
    s.functionals = sign_representatives(functionals);
    return s;
}

Seminorm Seminorm::from_oracle(std::size_t dimension, std::function<Bounds(VecView)> oracle) {
    Seminorm s;
    s.dimension = dimension;
    s.oracle = std::move(oracle);
    return s;
}

Seminorm Seminorm::of_map(const Matrix& v, const PolyhedralNorm& f) {
    if (v.rows() != f.dimension()) throw DimensionMismatch("map does not land in the codomain norm");
    std::vector<Vec> us;
    for (const auto& z : f.dual_representatives()) us.push_back(v.apply_transpose(z));
    return from_functionals(v.cols(), std::move(us));
}

Bounds Seminorm::operator()(VecView e) const {
    if (e.size() != dimension) throw DimensionMismatch("vector does not match the seminorm");
    if (functionals) {
        Rational best = 0;
        for (const auto& u : *functionals) best = std::max(best, abs(dot(u, e)));
        return Bounds::exact(best);
    }
    return oracle(e);
}

DistanceTable distance_table(const FiniteMetricSpace& x, const std::function<Bounds(std::size_t, std::size_t)>& d) {
    DistanceTable t(x.size(), std::vector<Bounds>(x.size(), Bounds::exact(0)));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) t[i][j] = t[j][i] = d(i, j);
    return t;
}

// ------------------------------------------------------ Lipschitz p-summing
//
// The measure lives on vertices of B_{X#}: |f(x) - f(y)|^p is convex in f, so
// moving mass from any f to the vertices of a face containing it only raises
// every constraint integral.

SummingResult lipschitz_p_summing(const FiniteMetricSpace& x, const DistanceTable& target, const Rational& p,
                                  const SummingOptions& options) {
    require_exponent(p, "p");
    if (target.size() != x.size()) throw DimensionMismatch("distance table does not match the metric space");
    std::vector<Vec> support = sign_representatives(cached_ball_vertices(x, options.caps));

    std::vector<std::vector<Bounds>> coeff;
    std::vector<Bounds> rhs;
    bool exact_data = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const Bounds& d = target[i][j];
            if (d.hi == 0) continue;
            std::vector<Bounds> row;
            for (const auto& v : support) {
                row.push_back(abs_pow(at_point(v, i) - at_point(v, j), p));
                exact_data = exact_data && row.back().is_exact();
            }
            coeff.push_back(std::move(row));
            rhs.push_back(pow_of(d, p));
            exact_data = exact_data && rhs.back().is_exact();
        }
    }

    SummingResult out;
    out.certificate.p = p;
    if (rhs.empty()) {
        out.value = Bounds::exact(0);
        out.certificate = make_certificate(DominationCertificate::Kind::LipschitzP, support,
                                           Vec(support.size(), Rational(0)), 1, 0);
        out.certificate.p = p;
        return out;
    }

    auto solve_side = [&](bool upper) {
        std::vector<Vec> rows;
        Vec b;
        for (std::size_t c = 0; c < coeff.size(); ++c) {
            Vec row;
            for (const auto& a : coeff[c]) row.push_back(upper ? a.lo : a.hi);
            rows.push_back(std::move(row));
            b.push_back(upper ? rhs[c].hi : rhs[c].lo);
        }
        return solve_mass(rows, b, support.size());
    };
    LpSolution hi = solve_side(true);
    Rational mass_lo = exact_data ? hi.value : solve_side(false).value;
    out.value = root_of_mass(mass_lo, hi.value, p);
    out.exact = out.value.is_exact();
    out.iterations = 1;
    out.certificate =
        make_certificate(DominationCertificate::Kind::LipschitzP, support, hi.primal, hi.value, out.value.hi);
    out.certificate.p = p;
    return out;
}

SummingResult lipschitz_p_summing(const LipschitzMap& r, const Rational& p, const SummingOptions& options) {
    auto t = distance_table(r.domain, [&](std::size_t i, std::size_t j) {
        return Bounds::exact(r.codomain(subtract(r.at(i), r.at(j))));
    });
    return lipschitz_p_summing(r.domain, t, p, options);
}

SummingResult lipschitz_p_summing(const PointMap& r, const Rational& p, const SummingOptions& options) {
    auto t = distance_table(r.domain, [&](std::size_t i, std::size_t j) {
        return Bounds::exact(r.codomain.distance(r.image[i], r.image[j]));
    });
    return lipschitz_p_summing(r.domain, t, p, options);
}

namespace {

// Cell rays of the arrangement of W_E together with extra hyperplanes.
std::vector<Vec> cell_rays(const PolyhedralNorm& e, const std::vector<Vec>& extra) {
    if (extra.empty()) return sign_representatives(arrangement_rays(e));
    std::vector<Vec> w = e.dual_vertices();
    for (const auto& s : extra) {
        if (is_zero(s)) continue;
        w.push_back(s);
        w.push_back(scale(s, -1));
    }
    Caps wide;
    wide.dim = e.dimension();
    return sign_representatives(arrangement_rays(PolyhedralNorm::from_dual_vertices(w, wide)));
}

}  // namespace

// ------------------------------------------------------------- q-summing
//
// As above, the measure lives on vertices of B_{E*}: |w(e)|^q is convex in w.

namespace {

struct MassProblem {
    std::vector<Vec> support;
    std::vector<Vec> rows;
    Vec rhs;

    void add_direction(VecView e, const Rational& phi, const Rational& q) {
        Vec row;
        for (const auto& w : support) row.push_back(abs_pow(dot(w, e), q).lo);
        rows.push_back(std::move(row));
        rhs.push_back(phi);
    }
};

SummingResult zero_result(const std::vector<Vec>& support, const Rational& q) {
    SummingResult out;
    out.value = Bounds::exact(0);
    out.certificate = make_certificate(DominationCertificate::Kind::LinearQ, support, Vec(support.size(), Rational(0)),
                                       1, 0);
    out.certificate.q = q;
    return out;
}

// q = 1 with explicit functionals. Constraint generation; a direction is
// violated when, for some u, max_{e in B_E} u.e - sum nu_w |w.e| > 0, an LP in
// (e, t) with t_w >= +-w.e.
SummingResult pi1_cutting_plane(const std::vector<Vec>& us, const PolyhedralNorm& e, const SummingOptions& options) {
    const std::size_t d = e.dimension();
    MassProblem prob;
    prob.support = e.dual_representatives();
    const auto& w = prob.support;
    auto phi = [&](VecView v) {
        Rational best = 0;
        for (const auto& u : us) best = std::max(best, abs(dot(u, v)));
        return best;
    };
    for (const auto& v : sign_representatives(e.primal_generators())) prob.add_direction(v, phi(v), 1);

    for (std::size_t iter = 1; iter <= options.caps.iterations; ++iter) {
        LpSolution s = solve_mass(prob.rows, prob.rhs, w.size());
        std::vector<Vec> cuts;
        for (const auto& u : us) {
            LinearProgram lp(d + w.size(), Sense::Maximize);
            for (std::size_t j = 0; j < d; ++j) {
                lp.objective[j] = u[j];
                lp.set_free(j);
            }
            for (std::size_t k = 0; k < w.size(); ++k) {
                lp.objective[d + k] = -s.primal[k];
                Vec plus(d + w.size()), minus(d + w.size());
                for (std::size_t j = 0; j < d; ++j) {
                    plus[j] = -w[k][j];
                    minus[j] = w[k][j];
                }
                plus[d + k] = minus[d + k] = 1;
                lp.add(std::move(plus), Relation::GreaterEqual, 0);
                lp.add(std::move(minus), Relation::GreaterEqual, 0);
            }
            for (const auto& wv : e.dual_vertices()) {
                Vec row(d + w.size());
                std::copy(wv.begin(), wv.end(), row.begin());
                lp.add(std::move(row), Relation::LessEqual, 1);
            }
            LpSolution v = solve_lp(lp);
            if (v.status != LpStatus::Optimal) throw std::logic_error("violation LP is not solvable");
            if (v.value > 0) cuts.emplace_back(v.primal.begin(), v.primal.begin() + static_cast<std::ptrdiff_t>(d));
        }
        if (cuts.empty()) {
            SummingResult out;
            out.value = Bounds::exact(s.value);
            out.iterations = iter;
            out.certificate = make_certificate(DominationCertificate::Kind::LinearQ, w, s.primal, s.value, s.value);
            return out;
        }
        for (const auto& c : sign_representatives(cuts)) prob.add_direction(c, phi(c), 1);
    }
    throw NonConvergence("q-summing constraint generation reached the iteration cap of " +
                         std::to_string(options.caps.iterations));
}

// q = 1 with an oracle. sum nu_w |w.e| is linear on each cell of the
// arrangement of the hyperplanes w.e = 0 and phi is convex and positively
// homogeneous, so checking the extreme rays of the cells is exhaustive.
SummingResult pi1_rays(const Seminorm& phi, const PolyhedralNorm& e) {
    std::vector<Vec> support = e.dual_representatives();
    std::vector<Vec> rays = sign_representatives(arrangement_rays(e));
    std::vector<Vec> rows;
    Vec lo, hi;
    bool exact = true;
    for (const auto& r : rays) {
        Vec row;
        for (const auto& w : support) row.push_back(abs(dot(w, r)));
        rows.push_back(std::move(row));
        Bounds b = phi(r);
        lo.push_back(b.lo);
        hi.push_back(b.hi);
        exact = exact && b.is_exact();
    }
    if (std::all_of(hi.begin(), hi.end(), [](const Rational& v) { return v == 0; })) return zero_result(support, 1);
    LpSolution up = solve_mass(rows, hi, support.size());
    Rational mass_lo = exact ? up.value : solve_mass(rows, lo, support.size()).value;
    SummingResult out;
    out.value = {mass_lo, up.value};
    out.exact = exact;
    out.iterations = 1;
    out.certificate = make_certificate(DominationCertificate::Kind::LinearQ, support, up.primal, up.value, up.value);
    return out;
}

Matrix gram(const std::vector<Vec>& support, VecView nu, std::size_t d) {
    Matrix g(d, d);
    for (std::size_t k = 0; k < support.size(); ++k) {
        if (nu[k] == 0) continue;
        g = g + nu[k] * outer(support[k], support[k]);
    }
    return g;
}

struct GramCheck {
    bool in_range = true;
    Vec kernel_direction;  // set when some u leaves range(G)
    Rational worst = 0;    // max u^T G^+ u
    std::vector<std::pair<Rational, Vec>> directions;  // (u^T G^+ u, G^+ u)
};

GramCheck check_gram(const Matrix& g, const std::vector<Vec>& us) {
    GramCheck c;
    std::vector<Vec> grows;
    for (std::size_t i = 0; i < g.rows(); ++i) grows.emplace_back(g.row(i).begin(), g.row(i).end());
    for (const auto& u : us) {
        auto x = solve(g, u);
        if (!x) {
            c.in_range = false;
            for (const auto& k : kernel(grows, g.cols())) {
                if (dot(k, u) != 0) {
                    c.kernel_direction = k;
                    break;
                }
            }
            return c;
        }
        Rational val = dot(u, *x);
        c.worst = std::max(c.worst, val);
        c.directions.emplace_back(val, *x);
    }
    return c;
}

// q = 2 with explicit functionals. For a measure nu, phi(e)^2 <= e^T G e with
// G = sum nu_w w w^T holds iff u^T G^+ u <= 1 for every u (and u in range G).
// Scaling nu by lambda^2 = max_u u^T G^+ u makes any restricted optimum
// feasible, giving an upper bound; the restricted LP gives the lower bound and
// G^+ u is the most violated direction for u.
SummingResult pi2_gram(const std::vector<Vec>& us, const PolyhedralNorm& e, const SummingOptions& options) {
    const std::size_t d = e.dimension();
    MassProblem prob;
    prob.support = e.dual_representatives();
    auto phi2 = [&](VecView v) {
        Rational best = 0;
        for (const auto& u : us) best = std::max(best, abs(dot(u, v)));
        return best * best;
    };
    for (const auto& v : sign_representatives(e.primal_generators())) prob.add_direction(v, phi2(v), 2);

    Rational best_upper = -1;
    Vec best_nu;
    Rational best_nu_mass;
    Rational lower = 0;
    for (std::size_t iter = 1; iter <= options.caps.iterations; ++iter) {
        LpSolution s = solve_mass(prob.rows, prob.rhs, prob.support.size());
        lower = std::max(lower, s.value);
        GramCheck c = check_gram(gram(prob.support, s.primal, d), us);
        if (!c.in_range) {
            Vec k = tame_direction(c.kernel_direction);
            prob.add_direction(k, phi2(k), 2);
            continue;
        }
        Rational scale_by = std::max(Rational(1), c.worst);
        Rational upper = scale_by * s.value;
        if (best_upper < 0 || upper < best_upper) {
            best_upper = upper;
            best_nu = scale(s.primal, scale_by);
            best_nu_mass = upper;
        }
        if (c.worst <= 1 || best_upper - lower <= options.tolerance * best_upper) {
            SummingResult out;
            out.exact = c.worst <= 1;
            out.iterations = iter;
            Bounds value = root_of_mass(lower, best_upper, 2);
            out.value = value;
            out.certificate =
                make_certificate(DominationCertificate::Kind::LinearQ, prob.support, best_nu, best_nu_mass, value.hi);
            out.certificate.q = 2;
            return out;
        }
        std::sort(c.directions.begin(), c.directions.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        std::size_t added = 0;
        for (const auto& [val, x] : c.directions) {
            if (val <= 1 || added == 4) break;
            Vec dir = tame_direction(x);
            if (is_zero(dir)) continue;
            prob.add_direction(dir, phi2(dir), 2);
            ++added;
        }
    }
    std::ostringstream msg;
    msg << "q-summing constraint generation reached the iteration cap of " << options.caps.iterations
        << "; mass bounds [" << to_string(lower) << ", " << (best_upper < 0 ? "inf" : to_string(best_upper)) << "]";
    throw NonConvergence(msg.str());
}

}  // namespace

SummingResult q_summing(const Seminorm& phi, const PolyhedralNorm& e, const Rational& q,
                        const SummingOptions& options) {
    require_exponent(q, "q");
    if (phi.dimension != e.dimension()) throw DimensionMismatch("seminorm and domain norm differ in dimension");
    std::vector<Vec> support = e.dual_representatives();
    if (phi.functionals && phi.functionals->empty()) return zero_result(support, q);

    SummingResult out;
    if (q == 1) {
        out = phi.functionals ? pi1_cutting_plane(*phi.functionals, e, options) : pi1_rays(phi, e);
        out.certificate.q = 1;
        return out;
    }
    if (q == 2 && phi.functionals) return pi2_gram(*phi.functionals, e, options);

    // Other q: a restricted LP over generators, cell rays and a grid bounds
    // the mass from below; pi_q <= pi_2 (q >= 2) or pi_q <= pi_1 bounds it
    // from above, and that measure is the certificate.
    std::vector<Vec> dirs = sign_representatives(e.primal_generators());
    for (const auto& r : sign_representatives(arrangement_rays(e))) dirs.push_back(r);
    for (auto& g : direction_grid(e.dimension(), options.grid)) dirs.push_back(std::move(g));
    dirs = sign_representatives(dirs);
    std::vector<Vec> rows;
    Vec rhs;
    for (const auto& dv : dirs) {
        Vec row;
        for (const auto& w : support) row.push_back(abs_pow(dot(w, dv), q).hi);
        rows.push_back(std::move(row));
        rhs.push_back(pow_of(Bounds::exact(phi(dv).lo), q).lo);
    }
    Rational mass_lo = solve_mass(rows, rhs, support.size()).value;
    SummingResult upper = q > 2 && phi.functionals ? q_summing(phi, e, 2, options) : q_summing(phi, e, 1, options);
    out.value = {pow_bounds(mass_lo, 1 / q).lo, upper.value.hi};
    out.exact = false;
    out.iterations = upper.iterations;
    out.certificate = upper.certificate;
    return out;
}

SummingResult q_summing(const Matrix& v, const PolyhedralNorm& e, const PolyhedralNorm& f, const Rational& q,
                        const SummingOptions& options) {
    if (v.cols() != e.dimension()) throw DimensionMismatch("map does not match the domain norm");
    return q_summing(Seminorm::of_map(v, f), e, q, options);
}

// ------------------------------------------------------ dominated (p, q)

DominatedResult dominated_via_A(const LipLinearOperator& t, const Rational& p, const Rational& q,
                                const SummingOptions& options) {
    require_exponent(p, "p");
    require_exponent(q, "q");
    const auto& x = t.domain();
    DominatedResult out;
    out.pair_targets.assign(x.size(), std::vector<Bounds>(x.size(), Bounds::exact(0)));
    std::vector<DominationCertificate> pair_certs;
    bool exact = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            Matrix diff = t.at(i) - t.at(j);
            if (diff.is_zero()) continue;
            SummingResult r = q_summing(diff, t.domain_norm(), t.codomain_norm(), q, options);
            out.pair_targets[i][j] = out.pair_targets[j][i] = r.value;
            exact = exact && r.exact;
            r.certificate.label = "pi_q of A" + pair_label(x, i, j);
            pair_certs.push_back(std::move(r.certificate));
        }
    }
    SummingResult lp = lipschitz_p_summing(x, out.pair_targets, p, options);
    lp.certificate.label = "pi_p^L of x -> A(x)";
    lp.certificate.q = q;
    out.value = lp.value;
    out.exact = exact && lp.exact;
    out.certificates.push_back(std::move(lp.certificate));
    for (auto& c : pair_certs) out.certificates.push_back(std::move(c));
    return out;
}

namespace {

// For p = 1, pi_1^L(x -> A(x) e) = max over vertices lambda of
// { lambda >= 0 : sum_(x,y) lambda_xy |f(x) - f(y)| <= 1 for f in vert B_{X#} }
// of sum lambda_xy ||(A(x) - A(y)) e||_F, which is a max of linear functionals
// in e: Minkowski sums over the supported pairs of {(A(x) - A(y))^T z}.
std::optional<std::vector<Vec>> slice_functionals(const LipLinearOperator& t, const Caps& caps) {
    const auto& x = t.domain();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) pairs.emplace_back(i, j);
    if (pairs.size() > caps.ambient_dim) return std::nullopt;
    std::vector<Vec> fs = sign_representatives(cached_ball_vertices(x, caps));
    Polytope lambda;
    lambda.dimension = pairs.size();
    for (std::size_t k = 0; k < pairs.size(); ++k) lambda.add(scale(unit_vector(pairs.size(), k), -1), 0);
    for (const auto& f : fs) {
        Vec row;
        for (auto [i, j] : pairs) row.push_back(abs(at_point(f, i) - at_point(f, j)));
        lambda.add(std::move(row), 1);
    }
    std::vector<std::vector<Vec>> pieces;
    for (auto [i, j] : pairs) {
        Matrix diff = t.at(i) - t.at(j);
        std::vector<Vec> us;
        for (const auto& z : t.codomain_norm().dual_vertices()) us.push_back(diff.apply_transpose(z));
        pieces.push_back(prune_to_extreme(std::move(us)));
    }
    std::vector<Vec> all;
    for (const auto& lam : enumerate_vertices(lambda, caps)) {
        std::vector<Vec> acc = {zeros(t.domain_norm().dimension())};
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            if (lam[k] == 0) continue;
            std::vector<Vec> next;
            for (const auto& a : acc)
                for (const auto& u : pieces[k]) next.push_back(add(a, scale(u, lam[k])));
            acc = prune_to_extreme(std::move(next));
        }
        for (auto& a : acc) all.push_back(std::move(a));
        if (all.size() > caps.vertices) throw CapExceeded("vertices", caps.vertices, all.size());
    }
    for (auto& a : all) {
        if (!leading_positive(a)) a = scale(a, -1);
    }
    all = sign_representatives(all);
    std::vector<Vec> sym = all;
    for (const auto& a : all) sym.push_back(scale(a, -1));
    std::vector<Vec> ext = prune_to_extreme(std::move(sym));
    return sign_representatives(ext);
}

}  // namespace

DominatedResult dominated_via_B(const LipLinearOperator& t, const Rational& p, const Rational& q,
                                const SummingOptions& options) {
    require_exponent(p, "p");
    require_exponent(q, "q");
    std::optional<Seminorm> phi;
    if (p == 1) {
        if (auto us = slice_functionals(t, options.caps)) {
            phi = Seminorm::from_functionals(t.domain_norm().dimension(), std::move(*us));
        }
    }
    if (!phi) {
        SummingOptions inner = options;
        phi = Seminorm::from_oracle(t.domain_norm().dimension(), [t, p, inner](VecView e) {
            return lipschitz_p_summing(t.slice(e), p, inner).value;
        });
    }
    SummingResult r = q_summing(*phi, t.domain_norm(), q, options);
    r.certificate.p = p;
    r.certificate.label = "pi_q of e -> pi_p^L(x -> A(x) e)";
    DominatedResult out;
    out.value = r.value;
    out.exact = r.exact;
    out.certificates.push_back(std::move(r.certificate));
    out.slice_seminorm = std::move(phi);
    return out;
}

namespace {

// sup_e ||D e||_F / (sum_k mu_k |w_k e|^q)^(1/q); nullopt when unbounded.
std::optional<Bounds> pair_ratio(const Matrix& diff, const PolyhedralNorm& e, const PolyhedralNorm& f,
                                 const std::vector<Vec>& support, const Vec& weights, const Rational& q) {
    if (q == 2) {
        GramCheck c = check_gram(gram(support, weights, e.dimension()), Seminorm::of_map(diff, f).functionals.value());
        if (!c.in_range) return std::nullopt;
        return root_bounds(c.worst, 2);
    }
    Rational best = 0;
    for (const auto& r : cell_rays(e, support)) {
        Rational num = f(diff.apply(r));
        Rational den = 0;
        for (std::size_t k = 0; k < support.size(); ++k) den += weights[k] * abs(dot(support[k], r));
        if (den == 0) {
            if (num > 0) return std::nullopt;
            continue;
        }
        best = std::max(best, num / den);
    }
    return Bounds::exact(best);
}

DominationCertificate two_measure(const DominationCertificate& first, const DominationCertificate& second,
                                  const Rational& constant, const Rational& p, const Rational& q) {
    DominationCertificate c;
    c.kind = DominationCertificate::Kind::TwoMeasure;
    c.p = p;
    c.q = q;
    c.support = first.support;
    c.weights = first.weights;
    c.support2 = second.support;
    c.weights2 = second.weights;
    c.constant = constant;
    c.label = "delta_(p,q) of T";
    return c;
}

// For q = 1 and mu2 on the sign classes W of vert B_{E*}, the best constant
// g(mu2) = max_lambda sum_xy lambda_xy max_r ||D_xy r|| / sum_k mu2_k |w_k r|
// (r over cell rays of W) is convex in mu2, so Kelley's cutting planes bracket
// min g = delta from both sides in exact arithmetic.
struct KelleyResult {
    Rational lower;
    Rational upper;
    Vec mu;
    std::size_t rounds = 0;
};

struct GValue {
    bool finite = false;
    Rational value;
    Vec subgradient;
};

Vec tame_simplex(const Vec& mu) {
    const Rational scale_den(Integer(1) << 48);
    Vec out(mu.size());
    Rational total = 0;
    std::size_t top = 0;
    for (std::size_t k = 0; k < mu.size(); ++k) {
        Rational v = mu[k] * scale_den;
        out[k] = Rational(numerator(v) / denominator(v)) / scale_den;
        total += out[k];
        if (mu[k] > mu[top]) top = k;
    }
    out[top] += 1 - total;
    return out;
}

KelleyResult kelley_mu2(const LipLinearOperator& t, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                        const Vec& start, const Rational& floor, const SummingOptions& options) {
    const auto& x = t.domain();
    const auto& e = t.domain_norm();
    const auto& f = t.codomain_norm();
    const std::vector<Vec> w = e.dual_representatives();
    const std::vector<Vec> rays = cell_rays(e, {});
    const std::vector<Vec> fs = sign_representatives(cached_ball_vertices(x, options.caps));
    const std::size_t k_count = w.size();

    // |w_k r| and ||D_xy r|| tables.
    std::vector<Vec> wr(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r)
        for (const auto& wk : w) wr[r].push_back(abs(dot(wk, rays[r])));
    std::vector<Vec> nr(pairs.size());
    for (std::size_t m = 0; m < pairs.size(); ++m) {
        Matrix diff = t.at(pairs[m].first) - t.at(pairs[m].second);
        for (const auto& ray : rays) nr[m].push_back(f(diff.apply(ray)));
    }
    LinearProgram dual(pairs.size(), Sense::Maximize);
    for (const auto& fv : fs) {
        Vec row;
        for (auto [i, j] : pairs) row.push_back(abs(at_point(fv, i) - at_point(fv, j)));
        dual.add(std::move(row), Relation::LessEqual, 1);
    }

    auto evaluate = [&](const Vec& mu) {
        GValue out;
        std::vector<std::size_t> active(pairs.size(), 0);
        Vec ratio(pairs.size(), Rational(0));
        for (std::size_t m = 0; m < pairs.size(); ++m) {
            for (std::size_t r = 0; r < rays.size(); ++r) {
                if (nr[m][r] == 0) continue;
                Rational l = dot(mu, wr[r]);
                if (l == 0) return out;
                if (nr[m][r] / l > ratio[m]) {
                    ratio[m] = nr[m][r] / l;
                    active[m] = r;
                }
            }
        }
        LinearProgram lp = dual;
        lp.objective = ratio;
        LpSolution sol = solve_lp(lp);
        out.finite = true;
        out.value = sol.value;
        out.subgradient.assign(k_count, Rational(0));
        for (std::size_t m = 0; m < pairs.size(); ++m) {
            if (sol.primal[m] == 0 || ratio[m] == 0) continue;
            std::size_t r = active[m];
            Rational l = dot(mu, wr[r]);
            Rational c = sol.primal[m] * nr[m][r] / (l * l);
            for (std::size_t k = 0; k < k_count; ++k) out.subgradient[k] -= c * wr[r][k];
        }
        return out;
    };

    LinearProgram master(k_count + 1, Sense::Minimize);
    master.objective[k_count] = 1;
    master.set_free(k_count);
    Vec ones(k_count + 1, Rational(1));
    ones[k_count] = 0;
    master.add(ones, Relation::Equal, 1);

    KelleyResult out;
    auto cut = [&](const Vec& mu) {
        GValue g = evaluate(mu);
        if (!g.finite) return g;
        // Rounding the cut down keeps it valid on nu >= 0 and keeps the
        // master LP's numbers small.
        const Rational grain(Integer(1) << 40);
        auto down = [&](const Rational& v) {
            Rational scaled = v * grain;
            Integer fl = numerator(scaled) / denominator(scaled);
            if (Rational(fl) > scaled) fl -= 1;
            return Rational(fl) / grain;
        };
        Vec row(k_count + 1);
        for (std::size_t k = 0; k < k_count; ++k) row[k] = -down(g.subgradient[k]);
        row[k_count] = 1;
        master.add(std::move(row), Relation::GreaterEqual, down(g.value - dot(g.subgradient, mu)));
        if (out.mu.empty() || g.value < out.upper) {
            out.upper = g.value;
            out.mu = mu;
        }
        return g;
    };
    cut(start);
    cut(Vec(k_count, Rational(1, static_cast<long>(k_count))));
    if (out.mu.empty()) throw std::logic_error("no finite starting measure");
    out.lower = floor;
    for (std::size_t round = 0; round < options.caps.iterations; ++round) {
        ++out.rounds;
        LpSolution sol = solve_lp(master);
        out.lower = std::max(out.lower, sol.value);
        if (out.upper - out.lower <= options.tolerance * out.upper) break;
        Vec mu(sol.primal.begin(), sol.primal.begin() + static_cast<std::ptrdiff_t>(k_count));
        mu = tame_simplex(mu);
        // Pull an unbounded point toward the incumbent until g is finite.
        for (int halve = 0; halve < 64 && !cut(mu).finite; ++halve)
            for (std::size_t k = 0; k < k_count; ++k) mu[k] = (mu[k] + out.mu[k]) / 2;
    }
    return out;
}

}  // namespace

DominatedNorm dominated_norm(const LipLinearOperator& t, const Rational& p, const Rational& q,
                             const SummingOptions& options) {
    if (p != 1 || (q != 1 && q != 2)) throw InvalidInput("dominated_norm supports p = 1 and q in {1, 2}");
    const auto& x = t.domain();
    const auto& e = t.domain_norm();
    const auto& f = t.codomain_norm();
    DominatedNorm out;
    out.route_a = dominated_via_A(t, p, q, options);
    out.route_b = dominated_via_B(t, p, q, options);
    const Rational lower = std::max(out.route_a.value.lo, out.route_b.value.lo);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (!(t.at(i) - t.at(j)).is_zero()) pairs.emplace_back(i, j);

    const DominationCertificate& mu1_a = out.route_a.certificates.front();
    const DominationCertificate& mu2_b = out.route_b.certificates.front();
    if (pairs.empty()) {
        out.value = Bounds::exact(0);
        out.certificate = two_measure(mu1_a, mu2_b, 0, p, q);
        return out;
    }

    std::optional<DominationCertificate> best;
    auto offer = [&](DominationCertificate c) {
        if (!best || c.constant < best->constant) {
            best = std::move(c);
            return true;
        }
        return false;
    };
    // mu2 fixed: c_xy = sup_e ||D_xy e|| / mu2-term, then the optimal mu1.
    auto mu1_step = [&](const DominationCertificate& mu2) -> std::optional<DominationCertificate> {
        DistanceTable table(x.size(), std::vector<Bounds>(x.size(), Bounds::exact(0)));
        for (auto [i, j] : pairs) {
            auto c = pair_ratio(t.at(i) - t.at(j), e, f, mu2.support, mu2.weights, q);
            if (!c) return std::nullopt;
            table[i][j] = table[j][i] = *c;
        }
        SummingResult r = lipschitz_p_summing(x, table, p, options);
        return two_measure(r.certificate, mu2, r.value.hi, p, q);
    };
    // mu1 fixed: the optimal mu2 for e -> max_xy ||D_xy e|| / mu1-term.
    auto mu2_step = [&](const DominationCertificate& mu1) -> std::optional<DominationCertificate> {
        std::vector<Vec> us;
        for (auto [i, j] : pairs) {
            Rational m = 0;
            for (std::size_t k = 0; k < mu1.support.size(); ++k)
                m += mu1.weights[k] * abs(at_point(mu1.support[k], i) - at_point(mu1.support[k], j));
            if (m == 0) return std::nullopt;
            Matrix diff = t.at(i) - t.at(j);
            for (const auto& z : f.dual_representatives()) us.push_back(scale(diff.apply_transpose(z), 1 / m));
        }
        SummingResult r = q_summing(Seminorm::from_functionals(e.dimension(), std::move(us)), e, q, options);
        return two_measure(mu1, r.certificate, r.value.hi, p, q);
    };

    // Each chain descends until its own value stalls; the problem is bilinear,
    // so several starts are tried.
    auto alternate = [&](std::optional<DominationCertificate> c, bool next_is_mu1) {
        std::optional<Rational> previous;
        for (std::size_t round = 0; c && round < options.caps.iterations; ++round) {
            ++out.rounds;
            if (previous && c->constant >= *previous) break;
            previous = c->constant;
            offer(*c);
            if (best->constant == lower) break;
            DominationCertificate mu;
            mu.support = next_is_mu1 ? c->support2 : c->support;
            mu.weights = next_is_mu1 ? c->weights2 : c->weights;
            c = next_is_mu1 ? mu1_step(mu) : mu2_step(mu);
            next_is_mu1 = !next_is_mu1;
        }
    };
    alternate(mu1_step(mu2_b), false);
    if (best->constant != lower) alternate(mu2_step(mu1_a), true);
    if (best->constant != lower) {
        DominationCertificate uniform;
        uniform.support = e.dual_representatives();
        uniform.weights.assign(uniform.support.size(), Rational(1, static_cast<long>(uniform.support.size())));
        alternate(mu1_step(uniform), false);
    }
    if (best->constant != lower) {
        DominationCertificate uniform;
        uniform.support = sign_representatives(cached_ball_vertices(x, options.caps));
        uniform.weights.assign(uniform.support.size(), Rational(1, static_cast<long>(uniform.support.size())));
        alternate(mu2_step(uniform), true);
    }
    if (!best) throw std::logic_error("no two-measure certificate found");
    Rational certified_lower = lower;
    if (q == 1 && best->constant != lower) {
        // Refine over measures on W with a convex cutting-plane method.
        std::vector<Vec> w = e.dual_representatives();
        Vec start(w.size(), Rational(0));
        for (std::size_t k = 0; k < best->support2.size(); ++k) {
            Vec rep = leading_positive(best->support2[k]) ? best->support2[k] : scale(best->support2[k], -1);
            for (std::size_t j = 0; j < w.size(); ++j)
                if ((leading_positive(w[j]) ? w[j] : scale(w[j], -1)) == rep) start[j] += best->weights2[k];
        }
        KelleyResult k = kelley_mu2(t, pairs, start, lower, options);
        out.rounds += k.rounds;
        certified_lower = std::max(certified_lower, std::min(k.lower, best->constant));
        DominationCertificate mu2;
        mu2.support = w;
        mu2.weights = k.mu;
        if (auto c = mu1_step(mu2)) offer(*c);
    }
    out.certificate = *best;
    out.value = {certified_lower, best->constant};
    return out;
}

Bounds dominated_lower_bound(const LipLinearOperator& t, const Rational& p, const Rational& q,
                             const SequenceSample& sample) {
    require_exponent(p, "p");
    require_exponent(q, "q");
    if (sample.empty()) throw InvalidInput("empty sequence sample");
    const auto& x = t.domain();
    for (const auto& s : sample) {
        if (s.x >= x.size() || s.y >= x.size()) throw InvalidInput("sample point outside the metric space");
        if (s.e.size() != t.domain_norm().dimension()) throw DimensionMismatch("sample vector of wrong length");
    }
    const Rational s_exp = p * q / (p + q);

    Vec diffs;
    for (const auto& s : sample) diffs.push_back(t.codomain_norm()(subtract(t.apply(s.x, s.e), t.apply(s.y, s.e))));
    Bounds numerator_b = lr_norm_bounds(diffs, s_exp);

    Bounds strong = Bounds::exact(0);
    for (const auto& f : cached_ball_vertices(x)) {
        Vec col;
        for (const auto& s : sample) col.push_back(at_point(f, s.x) - at_point(f, s.y));
        Bounds b = lr_norm_bounds(col, p);
        strong = {std::max(strong.lo, b.lo), std::max(strong.hi, b.hi)};
    }
    Bounds weak = Bounds::exact(0);
    for (const auto& w : t.domain_norm().dual_representatives()) {
        Vec col;
        for (const auto& s : sample) col.push_back(dot(w, s.e));
        Bounds b = lr_norm_bounds(col, q);
        weak = {std::max(weak.lo, b.lo), std::max(weak.hi, b.hi)};
    }
    if (strong.hi == 0 || weak.hi == 0) throw InvalidInput("degenerate sample: the denominator vanishes");
    Bounds den = strong * weak;
    return {numerator_b.lo / den.hi, numerator_b.hi / den.lo};
}

// ---------------------------------------------------------- verification

namespace {

bool check_weights(const DominationCertificate& cert, const Vec& weights, VerificationReport& rep) {
    Rational total = 0;
    for (const auto& w : weights) {
        if (w < 0) {
            rep.passed = false;
            rep.witness = "negative weight " + to_string(w);
            return false;
        }
        total += w;
    }
    if (total != 1) {
        rep.passed = false;
        rep.witness = "weights sum to " + to_string(total) + ", not 1";
        return false;
    }
    if (cert.constant < 0) {
        rep.passed = false;
        rep.witness = "negative constant";
        return false;
    }
    return true;
}

// sum_k weights_k |values_k|^r as bounds.
Bounds weighted_power_sum(const Vec& weights, const Vec& values, const Rational& r) {
    Bounds s = Bounds::exact(0);
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (weights[k] == 0) continue;
        Bounds b = abs_pow(values[k], r);
        s = s + Bounds{weights[k] * b.lo, weights[k] * b.hi};
    }
    return s;
}

}  // namespace

VerificationReport verify_certificate(const DominationCertificate& cert, const FiniteMetricSpace& x,
                                      const DistanceTable& target) {
    VerificationReport rep;
    if (cert.kind != DominationCertificate::Kind::LipschitzP) throw InvalidInput("expected a lipschitz-p certificate");
    if (!check_weights(cert, cert.weights, rep)) return rep;
    for (const auto& f : cert.support) {
        if (f.size() != x.free_dimension() || lipschitz_constant(x, f) > 1) {
            rep.passed = false;
            rep.witness = "support function " + vec_text(f) + " is outside B_{X#}";
            return rep;
        }
    }
    const unsigned precision = is_integer(cert.p) ? 96 : 192;
    Bounds cp = is_integer(cert.p) ? pow_of(Bounds::exact(cert.constant), cert.p)
                                   : pow_bounds(cert.constant, cert.p, precision);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            ++rep.checked;
            Vec vals;
            for (const auto& f : cert.support) vals.push_back(at_point(f, i) - at_point(f, j));
            Bounds s = weighted_power_sum(cert.weights, vals, cert.p);
            Bounds lhs = pow_of(target[i][j], cert.p);
            if (lhs.hi > cp.lo * s.lo) {
                rep.passed = false;
                rep.witness = "pair " + pair_label(x, i, j) + ": d^p = " + to_string(lhs.hi) + " exceeds C^p sum = " +
                              to_string(cp.lo * s.lo);
                return rep;
            }
        }
    }
    return rep;
}

VerificationReport verify_certificate(const DominationCertificate& cert, const LipschitzMap& r) {
    auto t = distance_table(r.domain, [&](std::size_t i, std::size_t j) {
        return Bounds::exact(r.codomain(subtract(r.at(i), r.at(j))));
    });
    return verify_certificate(cert, r.domain, t);
}

VerificationReport verify_certificate(const DominationCertificate& cert, const PolyhedralNorm& e,
                                      const Seminorm& phi, long grid) {
    VerificationReport rep;
    if (cert.kind != DominationCertificate::Kind::LinearQ) throw InvalidInput("expected a linear-q certificate");
    if (!check_weights(cert, cert.weights, rep)) return rep;
    for (const auto& w : cert.support) {
        if (w.size() != e.dimension() || e.dual_norm(w) > 1) {
            rep.passed = false;
            rep.witness = "support functional " + vec_text(w) + " is outside B_{E*}";
            return rep;
        }
    }

    if (cert.q == 2 && phi.functionals) {
        // Exhaustive: phi(e)^2 <= C^2 e^T G e for all e iff u^T G^+ u <= C^2.
        GramCheck c = check_gram(gram(cert.support, cert.weights, e.dimension()), *phi.functionals);
        rep.checked = phi.functionals->size();
        if (!c.in_range) {
            rep.passed = false;
            rep.witness = "direction " + vec_text(c.kernel_direction) + " is invisible to the measure";
        } else if (c.worst > cert.constant * cert.constant) {
            rep.passed = false;
            rep.witness = "max u^T G^+ u = " + to_string(c.worst) + " exceeds C^2";
        }
        return rep;
    }

    std::vector<Vec> dirs;
    if (cert.q == 1) {
        // Exhaustive over cell rays of the arrangement of W_E and the support.
        dirs = cell_rays(e, cert.support);
    } else {
        rep.exhaustive = false;
        dirs = sign_representatives(e.primal_generators());
        for (const auto& r : sign_representatives(arrangement_rays(e))) dirs.push_back(r);
        for (auto& g : direction_grid(e.dimension(), grid)) dirs.push_back(std::move(g));
    }
    Bounds cq = pow_of(Bounds::exact(cert.constant), cert.q);
    for (const auto& dv : dirs) {
        ++rep.checked;
        Vec vals;
        for (const auto& w : cert.support) vals.push_back(dot(w, dv));
        Bounds s = weighted_power_sum(cert.weights, vals, cert.q);
        Bounds lhs = pow_of(phi(dv), cert.q);
        if (lhs.hi > cq.lo * s.lo) {
            rep.passed = false;
            rep.witness = "direction " + vec_text(dv) + ": phi^q = " + to_string(lhs.hi) + " exceeds C^q sum = " +
                          to_string(cq.lo * s.lo);
            return rep;
        }
    }
    return rep;
}

VerificationReport verify_certificate(const DominationCertificate& cert, const LipLinearOperator& t, long grid) {
    VerificationReport rep;
    if (cert.kind != DominationCertificate::Kind::TwoMeasure) throw InvalidInput("expected a two-measure certificate");
    if (!check_weights(cert, cert.weights, rep) || !check_weights(cert, cert.weights2, rep)) return rep;
    const auto& x = t.domain();
    const auto& e = t.domain_norm();
    for (const auto& f : cert.support) {
        if (f.size() != x.free_dimension() || lipschitz_constant(x, f) > 1) {
            rep.passed = false;
            rep.witness = "support function " + vec_text(f) + " is outside B_{X#}";
            return rep;
        }
    }
    for (const auto& w : cert.support2) {
        if (w.size() != e.dimension() || e.dual_norm(w) > 1) {
            rep.passed = false;
            rep.witness = "support functional " + vec_text(w) + " is outside B_{E*}";
            return rep;
        }
    }
    // For q = 1 the cell rays of the arrangement of W_E and the second support
    // are exhaustive; for q = 2 the Gram test is. Other q fall back to vertices
    // of B_E plus a grid.
    std::vector<Vec> dirs;
    if (cert.q == 1) {
        dirs = cell_rays(e, cert.support2);
    } else if (cert.q != 2) {
        rep.exhaustive = false;
        dirs = sign_representatives(e.primal_generators());
        for (auto& g : direction_grid(e.dimension(), grid)) dirs.push_back(std::move(g));
    }
    const Matrix g2 = gram(cert.support2, cert.weights2, e.dimension());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            Matrix diff = t.at(i) - t.at(j);
            if (diff.is_zero()) continue;
            Vec fx;
            for (const auto& f : cert.support) fx.push_back(at_point(f, i) - at_point(f, j));
            Bounds mu1 = cert.p == 1 ? weighted_power_sum(cert.weights, fx, 1)
                                     : pow_bounds(weighted_power_sum(cert.weights, fx, cert.p), 1 / cert.p);
            Rational bound = cert.constant * mu1.lo;
            if (cert.q == 2) {
                ++rep.checked;
                GramCheck c = check_gram(g2, Seminorm::of_map(diff, t.codomain_norm()).functionals.value());
                if (!c.in_range || c.worst > bound * bound) {
                    rep.passed = false;
                    rep.witness = "pair " + pair_label(x, i, j) + ": " +
                                  (c.in_range ? "max u^T G^+ u = " + to_string(c.worst) + " exceeds " +
                                                    to_string(bound * bound)
                                              : "direction " + vec_text(c.kernel_direction) + " is invisible");
                    return rep;
                }
                continue;
            }
            for (const auto& dv : dirs) {
                ++rep.checked;
                Vec we;
                for (const auto& w : cert.support2) we.push_back(dot(w, dv));
                Bounds mu2 = cert.q == 1 ? weighted_power_sum(cert.weights2, we, 1)
                                         : pow_bounds(weighted_power_sum(cert.weights2, we, cert.q), 1 / cert.q);
                Rational lhs = t.codomain_norm()(diff.apply(dv));
                if (lhs > bound * mu2.lo) {
                    rep.passed = false;
                    rep.witness = "pair " + pair_label(x, i, j) + ", e = " + vec_text(dv) + ": " + to_string(lhs) +
                                  " exceeds " + to_string(bound * mu2.lo);
                    return rep;
                }
            }
        }
    }
    return rep;
}

VerificationReport verify_dominated(const DominatedResult& result, const LipLinearOperator& t) {
    VerificationReport total;
    auto merge = [&](const VerificationReport& r) {
        total.checked += r.checked;
        total.exhaustive = total.exhaustive && r.exhaustive;
        if (!r.passed && total.passed) {
            total.passed = false;
            total.witness = r.witness;
        }
    };
    if (result.slice_seminorm) {
        for (const auto& c : result.certificates) merge(verify_certificate(c, t.domain_norm(), *result.slice_seminorm));
        return total;
    }
    if (result.certificates.empty()) throw InvalidInput("dominated result without certificates");
    merge(verify_certificate(result.certificates.front(), t.domain(), result.pair_targets));
    const auto& x = t.domain();
    std::size_t k = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            Matrix diff = t.at(i) - t.at(j);
            if (diff.is_zero()) continue;
            if (k >= result.certificates.size()) throw InvalidInput("dominated result is missing pair certificates");
            merge(verify_certificate(result.certificates[k++], t.domain_norm(),
                                     Seminorm::of_map(diff, t.codomain_norm())));
        }
    }
    return total;
}

}  // namespace lipbox
