#include "lipbox/integral.hpp"

#include "lipbox/error.hpp"
#include "lipbox/lp.hpp"

namespace lipbox {

// Atoms live on vertex pairs of B_{X#} x B_{E*}: f(x)e*(e) is bilinear, so an
// atom at an interior pair splits into vertex-pair atoms with the same total
// variation and the same represented operator. Sign classes suffice because
// the weights are signed.

namespace {

struct AtomGrid {
    std::vector<Vec> fs;
    std::vector<Vec> ws;
    std::size_t size() const { return fs.size() * ws.size(); }
    const Vec& f(std::size_t a) const { return fs[a / ws.size()]; }
    const Vec& w(std::size_t a) const { return ws[a % ws.size()]; }
};

AtomGrid atom_grid(const LipLinearOperator& t, const Caps& caps) {
    AtomGrid g;
    for (const auto& v : cached_ball_vertices(t.domain(), caps)) {
        bool lead = false;
        for (const auto& c : v) {
            if (c != 0) {
                lead = c > 0;
                break;
            }
        }
        if (lead) g.fs.push_back(v);
    }
    g.ws = t.domain_norm().dual_representatives();
    if (g.size() > caps.vertices) throw CapExceeded("vertices", caps.vertices, g.size());
    return g;
}

}  // namespace

Vec IntegralCertificate::weights() const {
    Vec out;
    for (const auto& a : atoms) {
        if (a.z.size() != 1) throw DimensionMismatch("weights need a scalar codomain");
        out.push_back(a.z[0]);
    }
    return out;
}

IntegralResult integral_norm(const LipLinearOperator& t, const Caps& caps) {
    const auto& x = t.domain();
    const auto& f = t.codomain_norm();
    const std::size_t n = x.size() - 1;
    const std::size_t de = t.domain_norm().dimension();
    const std::size_t df = f.dimension();
    IntegralResult out;
    bool zero = true;
    for (const auto& m : t.table()) zero = zero && m.is_zero();
    if (zero) return out;

    AtomGrid g = atom_grid(t, caps);
    const std::size_t atoms = g.size();
    if (df == 1) {
        // c = c+ - c-, cost ||1||_F per unit.
        const Rational unit = f(Vec{1});
        LinearProgram lp(2 * atoms, Sense::Minimize);
        for (std::size_t a = 0; a < 2 * atoms; ++a) lp.objective[a] = unit;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t k = 0; k < de; ++k) {
                Vec row(2 * atoms, Rational(0));
                for (std::size_t a = 0; a < atoms; ++a) {
                    row[a] = g.f(a)[p] * g.w(a)[k];
                    row[atoms + a] = -row[a];
                }
                lp.add(std::move(row), Relation::Equal, t.table()[p](0, k));
            }
        }
        LpSolution sol = solve_lp(lp);
        out.value = sol.value;
        for (std::size_t a = 0; a < atoms; ++a) {
            Rational c = sol.primal[a] - sol.primal[atoms + a];
            if (c != 0) out.certificate.atoms.push_back({g.f(a), g.w(a), {c}});
        }
    } else {
        // Per atom: z free in F, s >= u.z for every dual vertex u of B_F.
        const std::size_t stride = df + 1;
        LinearProgram lp(atoms * stride, Sense::Minimize);
        for (std::size_t a = 0; a < atoms; ++a) {
            lp.objective[a * stride + df] = 1;
            for (std::size_t r = 0; r < df; ++r) lp.set_free(a * stride + r);
            for (const auto& u : f.dual_vertices()) {
                Vec row(atoms * stride, Rational(0));
                for (std::size_t r = 0; r < df; ++r) row[a * stride + r] = -u[r];
                row[a * stride + df] = 1;
                lp.add(std::move(row), Relation::GreaterEqual, 0);
            }
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t k = 0; k < de; ++k) {
                for (std::size_t r = 0; r < df; ++r) {
                    Vec row(atoms * stride, Rational(0));
                    for (std::size_t a = 0; a < atoms; ++a) row[a * stride + r] = g.f(a)[p] * g.w(a)[k];
                    lp.add(std::move(row), Relation::Equal, t.table()[p](r, k));
                }
            }
        }
        LpSolution sol = solve_lp(lp);
        out.value = sol.value;
        for (std::size_t a = 0; a < atoms; ++a) {
            Vec z(sol.primal.begin() + static_cast<std::ptrdiff_t>(a * stride),
                  sol.primal.begin() + static_cast<std::ptrdiff_t>(a * stride + df));
            if (!is_zero(z)) out.certificate.atoms.push_back({g.f(a), g.w(a), std::move(z)});
        }
    }
    for (const auto& a : out.certificate.atoms) out.certificate.mass += f(a.z);
    return out;
}

Rational eps_dual_check(const LipLinearOperator& t, const Caps& caps) {
    if (t.codomain_norm().dimension() != 1) throw DimensionMismatch("eps_dual_check needs a scalar codomain");
    const std::size_t n = t.domain().size() - 1;
    const std::size_t de = t.domain_norm().dimension();
    AtomGrid g = atom_grid(t, caps);
    // u = sum_x delta_x (x) u_x; T^(u) = sum_x A(x) u_x.
    LinearProgram lp(n * de, Sense::Maximize);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t k = 0; k < de; ++k) {
            lp.objective[p * de + k] = t.table()[p](0, k);
            lp.set_free(p * de + k);
        }
    }
    // Dividing by ||1||_F turns |T^(u)| into the codomain norm.
    const Rational unit = t.codomain_norm()(Vec{1});
    for (std::size_t a = 0; a < g.size(); ++a) {
        Vec row(n * de, Rational(0));
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t k = 0; k < de; ++k) row[p * de + k] = g.f(a)[p] * g.w(a)[k];
        lp.add(row, Relation::LessEqual, 1);
        lp.add(std::move(row), Relation::GreaterEqual, -1);
    }
    if (g.size() == 0) return 0;
    return solve_lp(lp).value * unit;
}

LipLinearOperator reconstruct(const IntegralCertificate& cert, const FiniteMetricSpace& x, const PolyhedralNorm& e,
                              const PolyhedralNorm& f) {
    const std::size_t n = x.size() - 1;
    std::vector<Matrix> table(n, Matrix(f.dimension(), e.dimension()));
    for (const auto& a : cert.atoms) {
        if (a.f.size() != n || a.functional.size() != e.dimension() || a.z.size() != f.dimension())
            throw DimensionMismatch("atom does not match the spaces");
        if (lipschitz_constant(x, a.f) > 1) throw InvalidInput("support function outside B_{X#}");
        if (e.dual_norm(a.functional) > 1) throw InvalidInput("support functional outside B_{E*}");
        Matrix rank_one = outer(a.z, a.functional);
        for (std::size_t p = 0; p < n; ++p)
            if (a.f[p] != 0) table[p] = table[p] + a.f[p] * rank_one;
    }
    return LipLinearOperator(x, e, f, std::move(table));
}

LinftyFactorization factorize_Linfty(const IntegralCertificate& cert, const FiniteMetricSpace& x,
                                     const PolyhedralNorm& e) {
    const Vec weights = cert.weights();
    const std::size_t k_count = cert.atoms.size();
    LinftyFactorization out;
    out.r.assign(x.size(), Vec(k_count, Rational(0)));
    out.v = Matrix(k_count, e.dimension());
    for (std::size_t k = 0; k < k_count; ++k) {
        const auto& a = cert.atoms[k];
        // The sign of the weight moves into R.
        Rational sign = weights[k] < 0 ? -1 : 1;
        for (std::size_t p = 0; p < x.size(); ++p) out.r[p][k] = sign * at_point(a.f, p);
        for (std::size_t c = 0; c < e.dimension(); ++c) out.v(k, c) = a.functional[c];
        out.mu.push_back(abs(weights[k]));
        out.mass += abs(weights[k]);
        out.v_norm = std::max(out.v_norm, e.dual_norm(a.functional));
    }
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            for (std::size_t k = 0; k < k_count; ++k)
                out.lip_r = std::max(out.lip_r, abs(out.r[i][k] - out.r[j][k]) / x.distance(i, j));
    out.product = out.v_norm * out.lip_r * out.mass;
    return out;
}

VerificationReport verify_integral(const IntegralCertificate& cert, const LipLinearOperator& t) {
    VerificationReport rep;
    rep.checked = cert.atoms.size();
    try {
        LipLinearOperator back = reconstruct(cert, t.domain(), t.domain_norm(), t.codomain_norm());
        for (std::size_t p = 1; p < t.domain().size() && rep.passed; ++p) {
            if (back.at(p) != t.at(p)) {
                rep.passed = false;
                rep.witness = "reconstruction differs at point " + t.domain().label(p);
            }
        }
    } catch (const Error& err) {
        rep.passed = false;
        rep.witness = err.what();
        return rep;
    }
    Rational mass = 0;
    for (const auto& a : cert.atoms) mass += t.codomain_norm()(a.z);
    if (rep.passed && mass != cert.mass) {
        rep.passed = false;
        rep.witness = "total variation " + to_string(mass) + " differs from the reported " + to_string(cert.mass);
    }
    return rep;
}

}  // namespace lipbox
