#include "lipbox/suite.hpp"

#include <chrono>
#include <functional>

#include "lipbox/error.hpp"
#include "lipbox/integral.hpp"

namespace lipbox {

bool SuiteReport::passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.passed ? 0 : 1;
    return n;
}

namespace {

std::string bounds_text(const Bounds& b) {
    return b.is_exact() ? to_string(b.lo) : "[" + to_string(b.lo) + ", " + to_string(b.hi) + "]";
}

struct Outcome {
    bool passed;
    std::string left, right, detail;
};

Outcome equal(const Rational& a, const Rational& b, std::string detail = {}) {
    return {a == b, to_string(a), to_string(b), std::move(detail)};
}

Outcome at_most(const Rational& a, const Rational& b, std::string detail = {}) {
    return {a <= b, to_string(a), to_string(b), std::move(detail)};
}

class Runner {
public:
    Runner(const std::string& suite, SuiteReport& report) : suite_(suite), report_(report) {}

    void run(const std::string& section, const std::string& name, const std::string& subject,
             const std::function<Outcome()>& fn) {
        if (suite_ != "all" && suite_ != section) return;
        auto start = std::chrono::steady_clock::now();
        Outcome o = fn();
        SuiteCheck c{section, name, subject, o.passed, o.left, o.right, o.detail, 0};
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report_.checks.push_back(std::move(c));
    }

    bool wants(const std::string& section) const { return suite_ == "all" || suite_ == section; }

private:
    std::string suite_;
    SuiteReport& report_;
};

}  // namespace

SuiteReport verify_suite(const InstanceSet& inst, const std::string& suite, const Caps& caps) {
    if (suite != "all" && suite != "s2" && suite != "s3" && suite != "s4")
        throw InvalidInput("unknown suite '" + suite + "' (all, s2, s3, s4)");
    SuiteReport report;
    Runner run(suite, report);

    // ------------------------------------------------------------ operators
    for (const auto& [name, m] : inst.free_vectors) {
        run.run("s2", "free norm = max over Lipschitz-ball vertices", name, [&] {
            const auto& x = inst.space(m.space);
            Rational best = 0;
            for (const auto& f : cached_ball_vertices(x, caps)) best = std::max(best, dot(f, m.vector.coefficients));
            return equal(free_norm(m.vector, x), best);
        });
    }
    for (const auto& [name, o] : inst.operators) {
        run.run("s2", "LipL(T) = Lip(A_T)", name, [&] { return equal(lipl_norm(o.op), lip_norm_of_table(o.op, caps)); });
        run.run("s2", "LipL(T) = ||B_T||", name, [&] { return equal(lipl_norm(o.op), slice_norm(o.op)); });
        run.run("s2", "LipL(T) = ||linearization||", name, [&] { return equal(lipl_norm(o.op), linearization_norm(o.op)); });
    }
    for (const auto& [name, r] : inst.maps) {
        run.run("s2", "LipL(T_R) = Lip(R)", name, [&] { return equal(lipl_norm(associate_TR(r.map)), lip_norm(r.map)); });
    }
    if (!inst.spaces.empty()) {
        const auto& [xname, x] = *inst.spaces.begin();
        for (const auto& [name, v] : inst.linear_maps) {
            run.run("s2", "LipL(delta_X box v) = ||v||", name + " on " + xname, [&] {
                const auto& e = inst.norm(v.domain);
                const auto& f = inst.norm(v.codomain);
                return equal(lipl_norm(delta_box(v.matrix, x, e, f, caps)), operator_norm(v.matrix, e, f));
            });
        }
    }
    for (const auto& [name, t] : inst.tensors) {
        const auto& x = inst.space(t.space);
        const auto& e = inst.norm(t.norm);
        run.run("s2", "pi(u) = sup over the LipL unit ball", name, [&] {
            return equal(projective_norm(t.tensor, x, e), projective_norm_space(x, e, caps)(t.tensor.flatten()));
        });
        run.run("s2", "eps(u) <= pi(u)", name,
                [&] { return at_most(injective_norm(t.tensor, x, e), projective_norm(t.tensor, x, e)); });
    }
    for (const auto& [name, s] : inst.two_lipschitz) {
        run.run("s2", "LipL(from_two_lipschitz) = BLip", name,
                [&] { return equal(lipl_norm(from_two_lipschitz(s.table, caps)), blip_norm(s.table)); });
        run.run("s2", "two-Lipschitz round trip", name, [&] {
            auto back = to_two_lipschitz(from_two_lipschitz(s.table, caps), s.table.y);
            bool same = back.values == s.table.values;
            return Outcome{same, "table", same ? "table" : "differs", ""};
        });
    }

    // ------------------------------------------------------------- integral
    for (const auto& [name, o] : inst.operators) {
        if (o.op.codomain_norm().dimension() != 1 || !run.wants("s3")) continue;
        IntegralResult res = integral_norm(o.op, caps);
        run.run("s3", "integral norm = eps-dual sup", name, [&] { return equal(res.value, eps_dual_check(o.op, caps)); });
        run.run("s3", "certificate reconstructs T", name, [&] {
            auto rep = verify_integral(res.certificate, o.op);
            return Outcome{rep.passed, std::to_string(res.certificate.atoms.size()) + " atoms", to_string(res.certificate.mass),
                           rep.witness};
        });
        run.run("s3", "LipL(T) <= integral norm", name, [&] { return at_most(lipl_norm(o.op), res.value); });
        run.run("s3", "integral norm <= L-infinity factorization", name, [&] {
            auto fac = factorize_Linfty(res.certificate, o.op.domain(), o.op.domain_norm());
            return at_most(res.value, fac.product);
        });
    }

    // -------------------------------------------------------------- summing
    for (const auto& [name, r] : inst.maps) {
        if (!run.wants("s4")) break;
        run.run("s4", "pi_1^L(R) = route A of T_R", name, [&] {
            auto lp = lipschitz_p_summing(r.map, 1);
            auto a = dominated_via_A(associate_TR(r.map), 1, 1);
            auto rep = verify_certificate(lp.certificate, r.map);
            return Outcome{lp.value == a.value && rep.passed, bounds_text(lp.value), bounds_text(a.value), rep.witness};
        });
    }
    std::map<std::string, DominatedNorm> deltas;
    for (const auto& [name, o] : inst.operators) {
        if (!run.wants("s4")) break;
        if (o.op.domain().size() - 1 > caps.ambient_dim) continue;
        DominatedNorm d = dominated_norm(o.op, 1, 1);
        run.run("s4", "routes A and B lie below the certified delta", name, [&] {
            const Bounds& a = d.route_a.value;
            const Bounds& b = d.route_b.value;
            bool ok = a.hi <= d.value.hi && b.hi <= d.value.hi && verify_dominated(d.route_a, o.op).passed &&
                      verify_dominated(d.route_b, o.op).passed;
            std::string rel = a == b ? "A = B" : (a.hi < b.lo ? "A < B" : "A, B differ");
            return Outcome{ok, "A " + bounds_text(a) + ", B " + bounds_text(b), "delta " + bounds_text(d.value), rel};
        });
        run.run("s4", "two-measure certificate", name, [&] {
            auto rep = verify_certificate(d.certificate, o.op);
            return Outcome{rep.passed, to_string(d.certificate.constant), rep.exhaustive ? "exhaustive" : "sampled",
                           rep.witness};
        });
        deltas.emplace(name, std::move(d));
    }
    for (const auto& [sname, s] : inst.samples) {
        for (const auto& [name, o] : inst.operators) {
            auto it = deltas.find(name);
            if (it == deltas.end() || s.space != o.space) continue;
            if (s.sample.front().e.size() != o.op.domain_norm().dimension()) continue;
            run.run("s4", "sample lower bound <= delta", sname + " on " + name, [&] {
                try {
                    return at_most(dominated_lower_bound(o.op, 1, 1, s.sample).lo, it->second.value.hi);
                } catch (const InvalidInput&) {
                    return Outcome{true, "-", to_string(it->second.value.hi), "degenerate sample skipped"};
                }
            });
        }
    }
    if (auto it = inst.operators.find("DR"); it != inst.operators.end() && run.wants("s4")) {
        run.run("s4", "delta(T) = pi_1(id_E) for T(e1, e2) = <e0*, e1> e2", "DR", [&] {
            const auto& e = it->second.op.domain_norm();
            Bounds d = deltas.count("DR") ? deltas.at("DR").value : dominated_norm(it->second.op, 1, 1).value;
            Bounds pi = q_summing(Matrix::identity(e.dimension()), e, e, 1).value;
            return Outcome{d == pi, bounds_text(d), bounds_text(pi), ""};
        });
    }
    return report;
}

InstanceSet builtin_instances() {
    const char* text = R"({
  "spaces": {
    "X3": {"labels": ["0", "a", "b"], "distances": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]},
    "X3p": {"labels": ["0", "a", "b"], "distances": [[0, 1, 1], [1, 0, 2], [1, 2, 0]]},
    "XDR": {"labels": ["0", "e1", "e2", "e1+e2"],
            "distances": [[0, 1, 1, 2], [1, 0, 2, 1], [1, 2, 0, 1], [2, 1, 1, 0]]}
  },
  "norms": {"l1": "l1:2", "linf": "linf:2", "R": "linf:1",
            "hex": {"dual_vertices": [["1", "0"], ["-1", "0"], ["0", "1"], ["0", "-1"], ["1", "1"], ["-1", "-1"]]}},
  "operators": {
    "T1": {"space": "X3", "domain": "l1", "codomain": "linf",
           "table": {"a": [[2, 3], [-1, -1]], "b": [[-2, 3], ["-1/2", "-5/2"]]}},
    "T2": {"space": "X3p", "domain": "linf", "codomain": "l1",
           "table": {"a": [[1, "1/2"], [0, -1]], "b": [[-1, 2], ["3/2", 0]]}},
    "line": {"space": "X3", "domain": "R", "codomain": "R", "table": {"a": [[1]], "b": [[2]]}},
    "S": {"space": "X3p", "domain": "l1", "codomain": "R", "table": {"a": [[1, -2]], "b": [["1/2", 3]]}},
    "Shex": {"space": "X3", "domain": "hex", "codomain": "R", "table": {"a": [[2, -1]], "b": [[1, 1]]}},
    "DR": {"space": "XDR", "domain": "l1", "codomain": "l1",
           "table": {"e1": [[1, 0], [0, 1]], "e2": [[0, 0], [0, 0]], "e1+e2": [[1, 0], [0, 1]]}}
  },
  "maps": {
    "R1": {"space": "X3", "codomain": "l1", "values": {"a": [1, 0], "b": [1, 1]}},
    "R2": {"space": "X3p", "codomain": "linf", "values": {"a": ["1/2", -1], "b": [1, 1]}}
  },
  "linear_maps": {"v": {"domain": "l1", "codomain": "linf", "matrix": [[1, 2], [0, 1]]}},
  "tensors": {"u": {"space": "X3", "norm": "l1", "rows": {"a": [1, -1], "b": [0, 2]}}},
  "free_vectors": {"m": {"space": "X3", "coefficients": {"a": 1, "b": 1}}},
  "two_lipschitz": {
    "B": {"x": "X3", "y": "X3p", "codomain": "linf",
          "values": {"a": {"a": [1, 0], "b": [0, 1]}, "b": {"a": [2, -1], "b": ["1/2", 1]}}}
  },
  "samples": {
    "s": {"space": "X3", "triples": [{"x": "a", "y": "0", "e": [1, 0]}, {"x": "b", "y": "a", "e": [0, 1]},
                                     {"x": "b", "y": "0", "e": [1, -1]}]}
  }
})";
    return parse_instance_text(text);
}

}  // namespace lipbox
