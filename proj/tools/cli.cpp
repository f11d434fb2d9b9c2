#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "lipbox/error.hpp"
#include "lipbox/instance.hpp"
#include "lipbox/integral.hpp"
#include "lipbox/suite.hpp"

namespace lipbox::cli {

using nlohmann::json;

namespace {

json vec_json(VecView v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

json vecs_json(const std::vector<Vec>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(vec_json(v));
    return out;
}

json bounds_json(const Bounds& b) {
    if (b.is_exact()) return to_string(b.lo);
    return {{"lo", to_string(b.lo)}, {"hi", to_string(b.hi)}};
}

std::string bounds_text(const Bounds& b) {
    if (b.is_exact()) return to_string(b.lo);
    return "[" + to_string(b.lo) + ", " + to_string(b.hi) + "] (~" + std::to_string(to_double(b.hi)) + ")";
}

json certificate_json(const DominationCertificate& c) {
    json j = {{"kind", to_string(c.kind)},      {"p", to_string(c.p)},         {"q", to_string(c.q)},
              {"support", vecs_json(c.support)}, {"weights", vec_json(c.weights)}, {"constant", to_string(c.constant)},
              {"label", c.label}};
    if (c.kind == DominationCertificate::Kind::TwoMeasure) {
        j["support2"] = vecs_json(c.support2);
        j["weights2"] = vec_json(c.weights2);
    }
    return j;
}

json certificate_json(const IntegralCertificate& c) {
    json atoms = json::array();
    for (const auto& a : c.atoms) atoms.push_back({{"f", vec_json(a.f)}, {"functional", vec_json(a.functional)}, {"z", vec_json(a.z)}});
    return {{"atoms", atoms}, {"mass", to_string(c.mass)}};
}

json verification_json(const VerificationReport& r) {
    return {{"passed", r.passed}, {"exhaustive", r.exhaustive}, {"checked", r.checked}, {"witness", r.witness}};
}

// Cross-check of a norm against a second computation.
json cross_check(const std::string& method, bool passed, const std::string& other) {
    return {{"passed", passed}, {"method", method}, {"value", other}};
}

template <class Map>
const auto& lookup(const Map& m, const std::string& name, const std::string& kind) {
    auto it = m.find(name);
    if (it == m.end()) throw InvalidInput("no " + kind + " named '" + name + "' in the instance");
    return it->second;
}

struct Output {
    json report = json::object();
    std::vector<std::string> lines;
    bool ok = true;

    void line(std::string s) { lines.push_back(std::move(s)); }
    void verified(bool passed, const std::string& what) {
        ok = ok && passed;
        line(std::string("  ") + (passed ? "verified: " : "VERIFICATION FAILED: ") + what);
    }
};

Rational rational_option(const std::string& s, const char* name) {
    try {
        return parse_rational(s);
    } catch (const Error&) {
        throw InvalidInput(std::string("--") + name + ": '" + s + "' is not a rational");
    }
}

void norm_command(const std::string& kind, const std::string& path, const std::string& object,
                  const std::string& space_name, const Caps& caps, Output& o) {
    InstanceSet inst = parse_instance(path, caps);
    json& r = o.report;
    r["object"] = object;
    auto emit = [&](const std::string& quantity, const Rational& v, const json& check) {
        r["quantity"] = quantity;
        r["value"] = to_string(v);
        r["exact"] = true;
        r["verification"] = check;
        o.line(quantity + " = " + to_string(v));
        o.verified(check["passed"].get<bool>(), check["method"].get<std::string>());
    };
    if (kind == "lipl") {
        const auto& t = lookup(inst.operators, object, "operator").op;
        Rational v = lipl_norm(t);
        Rational w = lip_norm_of_table(t, caps);
        emit("LipL(" + object + ")", v, cross_check("Lip(A_T) over the operator-norm table", v == w, to_string(w)));
    } else if (kind == "lip") {
        const auto& m = lookup(inst.maps, object, "map").map;
        Rational v = lip_norm(m);
        Rational w = lipl_norm(associate_TR(m));
        emit("Lip(" + object + ")", v, cross_check("LipL of the associated T_R", v == w, to_string(w)));
    } else if (kind == "blip") {
        const auto& t = lookup(inst.two_lipschitz, object, "two-Lipschitz table").table;
        Rational v = blip_norm(t);
        Rational w = lipl_norm(from_two_lipschitz(t, caps));
        emit("BLip(" + object + ")", v, cross_check("LipL of the operator on X x F(Y)", v == w, to_string(w)));
    } else if (kind == "free") {
        FreeVector m;
        const FiniteMetricSpace* x = nullptr;
        if (auto it = inst.free_vectors.find(object); it != inst.free_vectors.end()) {
            m = it->second.vector;
            x = &inst.space(it->second.space);
        } else {
            if (!space_name.empty()) {
                x = &inst.space(space_name);
            } else if (inst.spaces.size() == 1) {
                x = &inst.spaces.begin()->second;
            } else {
                throw InvalidInput("name the space with --space to evaluate '" + object + "'");
            }
            m = parse_free_expression(object, *x);
        }
        Rational v = free_norm(m, *x);
        Rational w = 0;
        for (const auto& f : cached_ball_vertices(*x, caps)) w = std::max(w, dot(f, m.coefficients));
        emit("||" + object + "||_F(X)", v, cross_check("max over Lipschitz-ball vertices", v == w, to_string(w)));
    } else if (kind == "pi" || kind == "eps") {
        const auto& t = lookup(inst.tensors, object, "tensor");
        const auto& x = inst.space(t.space);
        const auto& e = inst.norm(t.norm);
        Rational p = projective_norm(t.tensor, x, e);
        if (kind == "pi") {
            Rational w = projective_norm_space(x, e, caps)(t.tensor.flatten());
            emit("pi(" + object + ")", p, cross_check("sup over the enumerated LipL unit ball", p == w, to_string(w)));
        } else {
            Rational v = injective_norm(t.tensor, x, e);
            emit("eps(" + object + ")", v, cross_check("eps <= pi", v <= p, to_string(p)));
        }
    } else {
        throw InvalidInput("unknown norm '" + kind + "' (lipl, lip, blip, free, pi, eps)");
    }
}

void summing_command(const std::string& kind, const std::string& path, const std::string& object,
                     const std::string& p_text, const std::string& q_text, const std::string& route,
                     const std::string& sample, const Caps& caps, Output& o) {
    InstanceSet inst = parse_instance(path, caps);
    Rational p = rational_option(p_text, "p");
    Rational q = rational_option(q_text, "q");
    SummingOptions options;
    options.caps = caps;
    json& r = o.report;
    r["object"] = object;
    r["p"] = to_string(p);
    r["q"] = to_string(q);
    auto emit_result = [&](json& slot, const std::string& quantity, const Bounds& value, bool exact,
                           const std::vector<DominationCertificate>& certs, const VerificationReport& rep) {
        slot["quantity"] = quantity;
        slot["value"] = bounds_json(value);
        slot["exact"] = exact;
        slot["certificates"] = json::array();
        for (const auto& c : certs) slot["certificates"].push_back(certificate_json(c));
        slot["verification"] = verification_json(rep);
        o.line(quantity + " = " + bounds_text(value) + (exact ? "" : " (certified bounds)"));
        o.verified(rep.passed, std::to_string(certs.size()) + " certificate(s)" + (rep.exhaustive ? ", exhaustive" : ", sampled") +
                                   (rep.witness.empty() ? "" : "; " + rep.witness));
    };
    if (kind == "lipp") {
        const auto& m = lookup(inst.maps, object, "map").map;
        SummingResult res = lipschitz_p_summing(m, p, options);
        emit_result(r, "pi_" + to_string(p) + "^L(" + object + ")", res.value, res.exact, {res.certificate},
                    verify_certificate(res.certificate, m));
    } else if (kind == "q") {
        const auto& v = lookup(inst.linear_maps, object, "linear map");
        const auto& e = inst.norm(v.domain);
        const auto& f = inst.norm(v.codomain);
        SummingResult res = q_summing(v.matrix, e, f, q, options);
        emit_result(r, "pi_" + to_string(q) + "(" + object + ")", res.value, res.exact, {res.certificate},
                    verify_certificate(res.certificate, e, Seminorm::of_map(v.matrix, f)));
    } else if (kind == "dominated") {
        const auto& entry = lookup(inst.operators, object, "operator");
        const auto& t = entry.op;
        if (route != "A" && route != "B" && route != "both") throw InvalidInput("--route must be A, B or both");
        r["routes"] = json::object();
        std::optional<Bounds> best_upper;
        if (route != "B") {
            DominatedResult a = dominated_via_A(t, p, q, options);
            emit_result(r["routes"]["A"], "route A: pi_p^L(A_T)", a.value, a.exact, a.certificates, verify_dominated(a, t));
        }
        if (route != "A") {
            DominatedResult b = dominated_via_B(t, p, q, options);
            emit_result(r["routes"]["B"], "route B: pi_q(B_T)", b.value, b.exact, b.certificates, verify_dominated(b, t));
        }
        if (route == "both" && p == 1 && (q == 1 || q == 2)) {
            DominatedNorm d = dominated_norm(t, p, q, options);
            emit_result(r["delta"], "delta_(p,q)(" + object + ")", d.value, d.value.is_exact(), {d.certificate},
                        verify_certificate(d.certificate, t));
            r["delta"]["rounds"] = d.rounds;
            best_upper = d.value;
            if (d.route_a.value != d.route_b.value)
                o.line("  note: the routes differ; both are lower bounds for delta, which the two-measure certificate bounds above");
        }
        if (!sample.empty()) {
            const auto& s = lookup(inst.samples, sample, "sample");
            if (s.space != entry.space) throw InvalidInput("sample '" + sample + "' lives on another space");
            Bounds lb = dominated_lower_bound(t, p, q, s.sample);
            r["sample_lower_bound"] = bounds_json(lb);
            o.line("sample lower bound = " + bounds_text(lb));
            if (best_upper) o.verified(lb.lo <= best_upper->hi, "sample lower bound <= certified delta");
        }
    } else {
        throw InvalidInput("unknown summing quantity '" + kind + "' (lipp, q, dominated)");
    }
}

void integral_command(const std::string& path, const std::string& object, bool factorize, const Caps& caps, Output& o) {
    InstanceSet inst = parse_instance(path, caps);
    const auto& t = lookup(inst.operators, object, "operator").op;
    IntegralResult res = integral_norm(t, caps);
    json& r = o.report;
    r["object"] = object;
    r["quantity"] = "integral norm of " + object;
    r["value"] = to_string(res.value);
    r["exact"] = true;
    r["certificate"] = certificate_json(res.certificate);
    VerificationReport rep = verify_integral(res.certificate, t);
    r["verification"] = verification_json(rep);
    o.line("integral norm of " + object + " = " + to_string(res.value));
    o.verified(rep.passed, std::to_string(res.certificate.atoms.size()) + " atom(s) reconstruct the operator" +
                               (rep.witness.empty() ? "" : "; " + rep.witness));
    if (t.codomain_norm().dimension() == 1) {
        Rational dual = eps_dual_check(t, caps);
        r["eps_dual"] = to_string(dual);
        o.verified(dual == res.value, "eps-dual sup = " + to_string(dual));
    }
    if (factorize) {
        if (t.codomain_norm().dimension() != 1) throw InvalidInput("--factorize needs a scalar codomain");
        auto fac = factorize_Linfty(res.certificate, t.domain(), t.domain_norm());
        json rs = json::object();
        for (std::size_t i = 0; i < fac.r.size(); ++i) rs[t.domain().label(i)] = vec_json(fac.r[i]);
        json vrows = json::array();
        for (std::size_t k = 0; k < fac.v.rows(); ++k) vrows.push_back(vec_json(fac.v.row(k)));
        r["factorization"] = {{"R", rs},
                              {"v", vrows},
                              {"mu", vec_json(fac.mu)},
                              {"lip_R", to_string(fac.lip_r)},
                              {"v_norm", to_string(fac.v_norm)},
                              {"mass", to_string(fac.mass)},
                              {"product", to_string(fac.product)}};
        o.line("L-infinity factorization: ||v|| Lip(R) mu(Omega) = " + to_string(fac.v_norm) + " * " +
               to_string(fac.lip_r) + " * " + to_string(fac.mass) + " = " + to_string(fac.product));
        o.verified(res.value <= fac.product, "integral norm <= factorization product");
    }
}

void verify_command(const std::string& path, bool builtin, const std::string& suite, std::optional<std::uint64_t> seed,
                    std::size_t points, std::size_t dim, const Caps& caps, Output& o) {
    InstanceSet inst;
    std::string source;
    if (builtin) {
        inst = builtin_instances();
        source = "builtin";
    } else if (seed) {
        inst = gen_random(points, dim, *seed, caps);
        source = "random seed " + std::to_string(*seed);
    } else if (!path.empty()) {
        inst = parse_instance(path, caps);
        source = path;
    } else {
        throw InvalidInput("verify needs an instance file, --builtin or --seed");
    }
    SuiteReport rep = verify_suite(inst, suite, caps);
    json checks = json::array();
    for (const auto& c : rep.checks) {
        checks.push_back({{"section", c.section},
                          {"identity", c.name},
                          {"subject", c.subject},
                          {"passed", c.passed},
                          {"left", c.left},
                          {"right", c.right},
                          {"detail", c.detail}});
        o.line(std::string(c.passed ? "PASS " : "FAIL ") + c.section + "  " + c.name + "  [" + c.subject + "]  " + c.left +
               " | " + c.right + (c.detail.empty() ? "" : "  (" + c.detail + ")"));
    }
    o.report["source"] = source;
    o.report["suite"] = suite;
    o.report["checks"] = checks;
    o.report["passed"] = rep.passed();
    o.report["failures"] = rep.failures();
    o.line(std::to_string(rep.checks.size() - rep.failures()) + "/" + std::to_string(rep.checks.size()) + " checks passed");
    o.ok = rep.passed();
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"lipbox: exact norms and summing constants for Lip-Linear operators"};
    app.require_subcommand(1);
    std::string report_path;
    Caps caps;
    try {
        caps = Caps::from_environment();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    app.add_option("--report", report_path, "Write the machine-readable report to this file");
    app.add_option("--cap-points", caps.points, "Cap on |X|");
    app.add_option("--cap-dim", caps.dim, "Cap on norm dimension");
    app.add_option("--cap-vertices", caps.vertices, "Cap on enumerated vertices");
    app.add_option("--cap-iters", caps.iterations, "Cap on constraint-generation rounds");

    std::string kind, path, object, space, p_text = "1", q_text = "1", route = "both", sample, suite = "all", out_path;
    bool factorize = false, builtin = false;
    std::size_t points = 3, dim = 2;
    std::optional<std::uint64_t> seed;

    auto* norm = app.add_subcommand("norm", "lipl|lip|blip|free|pi|eps <instance> <object>");
    norm->add_option("kind", kind)->required()->check(CLI::IsMember({"lipl", "lip", "blip", "free", "pi", "eps"}));
    norm->add_option("instance", path)->required();
    norm->add_option("object", object)->required();
    norm->add_option("--space", space, "Space for a free-vector expression");

    auto* summing = app.add_subcommand("summing", "lipp|q|dominated <instance> <object>");
    summing->add_option("kind", kind)->required()->check(CLI::IsMember({"lipp", "q", "dominated"}));
    summing->add_option("instance", path)->required();
    summing->add_option("object", object)->required();
    summing->add_option("--p", p_text, "p >= 1 as a rational");
    summing->add_option("--q", q_text, "q >= 1 as a rational");
    summing->add_option("--route", route, "A, B or both")->check(CLI::IsMember({"A", "B", "both"}));
    summing->add_option("--sample", sample, "Sequence sample for a lower bound");

    auto* integral = app.add_subcommand("integral", "<instance> <object>");
    integral->add_option("instance", path)->required();
    integral->add_option("object", object)->required();
    integral->add_flag("--factorize", factorize, "Report the L-infinity factorization");

    auto* verify = app.add_subcommand("verify", "<instance> | --builtin | --seed s");
    verify->add_option("instance", path);
    verify->add_flag("--builtin", builtin, "Use the bundled instances");
    verify->add_option("--suite", suite, "all, s2, s3 or s4")->check(CLI::IsMember({"all", "s2", "s3", "s4"}));
    verify->add_option("--seed", seed, "Verify a generated instance");
    verify->add_option("--points", points, "Points of the generated instance");
    verify->add_option("--dim", dim, "Dimension of the generated instance");

    auto* gen = app.add_subcommand("gen", "--points n --dim d --seed s");
    gen->add_option("--points", points)->required();
    gen->add_option("--dim", dim)->required();
    gen->add_option("--seed", seed)->required();
    gen->add_option("--out", out_path, "Write the instance here instead of standard output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    Output o;
    auto start = std::chrono::steady_clock::now();
    try {
        Caps::set_defaults(caps);
        if (*norm) {
            o.report["command"] = "norm " + kind;
            norm_command(kind, path, object, space, caps, o);
        } else if (*summing) {
            o.report["command"] = "summing " + kind;
            summing_command(kind, path, object, p_text, q_text, route, sample, caps, o);
        } else if (*integral) {
            o.report["command"] = "integral";
            integral_command(path, object, factorize, caps, o);
        } else if (*verify) {
            o.report["command"] = "verify";
            verify_command(path, builtin, suite, seed, points, dim, caps, o);
        } else if (*gen) {
            std::string text = emit_instance(gen_random(points, dim, *seed, caps));
            if (out_path.empty()) {
                out << text;
            } else {
                std::ofstream f(out_path);
                if (!f) throw InvalidInput("cannot write '" + out_path + "'");
                f << text;
                out << "wrote " << out_path << "\n";
            }
            return kOk;
        }
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << "\n";
        return kIdentityFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    o.report["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    o.report["ok"] = o.ok;
    for (const auto& l : o.lines) out << l << "\n";
    if (!report_path.empty()) {
        std::ofstream f(report_path);
        if (!f) {
            err << "error: cannot write '" << report_path << "'\n";
            return kInputError;
        }
        f << o.report.dump(2) << "\n";
    }
    return o.ok ? kOk : kIdentityFailure;
}

}  // namespace lipbox::cli
