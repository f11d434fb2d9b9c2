// Extension module: instance-level entry points. Rationals cross the boundary
// as strings; the Python package turns them into fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lipbox/error.hpp"
#include "lipbox/instance.hpp"
#include "lipbox/integral.hpp"
#include "lipbox/suite.hpp"
#include "lipbox/summing.hpp"

namespace py = pybind11;
using namespace lipbox;

namespace {

py::dict bounds(const Bounds& b) {
    py::dict d;
    d["lo"] = to_string(b.lo);
    d["hi"] = to_string(b.hi);
    return d;
}

py::dict certificate(const DominationCertificate& c) {
    auto vecs = [](const std::vector<Vec>& vs) {
        py::list out;
        for (const auto& v : vs) {
            py::list row;
            for (const auto& x : v) row.append(to_string(x));
            out.append(row);
        }
        return out;
    };
    auto vec = [](const Vec& v) {
        py::list out;
        for (const auto& x : v) out.append(to_string(x));
        return out;
    };
    py::dict d;
    d["kind"] = to_string(c.kind);
    d["constant"] = to_string(c.constant);
    d["support"] = vecs(c.support);
    d["weights"] = vec(c.weights);
    d["support2"] = vecs(c.support2);
    d["weights2"] = vec(c.weights2);
    return d;
}

py::dict report(const VerificationReport& r) {
    py::dict d;
    d["passed"] = r.passed;
    d["exhaustive"] = r.exhaustive;
    d["checked"] = r.checked;
    d["witness"] = r.witness;
    return d;
}

const LipLinearOperator& op(const InstanceSet& inst, const std::string& name) {
    auto it = inst.operators.find(name);
    if (it == inst.operators.end()) throw InvalidInput("unknown operator '" + name + "'");
    return it->second.op;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "lipbox native core";

    auto base = py::register_exception<Error>(m, "LipboxError", PyExc_ValueError);
    py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
    py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());

    py::class_<InstanceSet>(m, "Instance")
        .def(py::init([](const std::string& text) { return parse_instance_text(text); }), py::arg("text"))
        .def_static("builtin", &builtin_instances)
        .def_static("random", [](std::size_t points, std::size_t dim, std::uint64_t seed) { return gen_random(points, dim, seed); },
                    py::arg("points"), py::arg("dim"), py::arg("seed"))
        .def("to_json", &emit_instance)
        .def("names", [](const InstanceSet& s) {
            py::dict d;
            auto keys = [](const auto& map) {
                std::vector<std::string> out;
                for (const auto& [k, v] : map) out.push_back(k);
                return out;
            };
            d["spaces"] = keys(s.spaces);
            d["operators"] = keys(s.operators);
            d["maps"] = keys(s.maps);
            d["free_vectors"] = keys(s.free_vectors);
            return d;
        })
        .def("free_norm", [](const InstanceSet& s, const std::string& space, const std::string& expr) {
            const auto& x = s.space(space);
            return to_string(free_norm(parse_free_expression(expr, x), x));
        })
        .def("lipl_norm", [](const InstanceSet& s, const std::string& name) { return to_string(lipl_norm(op(s, name))); })
        .def("lip_norm", [](const InstanceSet& s, const std::string& name) {
            auto it = s.maps.find(name);
            if (it == s.maps.end()) throw InvalidInput("unknown map '" + name + "'");
            return to_string(lip_norm(it->second.map));
        })
        .def("lipschitz_p_summing", [](const InstanceSet& s, const std::string& name, const std::string& p) {
            auto it = s.maps.find(name);
            if (it == s.maps.end()) throw InvalidInput("unknown map '" + name + "'");
            auto res = lipschitz_p_summing(it->second.map, parse_rational(p));
            py::dict d = bounds(res.value);
            d["certificate"] = certificate(res.certificate);
            d["verification"] = report(verify_certificate(res.certificate, it->second.map));
            return d;
        })
        .def("dominated", [](const InstanceSet& s, const std::string& name, const std::string& p, const std::string& q) {
            const auto& t = op(s, name);
            auto res = dominated_norm(t, parse_rational(p), parse_rational(q));
            py::dict d = bounds(res.value);
            d["route_a"] = bounds(res.route_a.value);
            d["route_b"] = bounds(res.route_b.value);
            d["certificate"] = certificate(res.certificate);
            d["verification"] = report(verify_certificate(res.certificate, t));
            return d;
        }, py::arg("name"), py::arg("p") = "1", py::arg("q") = "1")
        .def("integral", [](const InstanceSet& s, const std::string& name) {
            const auto& t = op(s, name);
            auto res = integral_norm(t);
            py::dict d;
            d["value"] = to_string(res.value);
            d["atoms"] = res.certificate.atoms.size();
            d["verification"] = report(verify_integral(res.certificate, t));
            return d;
        })
        .def("verify", [](const InstanceSet& s, const std::string& suite) {
            auto rep = verify_suite(s, suite);
            py::list out;
            for (const auto& c : rep.checks) {
                py::dict d;
                d["section"] = c.section;
                d["name"] = c.name;
                d["subject"] = c.subject;
                d["passed"] = c.passed;
                d["left"] = c.left;
                d["right"] = c.right;
                d["detail"] = c.detail;
                out.append(d);
            }
            return out;
        }, py::arg("suite") = "all");
}
