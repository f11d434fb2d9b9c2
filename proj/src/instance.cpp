#include "lipbox/instance.hpp"

#include <cctype>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "lipbox/error.hpp"

namespace lipbox {

using nlohmann::json;

const FiniteMetricSpace& InstanceSet::space(const std::string& name) const {
    auto it = spaces.find(name);
    if (it == spaces.end()) throw ParseError("unknown space '" + name + "'");
    return it->second;
}

const PolyhedralNorm& InstanceSet::norm(const std::string& name) const {
    auto it = norms.find(name);
    if (it == norms.end()) throw ParseError("unknown norm '" + name + "'");
    return it->second.norm;
}

PolyhedralNorm parse_norm_shorthand(const std::string& text, const Caps& caps) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("norm shorthand '" + text + "' is not l1:n or linf:n");
    std::string kind = text.substr(0, colon);
    std::string count = text.substr(colon + 1);
    if (count.empty() || count.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("norm shorthand '" + text + "' has a bad dimension");
    std::size_t n = std::stoul(count);
    if (n == 0) throw ParseError("norm shorthand '" + text + "' has dimension 0");
    if (n > caps.dim) throw CapExceeded("dim", caps.dim, n);
    if (kind == "l1") return PolyhedralNorm::l1(n, caps);
    if (kind == "linf") return PolyhedralNorm::linf(n, caps);
    throw ParseError("norm shorthand '" + text + "' is not l1:n or linf:n");
}

FreeVector parse_free_expression(const std::string& text, const FiniteMetricSpace& x) {
    FreeVector m{Vec(x.size() - 1, Rational(0))};
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty free-vector expression");
    std::size_t pos = 0;
    while (pos < s.size()) {
        Rational sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            if (s[pos] == '-') sign = -1;
            ++pos;
        } else if (pos > 0) {
            throw ParseError("expected + or - in '" + text + "'");
        }
        std::size_t end = s.find_first_of("+-", pos);
        std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? s.size() : end;
        if (term.empty()) throw ParseError("empty term in '" + text + "'");
        // A whole-term label wins over a coefficient split.
        Rational coefficient = 1;
        std::string label = term;
        if (!x.find(term)) {
            std::size_t star = term.find('*');
            std::size_t split = star;
            if (star == std::string::npos) {
                split = term.find_first_not_of("0123456789/.");
                if (split == 0 || split == std::string::npos) throw ParseError("unknown label '" + term + "'");
            }
            coefficient = parse_rational(term.substr(0, split));
            label = term.substr(star == std::string::npos ? split : split + 1);
        }
        auto idx = x.find(label);
        if (!idx) throw ParseError("unknown label '" + label + "'");
        if (*idx != 0) m.coefficients[*idx - 1] += sign * coefficient;
    }
    return m;
}

namespace {

// ---------------------------------------------------------------- reading

struct Reader {
    const Caps& caps;

    static void only(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
        if (!j.is_object()) throw ParseError(where + ": expected an object");
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [k, v] : j.items())
            if (!allowed.count(k)) throw ParseError(where + ": unknown field '" + k + "'");
    }

    static const json& field(const json& j, const std::string& where, const char* key) {
        auto it = j.find(key);
        if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
        return *it;
    }

    static std::string text(const json& j, const std::string& where) {
        if (!j.is_string()) throw ParseError(where + ": expected a string");
        return j.get<std::string>();
    }

    static Rational number(const json& j, const std::string& where) {
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (j.is_string()) {
            try {
                return parse_rational(j.get<std::string>());
            } catch (const Error& e) {
                throw ParseError(where + ": " + e.what());
            }
        }
        throw ParseError(where + ": expected a rational \"p/q\" or an integer");
    }

    static Vec vec(const json& j, const std::string& where, std::size_t n) {
        if (!j.is_array()) throw ParseError(where + ": expected an array");
        if (j.size() != n) throw ParseError(where + ": expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
        Vec out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
        return out;
    }

    static Matrix matrix(const json& j, const std::string& where, std::size_t rows, std::size_t cols) {
        if (!j.is_array() || j.size() != rows)
            throw ParseError(where + ": expected " + std::to_string(rows) + " rows of length " + std::to_string(cols));
        std::vector<Vec> rs;
        for (std::size_t i = 0; i < rows; ++i) rs.push_back(vec(j[i], where + "[" + std::to_string(i) + "]", cols));
        return Matrix::from_rows(rs, cols);
    }

    // {label: value} over X; missing labels read as zero, the base point must
    // be zero. Returns values over the non-base points.
    template <class T, class ReadFn, class ZeroFn>
    static std::vector<T> by_label(const json& j, const std::string& where, const FiniteMetricSpace& x, ReadFn read,
                                   ZeroFn is_zero_value, T zero) {
        if (!j.is_object()) throw ParseError(where + ": expected an object keyed by point label");
        std::vector<T> out(x.size() - 1, zero);
        for (const auto& [label, v] : j.items()) {
            auto idx = x.find(label);
            if (!idx) throw ParseError(where + ": unknown point label '" + label + "'");
            T value = read(v, where + "." + label);
            if (*idx == 0) {
                if (!is_zero_value(value)) throw ParseError(where + ": the base point '" + label + "' must map to zero");
                continue;
            }
            out[*idx - 1] = std::move(value);
        }
        return out;
    }

    FiniteMetricSpace space(const json& j, const std::string& where) const {
        only(j, where, {"labels", "distances"});
        const json& d = field(j, where, "distances");
        if (!d.is_array()) throw ParseError(where + ".distances: expected an array of rows");
        std::size_t n = d.size();
        if (n > caps.points) throw CapExceeded("points", caps.points, n);
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < n; ++i) rows.push_back(vec(d[i], where + ".distances[" + std::to_string(i) + "]", n));
        std::vector<std::string> labels;
        if (auto it = j.find("labels"); it != j.end()) {
            if (!it->is_array() || it->size() != n) throw ParseError(where + ".labels: expected " + std::to_string(n) + " labels");
            for (const auto& l : *it) labels.push_back(text(l, where + ".labels"));
        }
        try {
            return validate_metric(rows, labels);
        } catch (const CapExceeded&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(where + ": " + e.what());
        }
    }

    NormEntry norm(const json& j, const std::string& where) const {
        try {
            if (j.is_string()) return {j.get<std::string>(), parse_norm_shorthand(j.get<std::string>(), caps)};
            only(j, where, {"dual_vertices"});
            const json& w = field(j, where, "dual_vertices");
            if (!w.is_array() || w.empty()) throw ParseError(where + ".dual_vertices: expected a nonempty array");
            if (!w[0].is_array()) throw ParseError(where + ".dual_vertices[0]: expected an array");
            std::size_t n = w[0].size();
            if (n > caps.dim) throw CapExceeded("dim", caps.dim, n);
            std::vector<Vec> vs;
            for (std::size_t i = 0; i < w.size(); ++i)
                vs.push_back(vec(w[i], where + ".dual_vertices[" + std::to_string(i) + "]", n));
            return {"", PolyhedralNorm::from_dual_vertices(std::move(vs), caps)};
        } catch (const CapExceeded&) {
            throw;
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
};

Matrix zero_matrix(std::size_t r, std::size_t c) { return Matrix(r, c); }

// ---------------------------------------------------------------- writing

json rational_json(const Rational& r) { return to_string(r); }

json vec_json(VecView v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(rational_json(x));
    return out;
}

json matrix_json(const Matrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vec_json(m.row(i)));
    return out;
}

}  // namespace

InstanceSet parse_instance_text(const std::string& text, const Caps& caps) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("parse error: ") + e.what());
    }
    Reader rd{caps};
    Reader::only(doc, "instance",
                 {"spaces", "norms", "operators", "maps", "linear_maps", "tensors", "free_vectors", "two_lipschitz",
                  "samples"});
    InstanceSet inst;
    auto section = [&](const char* key) -> const json* {
        auto it = doc.find(key);
        if (it == doc.end()) return nullptr;
        if (!it->is_object()) throw ParseError(std::string(key) + ": expected an object keyed by name");
        return &*it;
    };
    if (auto s = section("spaces"))
        for (const auto& [name, v] : s->items()) inst.spaces.emplace(name, rd.space(v, "spaces." + name));
    if (auto s = section("norms"))
        for (const auto& [name, v] : s->items()) inst.norms.emplace(name, rd.norm(v, "norms." + name));

    auto ref_space = [&](const json& j, const std::string& where, const char* key) {
        std::string name = Reader::text(Reader::field(j, where, key), where + "." + key);
        if (!inst.spaces.count(name)) throw ParseError(where + "." + key + ": unknown space '" + name + "'");
        return name;
    };
    auto ref_norm = [&](const json& j, const std::string& where, const char* key) {
        std::string name = Reader::text(Reader::field(j, where, key), where + "." + key);
        if (!inst.norms.count(name)) throw ParseError(where + "." + key + ": unknown norm '" + name + "'");
        return name;
    };
    auto matrix_zero = [](const Matrix& m) { return m.is_zero(); };
    auto vec_zero = [](const Vec& v) { return is_zero(v); };

    if (auto s = section("operators")) {
        for (const auto& [name, v] : s->items()) {
            std::string where = "operators." + name;
            Reader::only(v, where, {"space", "domain", "codomain", "table"});
            std::string xs = ref_space(v, where, "space");
            std::string es = ref_norm(v, where, "domain");
            std::string fs = ref_norm(v, where, "codomain");
            const auto& x = inst.space(xs);
            std::size_t de = inst.norm(es).dimension(), df = inst.norm(fs).dimension();
            auto table = Reader::by_label<Matrix>(
                Reader::field(v, where, "table"), where + ".table", x,
                [&](const json& j, const std::string& w) { return Reader::matrix(j, w, df, de); }, matrix_zero,
                zero_matrix(df, de));
            inst.operators.emplace(name, OperatorEntry{xs, es, fs, LipLinearOperator(x, inst.norm(es), inst.norm(fs), table)});
        }
    }
    if (auto s = section("maps")) {
        for (const auto& [name, v] : s->items()) {
            std::string where = "maps." + name;
            Reader::only(v, where, {"space", "codomain", "values"});
            std::string xs = ref_space(v, where, "space");
            std::string es = ref_norm(v, where, "codomain");
            const auto& x = inst.space(xs);
            std::size_t de = inst.norm(es).dimension();
            auto values = Reader::by_label<Vec>(
                Reader::field(v, where, "values"), where + ".values", x,
                [&](const json& j, const std::string& w) { return Reader::vec(j, w, de); }, vec_zero, zeros(de));
            inst.maps.emplace(name, MapEntry{xs, es, LipschitzMap(x, inst.norm(es), values)});
        }
    }
    if (auto s = section("linear_maps")) {
        for (const auto& [name, v] : s->items()) {
            std::string where = "linear_maps." + name;
            Reader::only(v, where, {"domain", "codomain", "matrix"});
            std::string es = ref_norm(v, where, "domain");
            std::string fs = ref_norm(v, where, "codomain");
            Matrix m = Reader::matrix(Reader::field(v, where, "matrix"), where + ".matrix", inst.norm(fs).dimension(),
                                      inst.norm(es).dimension());
            inst.linear_maps.emplace(name, LinearMapEntry{es, fs, std::move(m)});
        }
    }
    if (auto s = section("tensors")) {
        for (const auto& [name, v] : s->items()) {
            std::string where = "tensors." + name;
            Reader::only(v, where, {"space", "norm", "rows"});
            std::string xs = ref_space(v, where, "space");
            std::string es = ref_norm(v, where, "norm");
            std::size_t de = inst.norm(es).dimension();
            // The base row of delta_x (x) u_x is meaningless: delta_0 = 0.
            auto rows = Reader::by_label<Vec>(
                Reader::field(v, where, "rows"), where + ".rows", inst.space(xs),
                [&](const json& j, const std::string& w) { return Reader::vec(j, w, de); }, vec_zero, zeros(de));
            inst.tensors.emplace(name, TensorEntry{xs, es, FreeTensor{rows}});
        }
    }
    if (auto s = section("free_vectors")) {
        for (const auto& [name, v] : s->items()) {
            std::string where = "free_vectors." + name;
            Reader::only(v, where, {"space", "coefficients"});
            std::string xs = ref_space(v, where, "space");
            auto coeffs = Reader::by_label<Rational>(
                Reader::field(v, where, "coefficients"), where + ".coefficients", inst.space(xs),
                [](const json& j, const std::string& w) { return Reader::number(j, w); },
                [](const Rational& r) { return r == 0; }, Rational(0));
            inst.free_vectors.emplace(name, FreeVectorEntry{xs, FreeVector{coeffs}});
        }
    }
    if (auto s = section("two_lipschitz")) {
        for (const auto& [name, v] : s->items()) {
            std::string where = "two_lipschitz." + name;
            Reader::only(v, where, {"x", "y", "codomain", "values"});
            std::string xs = ref_space(v, where, "x");
            std::string ys = ref_space(v, where, "y");
            std::string fs = ref_norm(v, where, "codomain");
            const auto& x = inst.space(xs);
            const auto& y = inst.space(ys);
            std::size_t df = inst.norm(fs).dimension();
            const json& vals = Reader::field(v, where, "values");
            if (!vals.is_object()) throw ParseError(where + ".values: expected an object keyed by label of x");
            std::vector<std::vector<Vec>> table(x.size(), std::vector<Vec>(y.size(), zeros(df)));
            for (const auto& [lx, row] : vals.items()) {
                auto ix = x.find(lx);
                if (!ix) throw ParseError(where + ".values: unknown point label '" + lx + "'");
                auto full = Reader::by_label<Vec>(
                    row, where + ".values." + lx, y,
                    [&](const json& j, const std::string& w) { return Reader::vec(j, w, df); }, vec_zero, zeros(df));
                for (std::size_t iy = 1; iy < y.size(); ++iy) table[*ix][iy] = full[iy - 1];
                if (*ix == 0)
                    for (const auto& e : full)
                        if (!is_zero(e)) throw ParseError(where + ".values: the base row '" + lx + "' must be zero");
            }
            inst.two_lipschitz.emplace(name, TwoLipschitzEntry{xs, ys, fs, TwoLipschitzTable(x, y, inst.norm(fs), table)});
        }
    }
    if (auto s = section("samples")) {
        for (const auto& [name, v] : s->items()) {
            std::string where = "samples." + name;
            Reader::only(v, where, {"space", "triples"});
            std::string xs = ref_space(v, where, "space");
            const auto& x = inst.space(xs);
            const json& ts = Reader::field(v, where, "triples");
            if (!ts.is_array() || ts.empty()) throw ParseError(where + ".triples: expected a nonempty array");
            SequenceSample sample;
            std::optional<std::size_t> dim;
            for (std::size_t i = 0; i < ts.size(); ++i) {
                std::string w = where + ".triples[" + std::to_string(i) + "]";
                Reader::only(ts[i], w, {"x", "y", "e"});
                SampleTriple t;
                for (auto [key, slot] : {std::pair{"x", &t.x}, std::pair{"y", &t.y}}) {
                    std::string label = Reader::text(Reader::field(ts[i], w, key), w + "." + key);
                    auto idx = x.find(label);
                    if (!idx) throw ParseError(w + "." + key + ": unknown point label '" + label + "'");
                    *slot = *idx;
                }
                const json& e = Reader::field(ts[i], w, "e");
                if (!dim) dim = e.is_array() ? e.size() : 0;
                t.e = Reader::vec(e, w + ".e", *dim);
                sample.push_back(std::move(t));
            }
            inst.samples.emplace(name, SampleEntry{xs, std::move(sample)});
        }
    }
    return inst;
}

InstanceSet parse_instance(const std::string& path, const Caps& caps) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance_text(ss.str(), caps);
}

std::string emit_instance(const InstanceSet& inst) {
    json doc = json::object();
    auto labelled = [](const FiniteMetricSpace& x, auto&& value_of, std::size_t count) {
        json out = json::object();
        for (std::size_t i = 0; i < count; ++i) out[x.label(i + 1)] = value_of(i);
        return out;
    };
    for (const auto& [name, x] : inst.spaces) {
        json rows = json::array();
        for (const auto& r : x.distances()) rows.push_back(vec_json(r));
        doc["spaces"][name] = {{"labels", x.labels()}, {"distances", rows}};
    }
    for (const auto& [name, n] : inst.norms) {
        if (!n.shorthand.empty()) {
            doc["norms"][name] = n.shorthand;
        } else {
            json w = json::array();
            for (const auto& v : n.norm.dual_vertices()) w.push_back(vec_json(v));
            doc["norms"][name] = {{"dual_vertices", w}};
        }
    }
    for (const auto& [name, o] : inst.operators) {
        const auto& x = inst.space(o.space);
        doc["operators"][name] = {
            {"space", o.space},
            {"domain", o.domain},
            {"codomain", o.codomain},
            {"table", labelled(x, [&](std::size_t i) { return matrix_json(o.op.table()[i]); }, x.size() - 1)}};
    }
    for (const auto& [name, m] : inst.maps) {
        const auto& x = inst.space(m.space);
        doc["maps"][name] = {{"space", m.space},
                             {"codomain", m.codomain},
                             {"values", labelled(x, [&](std::size_t i) { return vec_json(m.map.values[i]); }, x.size() - 1)}};
    }
    for (const auto& [name, v] : inst.linear_maps)
        doc["linear_maps"][name] = {{"domain", v.domain}, {"codomain", v.codomain}, {"matrix", matrix_json(v.matrix)}};
    for (const auto& [name, t] : inst.tensors) {
        const auto& x = inst.space(t.space);
        doc["tensors"][name] = {{"space", t.space},
                                {"norm", t.norm},
                                {"rows", labelled(x, [&](std::size_t i) { return vec_json(t.tensor.rows[i]); }, x.size() - 1)}};
    }
    for (const auto& [name, m] : inst.free_vectors) {
        const auto& x = inst.space(m.space);
        doc["free_vectors"][name] = {
            {"space", m.space},
            {"coefficients", labelled(x, [&](std::size_t i) { return rational_json(m.vector.coefficients[i]); }, x.size() - 1)}};
    }
    for (const auto& [name, t] : inst.two_lipschitz) {
        const auto& x = inst.space(t.x);
        const auto& y = inst.space(t.y);
        json vals = json::object();
        for (std::size_t i = 1; i < x.size(); ++i)
            vals[x.label(i)] = labelled(y, [&](std::size_t j) { return vec_json(t.table.values[i][j + 1]); }, y.size() - 1);
        doc["two_lipschitz"][name] = {{"x", t.x}, {"y", t.y}, {"codomain", t.codomain}, {"values", vals}};
    }
    for (const auto& [name, s] : inst.samples) {
        const auto& x = inst.space(s.space);
        json ts = json::array();
        for (const auto& t : s.sample) ts.push_back({{"x", x.label(t.x)}, {"y", x.label(t.y)}, {"e", vec_json(t.e)}});
        doc["samples"][name] = {{"space", s.space}, {"triples", ts}};
    }
    return doc.dump(2) + "\n";
}

InstanceSet gen_random(std::size_t points, std::size_t dim, std::uint64_t seed, const Caps& caps) {
    if (points < 2) throw InvalidInput("gen needs at least 2 points");
    if (dim < 1) throw InvalidInput("gen needs dimension at least 1");
    if (points > caps.points) throw CapExceeded("points", caps.points, points);
    if (dim > caps.dim) throw CapExceeded("dim", caps.dim, dim);
    std::mt19937_64 gen(seed);
    auto integer = [&](long lo, long hi) { return lo + static_cast<long>(gen() % static_cast<std::uint64_t>(hi - lo + 1)); };
    auto rational = [&](long lo, long hi, long max_den) {
        long den = integer(1, max_den);
        return Rational(integer(lo * den, hi * den), den);
    };
    auto vec = [&](std::size_t n) {
        Vec v(n);
        for (auto& x : v) x = rational(-3, 3, 2);
        return v;
    };
    auto matrix = [&](std::size_t r, std::size_t c) {
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rational(-3, 3, 2);
        return m;
    };

    InstanceSet inst;
    std::vector<Vec> d(points, Vec(points, Rational(0)));
    for (std::size_t i = 0; i < points; ++i)
        for (std::size_t j = i + 1; j < points; ++j) d[i][j] = d[j][i] = rational(1, 6, 2);
    for (std::size_t k = 0; k < points; ++k)
        for (std::size_t i = 0; i < points; ++i)
            for (std::size_t j = 0; j < points; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    std::vector<std::string> labels = {"0"};
    for (std::size_t i = 1; i < points; ++i) labels.push_back("p" + std::to_string(i));
    inst.spaces.emplace("X", validate_metric(d, labels));
    const auto& x = inst.space("X");

    // l1, linf, or the coordinate functionals plus one random functional.
    auto random_norm = [&]() -> NormEntry {
        long kind = integer(0, 2);
        std::string tag = std::to_string(dim);
        if (kind == 0 || dim == 1) return {"l1:" + tag, PolyhedralNorm::l1(dim, caps)};
        if (kind == 1) return {"linf:" + tag, PolyhedralNorm::linf(dim, caps)};
        std::vector<Vec> w;
        for (std::size_t i = 0; i < dim; ++i) {
            w.push_back(unit_vector(dim, i));
            w.push_back(scale(unit_vector(dim, i), -1));
        }
        Vec extra(dim);
        for (auto& c : extra) c = integer(-1, 1);
        if (std::count_if(extra.begin(), extra.end(), [](const Rational& c) { return c != 0; }) < 2) extra.assign(dim, Rational(1));
        w.push_back(extra);
        w.push_back(scale(extra, -1));
        return {"", PolyhedralNorm::from_dual_vertices(std::move(w), caps)};
    };
    inst.norms.emplace("E", random_norm());
    inst.norms.emplace("F", random_norm());
    inst.norms.emplace("R", NormEntry{"linf:1", PolyhedralNorm::scalar()});
    const auto& e = inst.norm("E");
    const auto& f = inst.norm("F");

    std::vector<Matrix> table, scalar_table;
    std::vector<Vec> values, rows;
    for (std::size_t i = 1; i < points; ++i) table.push_back(matrix(dim, dim));
    for (std::size_t i = 1; i < points; ++i) scalar_table.push_back(matrix(1, dim));
    for (std::size_t i = 1; i < points; ++i) values.push_back(vec(dim));
    for (std::size_t i = 1; i < points; ++i) rows.push_back(vec(dim));
    inst.operators.emplace("T", OperatorEntry{"X", "E", "F", LipLinearOperator(x, e, f, table)});
    inst.operators.emplace("S", OperatorEntry{"X", "E", "R", LipLinearOperator(x, e, PolyhedralNorm::scalar(), scalar_table)});
    inst.maps.emplace("Rmap", MapEntry{"X", "E", LipschitzMap(x, e, values)});
    inst.linear_maps.emplace("v", LinearMapEntry{"E", "F", matrix(dim, dim)});
    inst.tensors.emplace("u", TensorEntry{"X", "E", FreeTensor{rows}});
    Vec m(points - 1);
    for (auto& c : m) c = rational(-3, 3, 2);
    inst.free_vectors.emplace("m", FreeVectorEntry{"X", FreeVector{m}});
    SequenceSample sample;
    for (int k = 0; k < 3; ++k) {
        auto a = static_cast<std::size_t>(integer(0, static_cast<long>(points) - 1));
        auto b = static_cast<std::size_t>(integer(0, static_cast<long>(points) - 2));
        if (b >= a) ++b;
        sample.push_back({a, b, vec(dim)});
    }
    inst.samples.emplace("s", SampleEntry{"X", std::move(sample)});
    return inst;
}

}  // namespace lipbox
