#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

#include "lipbox/error.hpp"
#include "lipbox/instance.hpp"
#include "lipbox/suite.hpp"

using namespace lipbox;
namespace fs = std::filesystem;

namespace {

const std::string kData = LIPBOX_TEST_DATA;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return (fs::temp_directory_path() / ("lipbox_test_" + name)).string(); }

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("parse_instance") {
    auto inst = parse_instance(kData + "/x3.json");
    const auto& x = inst.space("X3");
    CHECK(x.size() == 3);
    CHECK(x.distance(0, 2) == 2);
    CHECK(x.label(1) == "a");
    CHECK(inst.norm("E") == PolyhedralNorm::l1(2));
    CHECK(inst.norm("E").dual_vertices().size() == 4);
    CHECK(inst.operators.at("T").op.at(2)(1, 0) == Rational(-1, 2));

    try {
        parse_instance(kData + "/x3_prime_bad.json");
        FAIL("expected a triangle violation");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("(a,0,b)") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_instance(kData + "/corrupted.json"), ParseError);
    CHECK_THROWS_AS(parse_instance_text("{\"spaces\": {}, \"extra\": 1}"), ParseError);
    CHECK_THROWS_AS(parse_instance_text("{\"norms\": {\"E\": {\"dual_vertices\": [[1, 0]], \"x\": 1}}}"), ParseError);
    CHECK_THROWS_AS(parse_instance_text("{\"norms\": {\"E\": \"l3:2\"}}"), ParseError);
    CHECK_THROWS_AS(parse_instance_text("{\"norms\": {\"E\": {\"dual_vertices\": [[0.5, 0]]}}}"), ParseError);
    CHECK_THROWS_AS(parse_instance_text("not json"), ParseError);
    Caps small;
    small.points = 2;
    CHECK_THROWS_AS(parse_instance(kData + "/x3.json", small), CapExceeded);

    CHECK(parse_norm_shorthand("l1:2") == PolyhedralNorm::l1(2));
    CHECK(parse_norm_shorthand("linf:3") == PolyhedralNorm::linf(3));
    CHECK(parse_free_expression("a+b", x).coefficients == Vec{1, 1});
    CHECK(parse_free_expression("2a - 1/2*b", x).coefficients == Vec{2, Rational(-1, 2)});
    CHECK(parse_free_expression("-b + 0", x).coefficients == Vec{0, -1});
    CHECK_THROWS_AS(parse_free_expression("a+c", x), ParseError);
}

TEST_CASE("gen_random: determinism, validity and round trip") {
    for (std::uint64_t seed : {1, 2, 3, 17}) {
        for (std::size_t n : {2, 3, 5}) {
            auto a = gen_random(n, 2, seed);
            CHECK(emit_instance(a) == emit_instance(gen_random(n, 2, seed)));
            auto back = parse_instance_text(emit_instance(a));
            CHECK(emit_instance(back) == emit_instance(a));
            CHECK(back.operators.at("T").op == a.operators.at("T").op);
            CHECK(back.maps.at("Rmap").map.values == a.maps.at("Rmap").map.values);
            CHECK(back.space("X").distances() == a.space("X").distances());
        }
    }
    CHECK(emit_instance(gen_random(3, 2, 1)) != emit_instance(gen_random(3, 2, 2)));
    Caps caps;
    CHECK_THROWS_AS(gen_random(caps.points + 1, 2, 1), CapExceeded);
    CHECK_THROWS_AS(gen_random(3, caps.dim + 1, 1), CapExceeded);
}

TEST_CASE("verify_suite") {
    auto builtin = verify_suite(builtin_instances());
    CHECK(builtin.passed());
    CHECK(builtin.checks.size() > 40);
    std::size_t s3 = 0;
    for (const auto& c : verify_suite(builtin_instances(), "s3").checks) s3 += c.section == "s3" ? 1 : 0;
    CHECK(s3 > 0);
    CHECK_THROWS_AS(verify_suite(builtin_instances(), "s9"), InvalidInput);
    for (std::uint64_t seed : {1, 2, 3}) {
        auto inst = gen_random(3, 2, seed);
        auto rep = verify_suite(inst);
        CHECK(rep.passed());
        auto again = verify_suite(gen_random(3, 2, seed));
        REQUIRE(again.checks.size() == rep.checks.size());
        for (std::size_t i = 0; i < rep.checks.size(); ++i) CHECK(again.checks[i].right == rep.checks[i].right);
    }
}

TEST_CASE("cli commands") {
    auto free = run({"norm", "free", kData + "/x3.json", "a+b"});
    CHECK(free.code == cli::kOk);
    CHECK(free.out.find("= 3") != std::string::npos);

    auto lipl = run({"norm", "lipl", kData + "/x3.json", "T"});
    CHECK(lipl.code == cli::kOk);
    CHECK(lipl.out.find("LipL(T) = 4") != std::string::npos);

    auto dom = run({"summing", "dominated", kData + "/x3.json", "line", "--p", "1", "--q", "1", "--route", "both"});
    CHECK(dom.code == cli::kOk);
    CHECK(dom.out.find("route A: pi_p^L(A_T) = 1") != std::string::npos);
    CHECK(dom.out.find("route B: pi_q(B_T) = 1") != std::string::npos);

    auto report = temp_path("dominated.json");
    auto t = run({"--report", report, "summing", "dominated", kData + "/x3.json", "T", "--route", "both"});
    CHECK(t.code == cli::kOk);
    auto j = read_json(report);
    CHECK(j["routes"]["A"]["value"] == "4");
    CHECK(j["routes"]["B"]["value"] == "9/2");
    CHECK(j["delta"]["value"] == "9/2");
    CHECK(j["delta"]["verification"]["passed"] == true);
    CHECK(j["delta"]["certificates"][0]["kind"] == "two-measure");

    CHECK(run({"summing", "lipp", kData + "/x3.json", "iso", "--p", "2"}).code == cli::kOk);
    CHECK(run({"summing", "q", kData + "/x3.json", "id", "--q", "3/2"}).code == cli::kOk);
    CHECK(run({"summing", "q", kData + "/x3.json", "id", "--q", "1/2"}).code == cli::kInputError);
    CHECK(run({"integral", kData + "/x3.json", "line", "--factorize"}).code == cli::kOk);
    CHECK(run({"integral", kData + "/x3.json", "T", "--factorize"}).code == cli::kInputError);
    CHECK(run({"norm", "pi", kData + "/x3.json", "u"}).code == cli::kOk);
    CHECK(run({"norm", "eps", kData + "/x3.json", "u"}).code == cli::kOk);
    CHECK(run({"norm", "lip", kData + "/x3.json", "iso"}).code == cli::kOk);
    CHECK(run({"norm", "lipl", kData + "/x3.json", "missing"}).code == cli::kInputError);
    CHECK(run({"verify", "--builtin", "--suite", "all"}).code == cli::kOk);
    CHECK(run({"verify", "--seed", "5", "--points", "3", "--dim", "2"}).code == cli::kOk);
}

TEST_CASE("cli exit codes and errors") {
    auto bad = run({"verify", kData + "/x3_prime_bad.json"});
    CHECK(bad.code == cli::kInputError);
    CHECK(bad.err.find("(a,0,b)") != std::string::npos);
    // A nonzero A(0) is a validation failure, not an identity failure.
    CHECK(run({"verify", kData + "/corrupted.json"}).code == cli::kInputError);
    auto cap = run({"--cap-points", "2", "norm", "lipl", kData + "/x3.json", "T"});
    CHECK(cap.code == cli::kCapExceeded);
    CHECK(cap.err.find("points") != std::string::npos);
    CHECK(cap.err.find("limit 2") != std::string::npos);
    CHECK(run({"frobnicate"}).code == cli::kInputError);
    CHECK(run({}).code == cli::kInputError);
    CHECK(run({"norm", "lipl", kData + "/nope.json", "T"}).code == cli::kInputError);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("cli caps from the environment") {
    setenv("LIPBOX_CAP_POINTS", "2", 1);
    CHECK(run({"norm", "lipl", kData + "/x3.json", "T"}).code == cli::kCapExceeded);
    setenv("LIPBOX_CAP_POINTS", "zero", 1);
    CHECK(run({"norm", "lipl", kData + "/x3.json", "T"}).code == cli::kInputError);
    unsetenv("LIPBOX_CAP_POINTS");
    CHECK(run({"norm", "lipl", kData + "/x3.json", "T"}).code == cli::kOk);
}

TEST_CASE("cli gen and report determinism") {
    auto a = temp_path("gen_a.json");
    auto b = temp_path("gen_b.json");
    CHECK(run({"gen", "--points", "3", "--dim", "2", "--seed", "1", "--out", a}).code == cli::kOk);
    CHECK(run({"gen", "--points", "3", "--dim", "2", "--seed", "1", "--out", b}).code == cli::kOk);
    CHECK(read_json(a) == read_json(b));
    CHECK(run({"verify", a}).code == cli::kOk);
    CHECK(run({"gen", "--points", "99", "--dim", "2", "--seed", "1"}).code == cli::kCapExceeded);

    auto r1 = temp_path("r1.json");
    auto r2 = temp_path("r2.json");
    CHECK(run({"--report", r1, "summing", "dominated", a, "T"}).code == cli::kOk);
    CHECK(run({"--report", r2, "summing", "dominated", a, "T"}).code == cli::kOk);
    auto j1 = read_json(r1);
    auto j2 = read_json(r2);
    j1.erase("timing_ms");
    j2.erase("timing_ms");
    CHECK(j1 == j2);
}
