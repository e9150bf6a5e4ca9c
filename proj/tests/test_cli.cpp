#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "nijex/builtins.hpp"
#include "nijex/report.hpp"
#include "nijex/verify.hpp"

using namespace nijex;
using json = nlohmann::json;

namespace {

bool spec_equivalent(const StructureSpec& a, const StructureSpec& b) {
    return a.name == b.name && a.dim == b.dim && a.matrix == b.matrix &&
           a.conjugate == b.conjugate && a.box == b.box &&
           a.tolerance == b.tolerance && a.integrable == b.integrable &&
           a.fields == b.fields && a.forms == b.forms;
}

}  // namespace

TEST_CASE("minimal spec parses with defaults") {
    const StructureSpec s = parse_structure_spec(
        R"({"name":"m","dim":2,"J":{"matrix":[["0","1"],["-1","0"]]}})");
    CHECK(s.name == "m");
    CHECK(s.dim == 2);
    CHECK(s.matrix.has_value());
    CHECK(s.box.size() == 2);
    CHECK(s.box[0][0] == -1.0);
    CHECK(s.tolerance == 1e-10);
    CHECK_FALSE(s.integrable);
}

TEST_CASE("schema violations carry a field path") {
    auto expect_error = [](const char* text, const char* needle) {
        try {
            parse_structure_spec(text);
            FAIL_CHECK("expected SpecError for ", text);
        } catch (const SpecError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error(R"({"dim":2,"J":{"matrix":[["0","1"],["-1","0"]]}})", "name");
    expect_error(R"({"name":"m","dim":3,"J":{"matrix":[]}})", "dim");
    expect_error(R"({"name":"m","dim":2,"J":{}})", "J");
    expect_error(R"({"name":"m","dim":2,"J":{"matrix":[["0"],["-1"]]}})", "J.matrix");
    expect_error(
        R"({"name":"m","dim":2,"J":{"matrix":[["0","x9"],["-1","0"]]}})",
        "J.matrix[0][1]");
    expect_error(
        R"({"name":"m","dim":2,"J":{"matrix":[["0","1"],["-1","0"]]},"box":[[1,-1],[0,1]]})",
        "box");
    expect_error(
        R"({"name":"m","dim":2,"J":{"matrix":[["0","1"],["-1","0"]]},"bogus":1})",
        "bogus");
    expect_error(
        R"({"name":"m","dim":2,"J":{"matrix":[["0","1"],["-1","0"]]},"fields":{"X":["x1"]}})",
        "fields.X");
}

TEST_CASE("malformed JSON reports the line") {
    try {
        parse_structure_spec("{\n  \"name\": \"m\",\n  broken\n}");
        FAIL_CHECK("expected SpecError");
    } catch (const SpecError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("named fields and forms parse and build") {
    const StructureSpec s = parse_structure_spec(R"({
      "name": "m", "dim": 2,
      "J": {"matrix": [["0","1"],["-1","0"]]},
      "fields": {"X": ["x1", "0"]},
      "forms": {"zeta": ["1", "x1*x2"]}
    })");
    const VecField x = build_named_field(s, "X");
    CHECK(x.component(1).eval(std::vector<double>{0.3, 0.0}) == Complex{0.3, 0.0});
    const Form z = build_named_form(s, "zeta");
    const int i2[1] = {2};
    CHECK(z.coefficient(i2).eval(std::vector<double>{2.0, 3.0}) == Complex{6.0, 0.0});
    CHECK_THROWS_AS(build_named_field(s, "missing"), SpecError);
}

TEST_CASE("builtins are listed, resolvable, and valid") {
    const auto& list = builtins();
    CHECK(list.size() == 5);
    bool has_twist = false;
    for (const auto& b : list) has_twist = has_twist || std::string(b.name) == "twist4";
    CHECK(has_twist);
    CHECK(find_builtin("flat") != nullptr);
    CHECK(std::string(find_builtin("flat")->name) == "flat4");
    CHECK(find_builtin("nope") == nullptr);
    for (const auto& b : list) {
        const StructureSpec spec = parse_structure_spec(b.spec_json);
        const AcsField j = build_acs(spec);
        Rng rng(3);
        std::vector<std::vector<double>> pts;
        for (int s = 0; s < 50; ++s) {
            std::vector<double> p(std::size_t(spec.dim));
            for (int c = 0; c < spec.dim; ++c)
                p[std::size_t(c)] =
                    rng.uniform(spec.box[std::size_t(c)][0], spec.box[std::size_t(c)][1]);
            pts.push_back(std::move(p));
        }
        const ValidationReport rep = validate(j, pts, spec.tolerance);
        CAPTURE(b.name);
        CHECK(rep.pass);
    }
}

TEST_CASE("format_double keeps 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(1e-9) == "1.0000000000000001e-09");
}

TEST_CASE("rendered reports are valid JSON with the fixed field order") {
    const StructureSpec spec = builtin_spec("flat2");
    const AcsField j = build_acs(spec);
    SuiteConfig cfg;
    cfg.points = 5;
    std::vector<std::vector<double>> pts{{0.0, 0.0}, {0.5, -0.5}};
    const ValidationReport val = validate(j, pts, spec.tolerance);
    const SuiteReport suite = run_suite(j, cfg, spec.name, spec.integrable);
    const std::string text = render_report(spec, cfg, val, suite, std::nullopt);

    const json doc = json::parse(text);
    CHECK(doc["tool"] == kToolVersion);
    CHECK(doc["structure"] == "flat2");
    CHECK(doc["dim"] == 2);
    CHECK(doc["config"]["seed"] == 42);
    CHECK(doc["validation"]["pass"] == true);
    CHECK(doc["suite"]["identities"].size() == 26);
    CHECK(doc["suite"]["tier1_pass"] == true);
    CHECK(doc["overall_pass"] == true);
    CHECK(doc.count("timing") == 0);
    for (const auto& r : doc["suite"]["identities"]) {
        CHECK(r.count("id") == 1);
        CHECK(r.count("statement") == 1);
        CHECK((r["tier"] == "derived-chain" || r["tier"] == "as-stated"));
        CHECK(r.count("max_abs_residual") == 1);
        CHECK(r.count("max_rel_residual") == 1);
        CHECK(r.count("pass") == 1);
    }

    // timing appears only on request
    const std::string timed =
        render_report(spec, cfg, val, suite, ReportTiming{12.5});
    CHECK(json::parse(timed).count("timing") == 1);
}

TEST_CASE("the spec echoed in a report re-parses to an equivalent spec") {
    for (const char* name : {"flat2", "flat4", "flat6", "pullback4", "twist4"}) {
        const StructureSpec spec = builtin_spec(name);
        const AcsField j = build_acs(spec);
        SuiteConfig cfg;
        cfg.points = 1;
        std::vector<std::vector<double>> pts{std::vector<double>(std::size_t(spec.dim), 0.1)};
        const ValidationReport val = validate(j, pts, spec.tolerance);
        SuiteReport suite;  // an empty suite block is enough for the echo test
        suite.structure = spec.name;
        suite.dim = spec.dim;
        const std::string text = render_report(spec, cfg, val, suite, std::nullopt);
        const json doc = json::parse(text);
        const StructureSpec back = parse_structure_spec(doc["spec"].dump());
        CHECK(spec_equivalent(spec, back));
    }
}

TEST_CASE("spec with fields and forms round-trips through the report echo") {
    const StructureSpec spec = parse_structure_spec(R"({
      "name": "m", "dim": 2,
      "J": {"matrix": [["0","1"],["-1","0"]]},
      "box": [[-0.25, 0.75], [-1, 1]],
      "tolerance": 1e-9,
      "integrable": true,
      "fields": {"X": ["x1", "0"], "Y": ["0", "x2"]},
      "forms": {"zeta": ["1", "x1"]}
    })");
    SuiteConfig cfg;
    ValidationReport val;
    val.samples = 0;
    val.tolerance = spec.tolerance;
    val.pass = true;
    SuiteReport suite;
    suite.structure = spec.name;
    suite.dim = spec.dim;
    const std::string text = render_report(spec, cfg, val, suite, std::nullopt);
    const StructureSpec back = parse_structure_spec(json::parse(text)["spec"].dump());
    CHECK(spec_equivalent(spec, back));
}
