#include "nijex/structure_spec.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nijex {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw SpecError("spec error at " + where + ": " + what);
}

std::vector<std::vector<std::string>> read_matrix(const json& v, int n,
                                                  const std::string& where) {
    if (!v.is_array() || int(v.size()) != n) fail(where, "expected an n x n array");
    std::vector<std::vector<std::string>> out;
    out.reserve(std::size_t(n));
    for (int r = 0; r < n; ++r) {
        const json& row = v[std::size_t(r)];
        if (!row.is_array() || int(row.size()) != n)
            fail(where + "[" + std::to_string(r) + "]", "expected a row of n strings");
        std::vector<std::string> rr;
        rr.reserve(std::size_t(n));
        for (int c = 0; c < n; ++c) {
            const json& cell = row[std::size_t(c)];
            if (!cell.is_string())
                fail(where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]",
                     "expected an expression string");
            rr.push_back(cell.get<std::string>());
        }
        out.push_back(std::move(rr));
    }
    return out;
}

void check_expressions(const std::vector<std::vector<std::string>>& m, int dim,
                       const std::string& where) {
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m[r].size(); ++c) {
            try {
                parse(m[r][c], dim);
            } catch (const ParseError& e) {
                fail(where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]",
                     e.what());
            }
        }
}

std::map<std::string, std::vector<std::string>> read_named_arrays(
    const json& v, int n, const std::string& where) {
    std::map<std::string, std::vector<std::string>> out;
    if (!v.is_object()) fail(where, "expected an object of named arrays");
    for (const auto& [name, arr] : v.items()) {
        if (!arr.is_array() || int(arr.size()) != n)
            fail(where + "." + name, "expected an array of n expression strings");
        std::vector<std::string> strs;
        for (const json& cell : arr) {
            if (!cell.is_string()) fail(where + "." + name, "expected expression strings");
            strs.push_back(cell.get<std::string>());
        }
        for (const std::string& s : strs) {
            try {
                parse(s, n);
            } catch (const ParseError& e) {
                fail(where + "." + name, e.what());
            }
        }
        out.emplace(name, std::move(strs));
    }
    return out;
}

}  // namespace

StructureSpec parse_structure_spec(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        // byte offset -> line for readable diagnostics
        std::size_t line = 1;
        for (std::size_t k = 0; k < e.byte && k < json_text.size(); ++k)
            if (json_text[k] == '\n') ++line;
        throw SpecError("spec is not valid JSON (line " + std::to_string(line) +
                        "): " + e.what());
    }
    if (!doc.is_object()) throw SpecError("spec error at $: expected a JSON object");

    StructureSpec spec;
    if (!doc.contains("name") || !doc["name"].is_string())
        fail("name", "expected a string");
    spec.name = doc["name"].get<std::string>();
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        fail("dim", "expected an integer");
    spec.dim = doc["dim"].get<int>();
    if (spec.dim < 2 || spec.dim % 2 != 0) fail("dim", "must be even and >= 2");

    if (!doc.contains("J") || !doc["J"].is_object())
        fail("J", "expected an object with \"matrix\" or \"conjugate\"");
    const json& jj = doc["J"];
    if (jj.contains("matrix") == jj.contains("conjugate"))
        fail("J", "exactly one of \"matrix\" and \"conjugate\" is required");
    if (jj.contains("matrix")) {
        spec.matrix = read_matrix(jj["matrix"], spec.dim, "J.matrix");
        check_expressions(*spec.matrix, spec.dim, "J.matrix");
    } else {
        const json& cj = jj["conjugate"];
        if (!cj.is_object() || !cj.contains("A") || !cj.contains("A_inv"))
            fail("J.conjugate", "expected {\"A\": ..., \"A_inv\": ...}");
        auto a = read_matrix(cj["A"], spec.dim, "J.conjugate.A");
        auto ai = read_matrix(cj["A_inv"], spec.dim, "J.conjugate.A_inv");
        check_expressions(a, spec.dim, "J.conjugate.A");
        check_expressions(ai, spec.dim, "J.conjugate.A_inv");
        spec.conjugate = std::make_pair(std::move(a), std::move(ai));
    }

    if (doc.contains("box")) {
        const json& bx = doc["box"];
        if (!bx.is_array() || int(bx.size()) != spec.dim)
            fail("box", "expected n [lo,hi] pairs");
        for (const json& iv : bx) {
            if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
                fail("box", "expected [lo,hi] number pairs");
            spec.box.push_back({iv[0].get<double>(), iv[1].get<double>()});
            if (!(spec.box.back()[0] < spec.box.back()[1]))
                fail("box", "intervals must satisfy lo < hi");
        }
    } else {
        spec.box.assign(std::size_t(spec.dim), {-1.0, 1.0});
    }

    if (doc.contains("tolerance")) {
        if (!doc["tolerance"].is_number() || !(doc["tolerance"].get<double>() > 0))
            fail("tolerance", "expected a positive number");
        spec.tolerance = doc["tolerance"].get<double>();
    }
    if (doc.contains("integrable")) {
        if (!doc["integrable"].is_boolean()) fail("integrable", "expected a boolean");
        spec.integrable = doc["integrable"].get<bool>();
    }
    if (doc.contains("fields"))
        spec.fields = read_named_arrays(doc["fields"], spec.dim, "fields");
    if (doc.contains("forms"))
        spec.forms = read_named_arrays(doc["forms"], spec.dim, "forms");

    static const char* known[] = {"name", "dim",        "J",      "box",
                                  "tolerance", "integrable", "fields", "forms"};
    for (const auto& [key, unused] : doc.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) fail(key, "unknown field");
    }
    return spec;
}

StructureSpec load_structure_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot open spec file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_structure_spec(ss.str());
}

namespace {

std::vector<std::vector<Expr>> parse_matrix(
    const std::vector<std::vector<std::string>>& m, int dim) {
    std::vector<std::vector<Expr>> out;
    out.reserve(m.size());
    for (const auto& row : m) {
        std::vector<Expr> rr;
        rr.reserve(row.size());
        for (const auto& s : row) rr.push_back(parse(s, dim));
        out.push_back(std::move(rr));
    }
    return out;
}

}  // namespace

AcsField build_acs(const StructureSpec& spec) {
    Chart chart(spec.dim, spec.box, spec.tolerance);
    if (spec.matrix) return AcsField(chart, parse_matrix(*spec.matrix, spec.dim));
    const auto a = parse_matrix(spec.conjugate->first, spec.dim);
    const auto ai = parse_matrix(spec.conjugate->second, spec.dim);
    return conjugate_standard(chart, a, ai);
}

VecField build_named_field(const StructureSpec& spec, const std::string& name) {
    auto it = spec.fields.find(name);
    if (it == spec.fields.end()) throw SpecError("unknown field name: " + name);
    std::vector<Expr> comps;
    for (const std::string& s : it->second) comps.push_back(parse(s, spec.dim));
    return VecField(spec.dim, std::move(comps));
}

Form build_named_form(const StructureSpec& spec, const std::string& name) {
    auto it = spec.forms.find(name);
    if (it == spec.forms.end()) throw SpecError("unknown form name: " + name);
    Form f(spec.dim, 1);
    for (int i = 1; i <= spec.dim; ++i) {
        const int idx[1] = {i};
        f.set_coefficient(idx, parse(it->second[std::size_t(i - 1)], spec.dim));
    }
    return f;
}

}  // namespace nijex
