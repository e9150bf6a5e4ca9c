#include "nijex/report.hpp"

#include <cmath>
#include <cstdio>

namespace nijex {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void JsonWriter::raw(const std::string& s) { out_ += s; }

void JsonWriter::indent() {
    out_ += '\n';
    out_.append(2 * has_items_.size(), ' ');
}

void JsonWriter::comma_and_indent() {
    if (pending_key_) {
        pending_key_ = false;
        return;  // value follows "key": directly
    }
    if (!has_items_.empty()) {
        if (has_items_.back()) out_ += ',';
        has_items_.back() = true;
        indent();
    }
}

void JsonWriter::begin_object() {
    comma_and_indent();
    out_ += '{';
    has_items_.push_back(false);
}

void JsonWriter::end_object() {
    const bool had = has_items_.back();
    has_items_.pop_back();
    if (had) indent();
    out_ += '}';
}

void JsonWriter::begin_array() {
    comma_and_indent();
    out_ += '[';
    has_items_.push_back(false);
}

void JsonWriter::end_array() {
    const bool had = has_items_.back();
    has_items_.pop_back();
    if (had) indent();
    out_ += ']';
}

void JsonWriter::key(const std::string& k) {
    if (has_items_.back()) out_ += ',';
    has_items_.back() = true;
    indent();
    out_ += '"' + json_escape(k) + "\": ";
    pending_key_ = true;
}

void JsonWriter::value(const std::string& v) {
    comma_and_indent();
    out_ += '"' + json_escape(v) + '"';
}

void JsonWriter::value(double v) {
    comma_and_indent();
    if (!std::isfinite(v)) {
        out_ += "null";
        return;
    }
    out_ += format_double(v);
}

void JsonWriter::value(std::int64_t v) {
    comma_and_indent();
    out_ += std::to_string(v);
}

void JsonWriter::value(std::uint64_t v) {
    comma_and_indent();
    out_ += std::to_string(v);
}

void JsonWriter::value(bool v) {
    comma_and_indent();
    out_ += v ? "true" : "false";
}

void JsonWriter::null() {
    comma_and_indent();
    out_ += "null";
}

namespace {

void write_string_matrix(JsonWriter& w, const std::vector<std::vector<std::string>>& m) {
    w.begin_array();
    for (const auto& row : m) {
        w.begin_array();
        for (const auto& cell : row) w.value(cell);
        w.end_array();
    }
    w.end_array();
}

void write_spec(JsonWriter& w, const StructureSpec& spec) {
    w.begin_object();
    w.key("name");
    w.value(spec.name);
    w.key("dim");
    w.value(spec.dim);
    w.key("J");
    w.begin_object();
    if (spec.matrix) {
        w.key("matrix");
        write_string_matrix(w, *spec.matrix);
    } else {
        w.key("conjugate");
        w.begin_object();
        w.key("A");
        write_string_matrix(w, spec.conjugate->first);
        w.key("A_inv");
        write_string_matrix(w, spec.conjugate->second);
        w.end_object();
    }
    w.end_object();
    w.key("box");
    w.begin_array();
    for (const auto& iv : spec.box) {
        w.begin_array();
        w.value(iv[0]);
        w.value(iv[1]);
        w.end_array();
    }
    w.end_array();
    w.key("tolerance");
    w.value(spec.tolerance);
    w.key("integrable");
    w.value(spec.integrable);
    if (!spec.fields.empty()) {
        w.key("fields");
        w.begin_object();
        for (const auto& [name, comps] : spec.fields) {
            w.key(name);
            w.begin_array();
            for (const auto& s : comps) w.value(s);
            w.end_array();
        }
        w.end_object();
    }
    if (!spec.forms.empty()) {
        w.key("forms");
        w.begin_object();
        for (const auto& [name, comps] : spec.forms) {
            w.key(name);
            w.begin_array();
            for (const auto& s : comps) w.value(s);
            w.end_array();
        }
        w.end_object();
    }
    w.end_object();
}

}  // namespace

std::string render_report(const StructureSpec& spec, const SuiteConfig& config,
                          const ValidationReport& validation,
                          const SuiteReport& suite,
                          const std::optional<ReportTiming>& timing) {
    JsonWriter w;
    w.begin_object();
    w.key("tool");
    w.value(kToolVersion);
    w.key("structure");
    w.value(suite.structure);
    w.key("dim");
    w.value(suite.dim);
    w.key("config");
    w.begin_object();
    w.key("seed");
    w.value(std::uint64_t(config.seed));
    w.key("points");
    w.value(config.points);
    w.key("tolerance");
    w.value(config.tolerance);
    w.key("field_degree");
    w.value(config.field_degree);
    w.end_object();
    w.key("spec");
    write_spec(w, spec);
    w.key("validation");
    w.begin_object();
    w.key("samples");
    w.value(validation.samples);
    w.key("tolerance");
    w.value(validation.tolerance);
    w.key("max_j_squared_residual");
    w.value(validation.max_j_squared_residual);
    w.key("max_trace_residual");
    w.value(validation.max_trace_residual);
    w.key("pass");
    w.value(validation.pass);
    w.end_object();
    w.key("suite");
    w.begin_object();
    w.key("identities");
    w.begin_array();
    for (const IdentityReport& r : suite.identities) {
        w.begin_object();
        w.key("id");
        w.value(r.id);
        w.key("statement");
        w.value(r.statement);
        w.key("tier");
        w.value(r.tier == Tier::DerivedChain ? "derived-chain" : "as-stated");
        w.key("samples");
        w.value(r.samples);
        w.key("max_abs_residual");
        w.value(r.max_abs_residual);  // null when non-finite
        w.key("max_rel_residual");
        w.value(r.max_rel_residual);
        w.key("finite");
        w.value(r.finite);
        w.key("pass");
        w.value(r.pass);
        w.end_object();
    }
    w.end_array();
    w.key("tier1_pass");
    w.value(suite.overall_pass);
    w.end_object();
    w.key("overall_pass");
    w.value(validation.pass && suite.overall_pass);
    if (timing) {
        w.key("timing");
        w.begin_object();
        w.key("wall_ms");
        w.value(timing->wall_ms);
        w.end_object();
    }
    w.end_object();
    std::string out = w.str();
    out += '\n';
    return out;
}

}  // namespace nijex
