#ifndef NIJEX_REPORT_HPP
#define NIJEX_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nijex/structure_spec.hpp"
#include "nijex/verify.hpp"

namespace nijex {

inline constexpr const char* kToolVersion = "nijex 0.1.0";

/* Deterministic pretty JSON writer: fields appear in emission order and
 * numbers are printed with 17 significant digits, so equal documents are
 * byte-identical and doubles round-trip exactly. */
class JsonWriter {
public:
    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(const std::string& k);
    void value(const std::string& v);
    void value(const char* v) { value(std::string(v)); }
    void value(double v);
    void value(std::int64_t v);
    void value(std::uint64_t v);
    void value(int v) { value(std::int64_t(v)); }
    void value(bool v);
    void null();

    std::string str() const { return out_; }

private:
    void comma_and_indent();
    void indent();
    void raw(const std::string& s);

    std::string out_;
    std::vector<bool> has_items_;  // per open container
    bool pending_key_ = false;
};

std::string json_escape(const std::string& s);
std::string format_double(double v);  // %.17g, nan -> "null" handled by caller

struct ReportTiming {
    double wall_ms = 0.0;
};

/* Assembles the verification report document.  Field order is fixed; the
 * spec echo re-parses to an equivalent StructureSpec.  Timing is optional
 * and omitted by default so that reports are byte-identical across runs. */
std::string render_report(const StructureSpec& spec, const SuiteConfig& config,
                          const ValidationReport& validation,
                          const SuiteReport& suite,
                          const std::optional<ReportTiming>& timing);

}  // namespace nijex

#endif
