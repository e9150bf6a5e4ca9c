#ifndef NIJEX_BUILTINS_HPP
#define NIJEX_BUILTINS_HPP

#include <optional>
#include <string>
#include <vector>

#include "nijex/structure_spec.hpp"

namespace nijex {

struct BuiltinInfo {
    const char* name;
    const char* summary;
    const char* spec_json;  // full structure spec document
};

/* flat2/flat4/flat6: the constant block structure on n = 2, 4, 6
 * ("flat" resolves to flat4); pullback4: Jacobian conjugation of a
 * polynomial shear, integrable; twist4: the non-integrable elementary
 * conjugation A = I + x1*E13. */
const std::vector<BuiltinInfo>& builtins();

/* nullptr when the name (or alias "flat") is unknown. */
const BuiltinInfo* find_builtin(const std::string& name);

StructureSpec builtin_spec(const std::string& name);

}  // namespace nijex

#endif
