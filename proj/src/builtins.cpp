#include "nijex/builtins.hpp"

namespace nijex {

namespace {

const char* kFlat2 = R"json({
  "name": "flat2",
  "dim": 2,
  "J": {"matrix": [["0", "1"], ["-1", "0"]]},
  "box": [[-1, 1], [-1, 1]],
  "integrable": true
})json";

const char* kFlat4 = R"json({
  "name": "flat4",
  "dim": 4,
  "J": {"matrix": [
    ["0", "1", "0", "0"],
    ["-1", "0", "0", "0"],
    ["0", "0", "0", "1"],
    ["0", "0", "-1", "0"]
  ]},
  "box": [[-1, 1], [-1, 1], [-1, 1], [-1, 1]],
  "integrable": true
})json";

const char* kFlat6 = R"json({
  "name": "flat6",
  "dim": 6,
  "J": {"matrix": [
    ["0", "1", "0", "0", "0", "0"],
    ["-1", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "1", "0", "0"],
    ["0", "0", "-1", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "1"],
    ["0", "0", "0", "0", "-1", "0"]
  ]},
  "box": [[-1, 1], [-1, 1], [-1, 1], [-1, 1], [-1, 1], [-1, 1]],
  "integrable": true
})json";

const char* kPullback4 = R"json({
  "name": "pullback4",
  "dim": 4,
  "J": {"conjugate": {
    "A": [
      ["1", "0", "0.5*x3 + 0.5*x4", "0.5*x3"],
      ["0", "1", "0.4*x4", "0.4*x3 - 0.6*x4"],
      ["0", "0", "1", "0"],
      ["0", "0", "0", "1"]
    ],
    "A_inv": [
      ["1", "0", "-(0.5*x3 + 0.5*x4)", "-0.5*x3"],
      ["0", "1", "-0.4*x4", "-(0.4*x3 - 0.6*x4)"],
      ["0", "0", "1", "0"],
      ["0", "0", "0", "1"]
    ]
  }},
  "box": [[-0.5, 0.5], [-0.5, 0.5], [-0.5, 0.5], [-0.5, 0.5]],
  "integrable": true
})json";

const char* kTwist4 = R"json({
  "name": "twist4",
  "dim": 4,
  "J": {"conjugate": {
    "A": [
      ["1", "0", "x1", "0"],
      ["0", "1", "0", "0"],
      ["0", "0", "1", "0"],
      ["0", "0", "0", "1"]
    ],
    "A_inv": [
      ["1", "0", "-x1", "0"],
      ["0", "1", "0", "0"],
      ["0", "0", "1", "0"],
      ["0", "0", "0", "1"]
    ]
  }},
  "box": [[-0.5, 0.5], [-0.5, 0.5], [-0.5, 0.5], [-0.5, 0.5]],
  "integrable": false
})json";

}  // namespace

const std::vector<BuiltinInfo>& builtins() {
    static const std::vector<BuiltinInfo> list = {
        {"flat2", "constant block structure on n=2, integrable", kFlat2},
        {"flat4", "constant block structure on n=4, integrable (alias: flat)", kFlat4},
        {"flat6", "constant block structure on n=6, integrable", kFlat6},
        {"pullback4",
         "Jacobian conjugation of a polynomial shear on n=4; integrable, "
         "non-constant",
         kPullback4},
        {"twist4",
         "conjugation by A = I + x1*E13 on n=4; non-integrable "
         "(N(d1,d3) != 0 at generic points)",
         kTwist4},
    };
    return list;
}

const BuiltinInfo* find_builtin(const std::string& name) {
    const std::string wanted = (name == "flat") ? "flat4" : name;
    for (const BuiltinInfo& b : builtins())
        if (wanted == b.name) return &b;
    return nullptr;
}

StructureSpec builtin_spec(const std::string& name) {
    const BuiltinInfo* b = find_builtin(name);
    if (!b) throw SpecError("unknown builtin: " + name);
    return parse_structure_spec(b->spec_json);
}

}  // namespace nijex
