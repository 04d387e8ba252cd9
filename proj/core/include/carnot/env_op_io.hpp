#pragma once

#include <string>

#include "carnot/env_op.hpp"

namespace carnot {

// Operator file format (JSON):
// { "algebra": <inline algebra object | path string>,
//   "V0": d0, "V1": d1,
//   "terms": [ {"monomial": {"X": 2, "Y": 1}, "coeff": [[[re,im],...],...]} ] }
// Each coeff entry is [re, im] with "p/q" strings (numbers accepted); a bare
// [re, im] is shorthand for a 1x1 matrix.
EnvelopingOperator parse_operator_json(const std::string& text,
                                       const std::string& base_dir = "");
EnvelopingOperator load_operator_file(const std::string& path);
std::string operator_to_json(const EnvelopingOperator& op);

}  // namespace carnot
