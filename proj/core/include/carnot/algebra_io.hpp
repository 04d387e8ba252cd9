#pragma once

#include <string>

#include "carnot/algebra.hpp"

namespace carnot {

// Algebra file format (JSON):
// { "dims": [d1,...,dn], "basis": ["X","Y",...],
//   "brackets": [ {"i":"X","j":"Y","value":[{"k":"Z","coeff":"p/q"}]} ],
//   "inner_product": [["p/q",...],...]  (optional) }
// Rationals are serialized as "p/q" strings, bit-exact.
AlgebraInput parse_algebra_json(const std::string& text);
AlgebraInput load_algebra_file(const std::string& path);
std::string algebra_to_json(const GradedLieAlgebra& A);

}  // namespace carnot
