#pragma once

#include "carnot/algebra.hpp"

namespace carnot {

// Abelian R^d (single degree).
GradedLieAlgebra abelian(int d);

// Heisenberg h_{2d+1}: dims [2d, 1], [X_a, Y_a] = Z.
GradedLieAlgebra heisenberg(int d);

inline GradedLieAlgebra h3() { return heisenberg(1); }
inline GradedLieAlgebra h5() { return heisenberg(2); }

// Engel algebra: dims [2,1,1], [X1,X2]=X3, [X1,X3]=X4.
GradedLieAlgebra engel();

// Free step-3 algebra on two generators: dims [2,1,2],
// [X1,X2]=X3, [X1,X3]=X4, [X2,X3]=X5.
GradedLieAlgebra free_step3_2gen();

// 2-step algebra with dims [2n + kernel_dims, 1] and [X_a, Y_a] = lambda_a Z.
GradedLieAlgebra heisenberg_type(const std::vector<Rational>& lambdas,
                                 int kernel_dims = 0);

}  // namespace carnot
