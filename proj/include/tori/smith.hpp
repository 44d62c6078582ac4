#pragma once

#include <vector>

#include "tori/int_matrix.hpp"

namespace tori {

// U * source * V = D with U, V unimodular and D diagonal, its nonzero
// entries d_1 | d_2 | ... | d_r positive and leading.
struct SNFDecomposition {
  IntMatrix source;
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix V_inverse;

  std::size_t rank() const;
  // d_1, ..., d_r (the nonzero diagonal entries, including ones).
  std::vector<Integer> invariant_factors() const;
};

SNFDecomposition smith_normal_form(const IntMatrix& m);

}  // namespace tori
