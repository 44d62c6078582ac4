#pragma once

#include <cstddef>
#include <vector>

#include "tori/int_matrix.hpp"

namespace tori {

// minimize objective . x subject to rows, x >= 0, over the rationals.
struct LinearProgram {
  enum class Sense { kLessEqual, kEqual };
  struct Row {
    std::vector<Rational> coefficients;
    Sense sense = Sense::kLessEqual;
    Rational rhs;
  };

  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Row> rows;
};

struct LpResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status = Status::kInfeasible;
  Rational value;
  std::vector<Rational> x;
};

// Two-phase dense tableau simplex with Bland's rule; exact and terminating.
LpResult solve_exact(const LinearProgram& lp);

}  // namespace tori
