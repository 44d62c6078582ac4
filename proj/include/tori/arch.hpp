#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tori/int_matrix.hpp"
#include "tori/matroid.hpp"

namespace tori {

struct ArchBlocks {
  std::size_t n1 = 0, n2 = 0, n3 = 0;
  std::size_t m1 = 0, m2 = 0, m3 = 0;
  IntMatrix A1, A2, A3, C, B1, B2;
  // m3 x n3 entries (b, b').
  std::vector<std::vector<std::pair<Integer, Integer>>> B3;
};

struct ArchMatrices {
  std::size_t real_rows = 0;  // m1 + m2: rows of M_re outside the complex class
  IntMatrix M_re;
  IntMatrix M_int;
  IntMatrix M_prime;
};

// Checks block shapes and that every row of (A3 | C | B3) has a nonzero C
// entry or a pair with b != b'.
void validate(const ArchBlocks& blocks);

ArchMatrices assemble(const ArchBlocks& blocks);

// max( max beta/(alpha1 + 2 alpha2) over row subsets of M_re,
//      1/2 max beta/alpha over row subsets of M_int ).
Rational arch_abscissa(const ArchMatrices& mats);

struct Domination {
  Rational lhs;
  Rational b_infinity;
  bool holds = false;
};
Domination check_domination(const ArchMatrices& mats);

}  // namespace tori
