#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tori/int_matrix.hpp"
#include "tori/smith.hpp"

namespace tori {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// Finite abelian group Z/d_1 x ... x Z/d_k (each d_i >= 2, d_i | d_{i+1})
// together with a free rank. Elements are torsion coordinate tuples.
struct FinAbGroup {
  std::vector<Integer> invariant_factors;
  std::size_t free_rank = 0;

  Integer torsion_order() const;
  bool is_trivial() const { return invariant_factors.empty() && free_rank == 0; }
  bool torsion_trivial() const { return invariant_factors.empty(); }
};

using TorsionElement = std::vector<Integer>;

// Calls visit(element) once per torsion element, in lexicographic order of
// coordinates. Throws EnumerationCapError when the torsion order exceeds cap.
void for_each_torsion_element(const FinAbGroup& g,
                              const std::function<void(const TorsionElement&)>& visit,
                              std::uint64_t cap = kDefaultEnumerationCap);
std::vector<TorsionElement> torsion_elements(const FinAbGroup& g,
                                             std::uint64_t cap = kDefaultEnumerationCap);

// Z^n modulo the row span L of `relations`, written in the basis given by
// the rows of V^{-1} from the Smith form of the relation matrix.
class LatticeQuotient {
 public:
  LatticeQuotient(std::size_t ambient_rank, const IntMatrix& relations);

  std::size_t ambient_rank() const { return ambient_rank_; }
  const IntMatrix& relations() const { return relations_; }
  const FinAbGroup& group() const { return group_; }
  const SNFDecomposition& snf() const { return snf_; }

  // Torsion coordinates of the class of x (x in Z^n).
  TorsionElement to_coords(std::span<const Integer> x) const;
  // Free coordinates of the class of x.
  IntVector free_coords(std::span<const Integer> x) const;
  // A representative in Z^n of the torsion element y.
  IntVector from_coords(std::span<const Integer> y) const;
  // Representative of the j-th free basis vector.
  IntVector free_basis_vector(std::size_t j) const;
  // True when x lies in L.
  bool contains(std::span<const Integer> x) const;
  // Reduce torsion coordinates into canonical range.
  TorsionElement reduce(TorsionElement y) const;

 private:
  std::size_t ambient_rank_;
  IntMatrix relations_;
  SNFDecomposition snf_;
  FinAbGroup group_;
  std::size_t rank_ = 0;
  // SNF diagonal indices carrying the torsion factors (those d_i > 1).
  std::vector<std::size_t> torsion_index_;
};

LatticeQuotient lattice_quotient(std::size_t ambient_rank, const IntMatrix& relations);

// Homomorphism between torsion groups of two quotients, acting on
// coordinate columns: y -> matrix * y, reduced modulo the target factors.
struct TorsionMap {
  std::vector<Integer> source_factors;
  std::vector<Integer> target_factors;
  IntMatrix matrix;  // target_factors.size() x source_factors.size()

  TorsionElement apply(std::span<const Integer> y) const;
  // (*this) after `first`.
  TorsionMap after(const TorsionMap& first) const;
  // The Pontryagin dual map Hom(target, Q/Z) -> Hom(source, Q/Z), both duals
  // written in the coordinates dual to the standard generators.
  TorsionMap dual() const;
};

// Map induced on torsion by v -> p * v (column convention) from
// Z^n / L_source to Z^n / L_target. Throws LatticeNotPreservedError when p
// does not carry L_source into L_target.
TorsionMap induced_map(const LatticeQuotient& source, const LatticeQuotient& target,
                       const IntMatrix& p);
TorsionMap induced_endomorphism(const LatticeQuotient& q, const IntMatrix& p);

// Order of Z^n / (row span of combined_relations), or nullopt when infinite.
std::optional<Integer> finite_cokernel_order(std::size_t ambient_rank,
                                             const IntMatrix& combined_relations);

// Order of the cokernel of a torsion endomorphism (always finite).
Integer torsion_cokernel_order(const TorsionMap& endo);

}  // namespace tori
