#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "tori/int_matrix.hpp"
#include "tori/lattice.hpp"

namespace tori {

// Bit i set <=> distinct coweight i belongs to the set.
using SupportMask = std::uint32_t;

struct TorusOptions {
  std::size_t group_cap = 10'000;
  std::size_t distinct_cap = 20;
  std::uint64_t subset_cap = 10'000'000;
};

// Cocharacter lattice Z^n with the finite group G of lattice automorphisms
// generated by `generators`, acting on column vectors. Element 0 is the
// identity.
class TorusSpec {
 public:
  TorusSpec(std::size_t n, std::vector<IntMatrix> generators,
            std::size_t group_cap = TorusOptions{}.group_cap);

  std::size_t dim() const { return n_; }
  const std::vector<IntMatrix>& generators() const { return generators_; }
  const std::vector<IntMatrix>& elements() const { return elements_; }
  std::size_t group_order() const { return elements_.size(); }
  const IntMatrix& element(std::size_t i) const { return elements_[i]; }
  // Index of generator k inside elements().
  std::size_t generator_index(std::size_t k) const { return generator_index_[k]; }

  std::size_t index_of(const IntMatrix& m) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;
  std::size_t order_of(std::size_t a) const;
  // Product g_{w_0} g_{w_1} ... of generators; the empty word is the identity.
  std::size_t element_of_word(std::span<const std::size_t> word) const;

 private:
  std::size_t n_;
  std::vector<IntMatrix> generators_;
  std::vector<std::size_t> generator_index_;
  std::vector<IntMatrix> elements_;
  std::map<std::vector<Integer>, std::size_t> lookup_;
  std::vector<std::size_t> inverse_;
};

struct CoweightEntry {
  IntVector vector;
  long multiplicity = 1;
};

// Distinct coweights with multiplicities and the permutation each group
// element induces on them.
class CoweightSystem {
 public:
  CoweightSystem(const TorusSpec& spec, const std::vector<CoweightEntry>& entries);

  std::size_t distinct_count() const { return distinct_.size(); }
  const std::vector<IntVector>& distinct() const { return distinct_; }
  const std::vector<long>& multiplicity() const { return multiplicity_; }
  long total() const;
  // Image of distinct coweight i under group element g.
  std::size_t image(std::size_t g, std::size_t i) const { return action_[g][i]; }
  const std::vector<std::size_t>& permutation(std::size_t g) const { return action_[g]; }

 private:
  std::vector<IntVector> distinct_;
  std::vector<long> multiplicity_;
  std::vector<std::vector<std::size_t>> action_;
};

// Sub-multiset of M: one count in [0, multiplicity] per distinct coweight.
struct SubMultiset {
  std::vector<long> counts;

  long size() const;
  friend auto operator<=>(const SubMultiset&, const SubMultiset&) = default;
};

struct DiagGroup {
  IntMatrix defining_rows;
  LatticeQuotient quotient;
  std::size_t dimension = 0;
  FinAbGroup pi0;

  bool is_trivial() const { return dimension == 0 && pi0.torsion_trivial(); }
};

enum class AbscissaVariant { kRamified, kArchimedean };

struct AInvariant {
  Rational value;
  SubMultiset witness;
};

struct StratumKey {
  std::size_t a = 0;  // dim D(S)
  long b = 0;         // |S|
  friend auto operator<=>(const StratumKey&, const StratumKey&) = default;
};

class Torus {
 public:
  Torus(TorusSpec spec, std::vector<CoweightEntry> coweights, TorusOptions options = {});

  const TorusSpec& spec() const { return spec_; }
  const CoweightSystem& coweights() const { return coweights_; }
  const TorusOptions& options() const { return options_; }

  SupportMask full_mask() const;
  SupportMask complement_support(const SubMultiset& s) const;
  SubMultiset full_multiset() const;
  SubMultiset empty_multiset() const;
  bool is_valid(const SubMultiset& s) const;

  // D(S), which only depends on the support of the complement of S.
  const DiagGroup& diag_group(const SubMultiset& s) const;
  const DiagGroup& diag_group_for_complement(SupportMask complement) const;
  // D_k(c): intersection of ker mu over coweights with c_mu <= k.
  const DiagGroup& diag_group_for_conductor(std::span<const long> c, long k) const;

  bool is_faithful() const;
  AInvariant invariant_A() const;
  // Every nonempty S with (dim D(S) + 1) / |S| = A, sorted by counts.
  std::vector<SubMultiset> sigma_set() const;
  Integer lambda_invariant() const;
  std::map<StratumKey, std::vector<SubMultiset>> strata() const;
  Rational abscissa(AbscissaVariant variant) const;

  // g S, permuting counts along the coweight action.
  SubMultiset act(std::size_t g, const SubMultiset& s) const;
  // Map pi_0(D(S)) -> pi_0(D(gS)) induced by z -> z o g^{-1}, in the
  // coordinates dual to the Smith generators of the character groups.
  const TorsionMap& component_transport(std::size_t g, SupportMask complement) const;

 private:
  void require_faithful() const;
  // Enumerates every sub-multiset in lexicographic order of counts.
  template <class Visit>
  void for_each_submultiset(Visit&& visit) const;

  TorusSpec spec_;
  CoweightSystem coweights_;
  TorusOptions options_;

  struct Cache {
    std::mutex mutex;
    std::map<SupportMask, std::unique_ptr<DiagGroup>> diag;
    std::map<std::pair<std::size_t, SupportMask>, std::unique_ptr<TorsionMap>> transport;
  };
  std::unique_ptr<Cache> cache_ = std::make_unique<Cache>();
};

}  // namespace tori
