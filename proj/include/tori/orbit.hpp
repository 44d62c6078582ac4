#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "tori/torus.hpp"

namespace tori {

// Element (g, u) of G x (Z/lambda)^x: g indexes TorusSpec::elements().
struct GTildeElement {
  std::size_t g = 0;
  long unit = 1;
  friend auto operator<=>(const GTildeElement&, const GTildeElement&) = default;
};

struct GTildeGenerator {
  std::vector<std::size_t> word;  // generator indices of G
  long unit = 1;
};

enum class GTildeMode { kFull, kExplicit };

struct GTilde {
  long lambda = 1;
  GTildeMode mode = GTildeMode::kFull;
  std::vector<GTildeElement> elements;  // sorted; contains (identity, 1)

  GTildeElement compose(const GTildeElement& a, const GTildeElement& b,
                        const TorusSpec& spec) const;
};

// Default (no override): all of G x (Z/lambda)^x. With an override, the
// subgroup generated by the given pairs, which must surject onto G.
GTilde build_gtilde(const Torus& torus, long lambda,
                    const std::optional<std::vector<GTildeGenerator>>& override = std::nullopt);

// (S, y) with S in Sigma and y in pi_0(D(S)) in dual Smith coordinates.
struct SigmaTildeElement {
  SubMultiset subset;
  TorsionElement fiber;
  friend auto operator<=>(const SigmaTildeElement&, const SigmaTildeElement&) = default;
};

struct OrbitSummary {
  std::size_t orbit_count = 0;
  long deg_P = 0;
  // Orbits as sorted indices into sigma_tilde0(), ordered by first index.
  std::vector<std::vector<std::size_t>> orbits;
  std::map<StratumKey, std::size_t> orbits_per_stratum;
};

class FiberedSet {
 public:
  // Requires a faithful torus; builds Sigma~_0 eagerly.
  FiberedSet(const Torus& torus, GTilde gtilde);

  const Torus& torus() const { return *torus_; }
  const GTilde& gtilde() const { return gtilde_; }
  // Sorted by (subset counts, fiber coordinates).
  const std::vector<SigmaTildeElement>& sigma_tilde0() const { return elements_; }
  std::size_t sigma_tilde_size() const { return sigma_tilde_size_; }

  // g.(S, y) = (gS, g(y^u)).
  SigmaTildeElement act(const GTildeElement& g, const SigmaTildeElement& e) const;
  std::size_t index_of(const SigmaTildeElement& e) const;

  // Orbits by union-find over the action of every element of G~.
  OrbitSummary orbits() const;
  // Average number of fixed points over G~ (Burnside).
  Rational burnside_count() const;

 private:
  const Torus* torus_;
  GTilde gtilde_;
  std::vector<SigmaTildeElement> elements_;
  std::size_t sigma_tilde_size_ = 0;
  std::map<SigmaTildeElement, std::size_t> index_;
};

// deg P = |G~ \ Sigma~_0| - 1 with the default G~.
OrbitSummary deg_P(const Torus& torus);

}  // namespace tori
