#include "tori/orbit.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <string>

#include "tori/errors.hpp"

namespace tori {

namespace {

long mul_unit(long a, long b, long lambda) {
  if (lambda == 1) return 1;
  return static_cast<long>((static_cast<__int128>(a) * b) % lambda);
}

std::vector<long> units_mod(long lambda) {
  if (lambda == 1) return {1};
  std::vector<long> u;
  for (long k = 1; k < lambda; ++k)
    if (std::gcd(k, lambda) == 1) u.push_back(k);
  return u;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

GTildeElement GTilde::compose(const GTildeElement& a, const GTildeElement& b,
                              const TorusSpec& spec) const {
  return GTildeElement{spec.multiply(a.g, b.g), mul_unit(a.unit, b.unit, lambda)};
}

GTilde build_gtilde(const Torus& torus, long lambda,
                    const std::optional<std::vector<GTildeGenerator>>& override) {
  if (lambda < 1) throw ValidationError("lambda must be positive");
  const TorusSpec& spec = torus.spec();
  GTilde gt;
  gt.lambda = lambda;

  if (!override) {
    gt.mode = GTildeMode::kFull;
    for (std::size_t g = 0; g < spec.group_order(); ++g)
      for (long u : units_mod(lambda)) gt.elements.push_back({g, u});
    std::sort(gt.elements.begin(), gt.elements.end());
    return gt;
  }

  gt.mode = GTildeMode::kExplicit;
  std::vector<GTildeElement> gens;
  for (std::size_t k = 0; k < override->size(); ++k) {
    const auto& og = (*override)[k];
    long u = lambda == 1 ? 1 : ((og.unit % lambda) + lambda) % lambda;
    if (std::gcd(u, lambda) != 1)
      throw ValidationError("gtilde.generators[" + std::to_string(k) + "].unit " +
                            std::to_string(og.unit) + " is not a unit modulo lambda = " +
                            std::to_string(lambda));
    gens.push_back({spec.element_of_word(og.word), u});
  }
  std::set<GTildeElement> seen{{0, 1}};
  std::deque<GTildeElement> frontier{{0, 1}};
  while (!frontier.empty()) {
    const GTildeElement cur = frontier.front();
    frontier.pop_front();
    for (const auto& g : gens) {
      const GTildeElement next = gt.compose(cur, g, spec);
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  std::set<std::size_t> projection;
  for (const auto& e : seen) projection.insert(e.g);
  if (projection.size() != spec.group_order())
    throw ValidationError("projection not surjective onto G: explicit G~ reaches " +
                          std::to_string(projection.size()) + " of " +
                          std::to_string(spec.group_order()) + " elements");
  gt.elements.assign(seen.begin(), seen.end());
  return gt;
}

FiberedSet::FiberedSet(const Torus& torus, GTilde gtilde)
    : torus_(&torus), gtilde_(std::move(gtilde)) {
  for (const auto& s : torus.sigma_set()) {
    const DiagGroup& d = torus.diag_group(s);
    for_each_torsion_element(d.pi0, [&](const TorsionElement& y) {
      ++sigma_tilde_size_;
      const bool identity = std::all_of(y.begin(), y.end(), [](const Integer& v) { return v == 0; });
      if (identity && d.dimension == 0) return;
      elements_.push_back({s, y});
    });
  }
  std::sort(elements_.begin(), elements_.end());
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
}

SigmaTildeElement FiberedSet::act(const GTildeElement& g, const SigmaTildeElement& e) const {
  const SupportMask mask = torus_->complement_support(e.subset);
  SigmaTildeElement out;
  out.subset = torus_->act(g.g, e.subset);
  out.fiber = torus_->component_transport(g.g, mask).apply(e.fiber);
  const auto& factors = torus_->diag_group(out.subset).pi0.invariant_factors;
  for (std::size_t i = 0; i < out.fiber.size(); ++i)
    out.fiber[i] = mod_floor(out.fiber[i] * g.unit, factors[i]);
  return out;
}

std::size_t FiberedSet::index_of(const SigmaTildeElement& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw InternalError("action left Sigma~_0");
  return it->second;
}

OrbitSummary FiberedSet::orbits() const {
  UnionFind uf(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i)
    for (const auto& g : gtilde_.elements) uf.unite(i, index_of(act(g, elements_[i])));

  OrbitSummary out;
  std::map<std::size_t, std::size_t> root_to_orbit;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const std::size_t r = uf.find(i);
    auto [it, inserted] = root_to_orbit.emplace(r, out.orbits.size());
    if (inserted) {
      out.orbits.emplace_back();
      const auto& s = elements_[i].subset;
      ++out.orbits_per_stratum[StratumKey{torus_->diag_group(s).dimension, s.size()}];
    }
    out.orbits[it->second].push_back(i);
  }
  out.orbit_count = out.orbits.size();
  out.deg_P = static_cast<long>(out.orbit_count) - 1;
  return out;
}

Rational FiberedSet::burnside_count() const {
  long fixed = 0;
  for (const auto& g : gtilde_.elements)
    for (const auto& e : elements_)
      if (act(g, e) == e) ++fixed;
  Rational r(fixed, static_cast<long>(gtilde_.elements.size()));
  r.canonicalize();
  return r;
}

OrbitSummary deg_P(const Torus& torus) {
  const Integer lambda = torus.lambda_invariant();
  if (!lambda.fits_slong_p()) throw EnumerationCapError("lambda too large");
  FiberedSet set(torus, build_gtilde(torus, lambda.get_si()));
  return set.orbits();
}

}  // namespace tori
