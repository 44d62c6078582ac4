#include "tori/torus.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "tori/errors.hpp"

namespace tori {

namespace {

std::vector<Integer> key_of(const IntMatrix& m) {
  return std::vector<Integer>(m.data().begin(), m.data().end());
}

}  // namespace

// ---------------------------------------------------------------------------
// TorusSpec

TorusSpec::TorusSpec(std::size_t n, std::vector<IntMatrix> generators, std::size_t group_cap)
    : n_(n), generators_(std::move(generators)) {
  if (n_ == 0) throw ValidationError("n = 0 rejected: the lattice rank must be at least 1");
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    const IntMatrix& g = generators_[k];
    if (g.rows() != n_ || g.cols() != n_)
      throw SchemaError("generators[" + std::to_string(k) + "] is not " + std::to_string(n_) +
                        "x" + std::to_string(n_));
    const Integer d = determinant(g);
    if (d != 1 && d != -1)
      throw ValidationError("generators[" + std::to_string(k) +
                            "]: generator not unimodular (det " + d.get_str() + ")");
  }

  // Breadth-first closure under right multiplication by generators.
  elements_.push_back(IntMatrix::identity(n_));
  lookup_.emplace(key_of(elements_[0]), 0);
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const std::size_t cur = frontier.front();
    frontier.pop_front();
    for (const auto& g : generators_) {
      IntMatrix next = elements_[cur] * g;
      auto key = key_of(next);
      if (lookup_.contains(key)) continue;
      if (elements_.size() >= group_cap)
        throw ValidationError("group closure cap exceeded (" + std::to_string(group_cap) +
                              " elements); generators must have finite order");
      lookup_.emplace(std::move(key), elements_.size());
      elements_.push_back(std::move(next));
      frontier.push_back(elements_.size() - 1);
    }
  }
  for (const auto& g : generators_) generator_index_.push_back(index_of(g));

  inverse_.resize(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i)
    inverse_[i] = index_of(unimodular_inverse(elements_[i]));
}

std::size_t TorusSpec::index_of(const IntMatrix& m) const {
  auto it = lookup_.find(key_of(m));
  if (it == lookup_.end()) throw InternalError("matrix is not an element of the group");
  return it->second;
}

std::size_t TorusSpec::multiply(std::size_t a, std::size_t b) const {
  return index_of(elements_[a] * elements_[b]);
}

std::size_t TorusSpec::inverse(std::size_t a) const { return inverse_[a]; }

std::size_t TorusSpec::order_of(std::size_t a) const {
  std::size_t k = 1;
  for (std::size_t cur = a; cur != 0; cur = multiply(cur, a)) ++k;
  return k;
}

std::size_t TorusSpec::element_of_word(std::span<const std::size_t> word) const {
  std::size_t cur = 0;
  for (std::size_t k : word) {
    if (k >= generators_.size())
      throw ValidationError("generator word refers to generator " + std::to_string(k) +
                            " but only " + std::to_string(generators_.size()) + " exist");
    cur = multiply(cur, generator_index_[k]);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// CoweightSystem

CoweightSystem::CoweightSystem(const TorusSpec& spec, const std::vector<CoweightEntry>& entries) {
  std::map<IntVector, std::size_t> where;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (e.vector.size() != spec.dim())
      throw SchemaError("coweights[" + std::to_string(k) + "].vector has length " +
                        std::to_string(e.vector.size()) + ", expected " +
                        std::to_string(spec.dim()));
    if (e.multiplicity < 1)
      throw ValidationError("coweights[" + std::to_string(k) + "].multiplicity must be >= 1");
    auto [it, inserted] = where.emplace(e.vector, distinct_.size());
    if (inserted) {
      distinct_.push_back(e.vector);
      multiplicity_.push_back(e.multiplicity);
    } else {
      multiplicity_[it->second] += e.multiplicity;
    }
  }

  action_.resize(spec.group_order());
  for (std::size_t g = 0; g < spec.group_order(); ++g) {
    auto& perm = action_[g];
    perm.resize(distinct_.size());
    for (std::size_t i = 0; i < distinct_.size(); ++i) {
      const IntVector img = spec.element(g) * std::span<const Integer>(distinct_[i]);
      auto it = where.find(img);
      if (it == where.end() || multiplicity_[it->second] != multiplicity_[i])
        throw ValidationError("coweight multiset not Galois-stable: coweights[" +
                              std::to_string(i) + "] leaves the multiset");
      perm[i] = it->second;
    }
  }
}

long CoweightSystem::total() const {
  return std::accumulate(multiplicity_.begin(), multiplicity_.end(), 0L);
}

long SubMultiset::size() const { return std::accumulate(counts.begin(), counts.end(), 0L); }

// ---------------------------------------------------------------------------
// Torus

Torus::Torus(TorusSpec spec, std::vector<CoweightEntry> coweights, TorusOptions options)
    : spec_(std::move(spec)), coweights_(spec_, coweights), options_(options) {
  const std::size_t hard_limit = 8 * sizeof(SupportMask);
  if (coweights_.distinct_count() > std::min(options_.distinct_cap, hard_limit))
    throw EnumerationCapError("too many distinct coweights: " +
                              std::to_string(coweights_.distinct_count()) + " > cap " +
                              std::to_string(std::min(options_.distinct_cap, hard_limit)));
}

SupportMask Torus::full_mask() const {
  const std::size_t d = coweights_.distinct_count();
  return d == 0 ? 0 : static_cast<SupportMask>((std::uint64_t{1} << d) - 1);
}

SupportMask Torus::complement_support(const SubMultiset& s) const {
  SupportMask m = 0;
  for (std::size_t i = 0; i < s.counts.size(); ++i)
    if (s.counts[i] < coweights_.multiplicity()[i]) m |= SupportMask{1} << i;
  return m;
}

SubMultiset Torus::full_multiset() const { return SubMultiset{coweights_.multiplicity()}; }

SubMultiset Torus::empty_multiset() const {
  return SubMultiset{std::vector<long>(coweights_.distinct_count(), 0)};
}

bool Torus::is_valid(const SubMultiset& s) const {
  if (s.counts.size() != coweights_.distinct_count()) return false;
  for (std::size_t i = 0; i < s.counts.size(); ++i)
    if (s.counts[i] < 0 || s.counts[i] > coweights_.multiplicity()[i]) return false;
  return true;
}

const DiagGroup& Torus::diag_group(const SubMultiset& s) const {
  if (!is_valid(s)) throw ValidationError("invalid sub-multiset");
  return diag_group_for_complement(complement_support(s));
}

const DiagGroup& Torus::diag_group_for_complement(SupportMask complement) const {
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->diag.find(complement);
    if (it != cache_->diag.end()) return *it->second;
  }
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < coweights_.distinct_count(); ++i)
    if (complement & (SupportMask{1} << i)) rows.push_back(coweights_.distinct()[i]);
  IntMatrix defining = IntMatrix::from_rows(rows, spec_.dim());
  LatticeQuotient q(spec_.dim(), defining);
  auto d = std::make_unique<DiagGroup>(
      DiagGroup{defining, q, q.group().free_rank,
                FinAbGroup{q.group().invariant_factors, q.group().free_rank}});

  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->diag.emplace(complement, std::move(d));
  return *it->second;
}

const DiagGroup& Torus::diag_group_for_conductor(std::span<const long> c, long k) const {
  SupportMask m = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] <= k) m |= SupportMask{1} << i;
  return diag_group_for_complement(m);
}

bool Torus::is_faithful() const { return diag_group_for_complement(full_mask()).is_trivial(); }

void Torus::require_faithful() const {
  if (!is_faithful()) throw NotFaithfulError();
}

template <class Visit>
void Torus::for_each_submultiset(Visit&& visit) const {
  const auto& mult = coweights_.multiplicity();
  Integer count = 1;
  for (long m : mult) count *= (m + 1);
  if (count > Integer(static_cast<unsigned long>(options_.subset_cap)))
    throw EnumerationCapError("sub-multiset enumeration of " + count.get_str() +
                              " candidates exceeds cap " + std::to_string(options_.subset_cap));
  SubMultiset s = empty_multiset();
  const std::size_t d = mult.size();
  while (true) {
    visit(s);
    std::size_t i = d;
    bool carried_out = true;
    while (i > 0) {
      --i;
      if (++s.counts[i] <= mult[i]) {
        carried_out = false;
        break;
      }
      s.counts[i] = 0;
    }
    if (carried_out) return;
  }
}

AInvariant Torus::invariant_A() const {
  require_faithful();
  // For fixed complement support the ratio is largest at the smallest S,
  // which has count 0 on the complement support and full count elsewhere.
  std::optional<AInvariant> best;
  const auto& mult = coweights_.multiplicity();
  for (SupportMask c = 0; c <= full_mask(); ++c) {
    SubMultiset s = empty_multiset();
    for (std::size_t i = 0; i < mult.size(); ++i)
      if (!(c & (SupportMask{1} << i))) s.counts[i] = mult[i];
    const long size = s.size();
    if (size > 0) {
      const DiagGroup& d = diag_group_for_complement(c);
      if (!d.is_trivial()) {
        Rational ratio(static_cast<long>(d.dimension) + 1, size);
        ratio.canonicalize();
        if (!best || ratio > best->value || (ratio == best->value && s < best->witness))
          best = AInvariant{ratio, s};
      }
    }
    if (c == full_mask()) break;
  }
  // Faithful implies D(M) = T^ is nontrivial, so some S qualifies.
  if (!best) throw InternalError("no sub-multiset with nontrivial D(S)");
  return *best;
}

std::vector<SubMultiset> Torus::sigma_set() const {
  const Rational a = invariant_A().value;
  std::vector<SubMultiset> out;
  for_each_submultiset([&](const SubMultiset& s) {
    const long size = s.size();
    if (size == 0) return;
    const DiagGroup& d = diag_group_for_complement(complement_support(s));
    Rational ratio(static_cast<long>(d.dimension) + 1, size);
    ratio.canonicalize();
    if (ratio == a) out.push_back(s);
  });
  return out;
}

Integer Torus::lambda_invariant() const {
  Integer l = 1;
  for (SupportMask c = 0;; ++c) {
    const Integer o = diag_group_for_complement(c).pi0.torsion_order();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), o.get_mpz_t());
    if (c == full_mask()) break;
  }
  return l;
}

std::map<StratumKey, std::vector<SubMultiset>> Torus::strata() const {
  std::map<StratumKey, std::vector<SubMultiset>> out;
  for (auto& s : sigma_set()) {
    const DiagGroup& d = diag_group(s);
    out[StratumKey{d.dimension, s.size()}].push_back(std::move(s));
  }
  return out;
}

Rational Torus::abscissa(AbscissaVariant variant) const {
  require_faithful();
  Rational best = 0;
  const auto& mult = coweights_.multiplicity();
  for (SupportMask c = 0;; ++c) {
    long size = 0;
    for (std::size_t i = 0; i < mult.size(); ++i)
      if (!(c & (SupportMask{1} << i))) size += mult[i];
    const DiagGroup& d = diag_group_for_complement(c);
    const bool admissible =
        variant == AbscissaVariant::kRamified ? !d.is_trivial() : d.dimension >= 1;
    if (size > 0 && admissible) {
      Rational r(static_cast<long>(d.dimension), size);
      r.canonicalize();
      best = std::max(best, r);
    }
    if (c == full_mask()) break;
  }
  return best;
}

SubMultiset Torus::act(std::size_t g, const SubMultiset& s) const {
  SubMultiset out = empty_multiset();
  const auto& perm = coweights_.permutation(g);
  for (std::size_t i = 0; i < perm.size(); ++i) out.counts[perm[i]] = s.counts[i];
  return out;
}

const TorsionMap& Torus::component_transport(std::size_t g, SupportMask complement) const {
  const auto key = std::make_pair(g, complement);
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->transport.find(key);
    if (it != cache_->transport.end()) return *it->second;
  }
  SupportMask image = 0;
  for (std::size_t i = 0; i < coweights_.distinct_count(); ++i)
    if (complement & (SupportMask{1} << i)) image |= SupportMask{1} << coweights_.image(g, i);
  const DiagGroup& src = diag_group_for_complement(complement);
  const DiagGroup& dst = diag_group_for_complement(image);
  // (g z)(chi) = z(g^{-1} chi): pull characters of D(gS) back along g^{-1}.
  const TorsionMap pullback =
      induced_map(dst.quotient, src.quotient, spec_.element(spec_.inverse(g)));
  auto m = std::make_unique<TorsionMap>(pullback.dual());

  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->transport.emplace(key, std::move(m));
  return *it->second;
}

}  // namespace tori
