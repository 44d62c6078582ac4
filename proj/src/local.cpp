#include "tori/local.hpp"

#include <algorithm>
#include <string>

#include "tori/errors.hpp"

namespace tori {

namespace {

// Frobenius acts on characters of D through Fr^{-1}; the relation lattice
// of chi -> q chi - Fr^{-1} chi is spanned by the columns of q I - Fr^{-1}.
IntMatrix frobenius_relation_rows(const IntMatrix& frobenius, const Integer& q) {
  const std::size_t n = frobenius.rows();
  const IntMatrix phi = q * IntMatrix::identity(n) - unimodular_inverse(frobenius);
  return phi.transpose();
}

void require_stable(const LatticeQuotient& characters, const IntMatrix& frobenius) {
  // Throws LatticeNotPreservedError when Fr does not preserve the relations.
  induced_endomorphism(characters, frobenius);
}

std::size_t matrix_order(const IntMatrix& m, std::size_t cap = 100'000) {
  const IntMatrix id = IntMatrix::identity(m.rows());
  IntMatrix cur = m;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (cur == id) return k;
    cur = cur * m;
  }
  throw ValidationError("Frobenius matrix does not have finite order");
}

}  // namespace

LocalData make_local_data(const TorusSpec& spec, const Integer& q, std::size_t frobenius) {
  if (q < 2) throw ValidationError("q must be a prime power >= 2");
  if (frobenius >= spec.group_order()) throw ValidationError("frobenius index out of range");
  Integer p = 0;
  for (Integer d = 2; d * d <= q; ++d) {
    if (mod_floor(q, d) == 0) {
      p = d;
      break;
    }
    if (d > 1'000'000) break;
  }
  if (p == 0) {
    // No small factor: q must be r^k for a large prime r.
    for (unsigned long k = mpz_sizeinbase(q.get_mpz_t(), 2); k >= 1 && p == 0; --k) {
      Integer root;
      if (mpz_root(root.get_mpz_t(), q.get_mpz_t(), k) != 0 &&
          mpz_probab_prime_p(root.get_mpz_t(), 30) != 0)
        p = root;
    }
    if (p == 0) throw ValidationError("q = " + q.get_str() + " is not a prime power");
  }
  Integer rest = q;
  while (mod_floor(rest, p) == 0) rest /= p;
  if (rest != 1) throw ValidationError("q = " + q.get_str() + " is not a prime power");
  return LocalData{q, p, frobenius, spec.order_of(frobenius)};
}

Integer hom_count(const LatticeQuotient& characters, const IntMatrix& frobenius,
                  const Integer& q) {
  require_stable(characters, frobenius);
  const IntMatrix combined =
      characters.relations().stacked(frobenius_relation_rows(frobenius, q));
  auto order = finite_cokernel_order(characters.ambient_rank(), combined);
  // q chi - Fr^{-1} chi is injective on the free part since Fr has finite order.
  if (!order) throw InternalError("infinite cokernel in hom_count");
  return *order;
}

Integer hom_count_oracle(const LatticeQuotient& characters, const IntMatrix& frobenius,
                         const Integer& q, std::uint64_t cap) {
  require_stable(characters, frobenius);
  const std::size_t n = characters.ambient_rank();
  Integer qf = 1;
  const std::size_t f = matrix_order(frobenius);
  for (std::size_t i = 0; i < f; ++i) qf *= q;
  const Integer modulus = qf - 1;

  // Every z with Fr z = z^q satisfies z = Fr^f z = z^{q^f}, so it is a
  // character of X / (q^f - 1) X.
  const IntMatrix relations =
      characters.relations().stacked(modulus * IntMatrix::identity(n));
  const LatticeQuotient torsion(n, relations);
  const auto& factors = torsion.group().invariant_factors;
  if (torsion.group().torsion_order() > Integer(static_cast<unsigned long>(cap)))
    throw EnumerationCapError("hom_count_oracle: " + torsion.group().torsion_order().get_str() +
                              " points exceed cap " + std::to_string(cap));
  if (factors.empty()) return 1;

  // z with coordinates k evaluates chi to sum_i k_i t_i(chi) / d_i. The
  // condition z(Fr^{-1} e_j) = z(q e_j) for each basis vector e_j becomes
  // sum_i k_i w_ij / d_i = 0 in Q/Z; scale everything to denominator d_max.
  const IntMatrix fr_inv = unimodular_inverse(frobenius);
  const Integer& d_max = factors.back();
  if (!d_max.fits_slong_p()) throw EnumerationCapError("hom_count_oracle: factor too large");
  const long big = d_max.get_si();
  const std::size_t k = factors.size();
  std::vector<std::vector<long>> coef(k, std::vector<long>(n));
  for (std::size_t j = 0; j < n; ++j) {
    IntVector e(n, 0);
    e[j] = 1;
    const TorsionElement lhs = torsion.to_coords(fr_inv * std::span<const Integer>(e));
    const TorsionElement rhs = torsion.to_coords(q * IntMatrix::identity(n) *
                                                 std::span<const Integer>(e));
    for (std::size_t i = 0; i < k; ++i) {
      const Integer w = mod_floor(lhs[i] - rhs[i], factors[i]);
      coef[i][j] = mod_floor(Integer(w * (d_max / factors[i])), d_max).get_si();
    }
  }

  std::vector<long> digits(k, 0);
  std::vector<long> sums(n, 0);
  std::vector<long> dl(k);
  for (std::size_t i = 0; i < k; ++i) dl[i] = factors[i].get_si();
  Integer count = 0;
  while (true) {
    if (std::all_of(sums.begin(), sums.end(), [](long s) { return s == 0; })) ++count;
    std::size_t i = k;
    bool done = true;
    while (i > 0) {
      --i;
      if (++digits[i] < dl[i]) {
        for (std::size_t j = 0; j < n; ++j) sums[j] = (sums[j] + coef[i][j]) % big;
        done = false;
        break;
      }
      digits[i] = 0;
      // Undo (d_i - 1) increments.
      for (std::size_t j = 0; j < n; ++j) {
        const __int128 back = static_cast<__int128>(dl[i] - 1) * coef[i][j];
        sums[j] = static_cast<long>(((sums[j] - back) % big + big) % big);
      }
    }
    if (done) break;
  }
  return count;
}

CokernelSplit cokernel_split(const LatticeQuotient& characters, const IntMatrix& frobenius,
                             const Integer& q) {
  const std::size_t n = characters.ambient_rank();
  const IntMatrix phi = q * IntMatrix::identity(n) - unimodular_inverse(frobenius);
  CokernelSplit out;
  out.torsion = torsion_cokernel_order(induced_endomorphism(characters, phi));

  const std::size_t r = characters.group().free_rank;
  IntMatrix free_map(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    const IntVector v = characters.free_basis_vector(j);
    const IntVector img = characters.free_coords(phi * std::span<const Integer>(v));
    for (std::size_t i = 0; i < r; ++i) free_map(i, j) = img[i];
  }
  out.free = abs(determinant(free_map));
  if (out.free == 0) throw InternalError("q - Fr^{-1} not injective on the free part");
  return out;
}

// ---------------------------------------------------------------------------

LocalFactors::LocalFactors(const Torus& torus, LocalData local)
    : torus_(&torus),
      local_(std::move(local)),
      lambda_(torus.lambda_invariant()),
      frobenius_matrix_(torus.spec().element(local_.frobenius)) {
  if (!torus.is_faithful()) throw NotFaithfulError();
  Integer g;
  mpz_gcd(g.get_mpz_t(), local_.q.get_mpz_t(), lambda_.get_mpz_t());
  if (g != 1)
    throw ValidationError("q not coprime to lambda: q = " + local_.q.get_str() +
                          ", lambda = " + lambda_.get_str());
}

Integer LocalFactors::hom_count(const DiagGroup& d) const {
  return tori::hom_count(d.quotient, frobenius_matrix_, local_.q);
}

Integer LocalFactors::hom_count_oracle(const DiagGroup& d, std::uint64_t cap) const {
  return tori::hom_count_oracle(d.quotient, frobenius_matrix_, local_.q, cap);
}

Integer LocalFactors::a_count(const SubMultiset& s) const {
  if (torus_->act(local_.frobenius, s) != s)
    throw ValidationError("a_count: Frobenius does not fix S");
  const DiagGroup& d = torus_->diag_group(s);
  const TorsionMap& fr = torus_->component_transport(local_.frobenius,
                                                     torus_->complement_support(s));
  const auto& factors = d.pi0.invariant_factors;
  Integer count = 0;
  for_each_torsion_element(d.pi0, [&](const TorsionElement& y) {
    const TorsionElement image = fr.apply(y);
    for (std::size_t i = 0; i < y.size(); ++i)
      if (mod_floor(Integer(local_.q * y[i]), factors[i]) != image[i]) return;
    ++count;
  });
  return count;
}

bool LocalFactors::is_frobenius_fixed(const ConductorVector& c) const {
  const auto& perm = torus_->coweights().permutation(local_.frobenius);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[perm[i]] != c[i]) return false;
  return true;
}

Integer LocalFactors::pi_leq(const ConductorVector& c) const {
  if (c.size() != torus_->coweights().distinct_count())
    throw ValidationError("conductor vector has wrong length");
  if (std::any_of(c.begin(), c.end(), [](long v) { return v < 0; })) return 0;
  if (!is_frobenius_fixed(c)) throw ValidationError("pi_leq: c is not Frobenius-fixed");
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->pi_leq.find(c);
    if (it != cache_->pi_leq.end()) return it->second;
  }
  Integer value = hom_count(torus_->diag_group_for_conductor(c, 0));
  const long top = c.empty() ? 0 : *std::max_element(c.begin(), c.end());
  for (long k = 1; k < top; ++k) {
    const DiagGroup& dk = torus_->diag_group_for_conductor(c, k);
    Integer factor;
    mpz_pow_ui(factor.get_mpz_t(), local_.p.get_mpz_t(), dk.dimension);
    value *= factor;
  }
  std::lock_guard lock(cache_->mutex);
  cache_->pi_leq.emplace(c, value);
  return value;
}

Integer LocalFactors::pi_leq_reduced(ConductorVector c) const {
  if (std::any_of(c.begin(), c.end(), [](long v) { return v < 0; })) return 0;
  // The conductor of mu o xi is constant on Frobenius orbits, so the
  // constraint c_mu binds the whole orbit of mu.
  const auto& perm = torus_->coweights().permutation(local_.frobenius);
  ConductorVector reduced = c;
  for (std::size_t i = 0; i < c.size(); ++i) {
    long m = c[i];
    for (std::size_t j = perm[i]; j != i; j = perm[j]) m = std::min(m, c[j]);
    reduced[i] = m;
  }
  return pi_leq(reduced);
}

Integer LocalFactors::pi_eq(const ConductorVector& c) const {
  if (c.size() != torus_->coweights().distinct_count())
    throw ValidationError("conductor vector has wrong length");
  if (std::any_of(c.begin(), c.end(), [](long v) { return v < 0; })) return 0;
  if (!is_frobenius_fixed(c)) return 0;
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] > 0) support.push_back(i);
  Integer total = 0;
  const std::uint64_t subsets = std::uint64_t{1} << support.size();
  for (std::uint64_t b = 0; b < subsets; ++b) {
    ConductorVector shifted = c;
    int sign = 1;
    for (std::size_t k = 0; k < support.size(); ++k)
      if (b & (std::uint64_t{1} << k)) {
        --shifted[support[k]];
        sign = -sign;
      }
    const Integer v = pi_leq_reduced(std::move(shifted));
    if (sign > 0)
      total += v;
    else
      total -= v;
  }
  return total;
}

std::vector<ConductorTerm> LocalFactors::conductor_terms(long cap,
                                                        std::uint64_t enumeration_limit) const {
  if (cap < 0) throw ValidationError("cap must be nonnegative");
  const auto& mult = torus_->coweights().multiplicity();
  const std::size_t d = mult.size();
  std::vector<ConductorTerm> out;

  // Depth-first over c with weighted size <= cap.
  std::uint64_t visited = 0;
  ConductorVector c(d, 0);
  auto recurse = [&](auto&& self, std::size_t i, long weight) -> void {
    if (i == d) {
      if (++visited > enumeration_limit)
        throw EnumerationCapError("local_factor: enumeration too large (more than " +
                                  std::to_string(enumeration_limit) + " conductor vectors)");
      if (!is_frobenius_fixed(c)) return;
      Integer v = pi_eq(c);
      if (v != 0) out.push_back({c, weight, std::move(v)});
      return;
    }
    for (long v = 0; weight + v * mult[i] <= cap; ++v) {
      c[i] = v;
      self(self, i + 1, weight + v * mult[i]);
    }
    c[i] = 0;
  };
  recurse(recurse, 0, 0);
  return out;
}

EulerFactorTruncation LocalFactors::local_factor(long cap, std::uint64_t enumeration_limit) const {
  EulerFactorTruncation out{cap, std::vector<Integer>(static_cast<std::size_t>(std::max(cap, 0L)) + 1, 0)};
  for (const auto& t : conductor_terms(cap, enumeration_limit))
    out.coefficients[static_cast<std::size_t>(t.weight)] += t.pi_eq;
  return out;
}

}  // namespace tori
