#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "tori/lattice.hpp"
#include "tori/torus.hpp"

namespace tori {

// Unramified local data: residue field size q = p^k and the Frobenius
// element (an index into TorusSpec::elements()) of order f.
struct LocalData {
  Integer q;
  Integer p;
  std::size_t frobenius = 0;
  std::size_t f = 1;
};

// Validates q as a prime power and computes p and f.
LocalData make_local_data(const TorusSpec& spec, const Integer& q, std::size_t frobenius);

// Per-distinct-coweight conductor exponents; |c| weights each entry by the
// coweight's multiplicity.
using ConductorVector = std::vector<long>;

struct EulerFactorTruncation {
  long cap = 0;
  std::vector<Integer> coefficients;  // coefficient of q^{-s e}, e = 0..cap
};

// |{z in D : Fr z = z^q}| as the order of the cokernel of
// chi -> q chi - Fr^{-1} chi on the character group of D.
Integer hom_count(const LatticeQuotient& characters, const IntMatrix& frobenius,
                  const Integer& q);

// The same count by enumerating the (q^f - 1)-torsion of D and testing the
// Frobenius condition point by point.
Integer hom_count_oracle(const LatticeQuotient& characters, const IntMatrix& frobenius,
                         const Integer& q, std::uint64_t cap = kDefaultEnumerationCap);

// Cokernel orders of chi -> q chi - Fr^{-1} chi restricted to the torsion
// and to the free quotient of the character group; their product is
// hom_count.
struct CokernelSplit {
  Integer torsion;
  Integer free;
};
CokernelSplit cokernel_split(const LatticeQuotient& characters, const IntMatrix& frobenius,
                             const Integer& q);

// A Frobenius-fixed conductor vector with nonzero Pi_=.
struct ConductorTerm {
  ConductorVector c;
  long weight = 0;
  Integer pi_eq;
};

class LocalFactors {
 public:
  // Requires a faithful torus and gcd(q, lambda) = 1.
  LocalFactors(const Torus& torus, LocalData local);

  const LocalData& local() const { return local_; }
  const Integer& lambda() const { return lambda_; }

  Integer hom_count(const DiagGroup& d) const;
  Integer hom_count_oracle(const DiagGroup& d, std::uint64_t cap = kDefaultEnumerationCap) const;
  // |{y in pi_0(D(S)) : Fr y = y^q}|; S must be Frobenius-stable.
  Integer a_count(const SubMultiset& s) const;

  bool is_frobenius_fixed(const ConductorVector& c) const;
  Integer pi_leq(const ConductorVector& c) const;
  Integer pi_eq(const ConductorVector& c) const;
  std::vector<ConductorTerm> conductor_terms(long cap,
                                             std::uint64_t enumeration_limit = 1'000'000) const;
  EulerFactorTruncation local_factor(long cap, std::uint64_t enumeration_limit = 1'000'000) const;

 private:
  // Pi_<= after replacing c by its Frobenius-orbitwise minimum; zero when
  // an entry is negative.
  Integer pi_leq_reduced(ConductorVector c) const;

  const Torus* torus_;
  LocalData local_;
  Integer lambda_;
  IntMatrix frobenius_matrix_;

  struct Cache {
    std::mutex mutex;
    std::map<ConductorVector, Integer> pi_leq;
  };
  std::unique_ptr<Cache> cache_ = std::make_unique<Cache>();
};

}  // namespace tori
