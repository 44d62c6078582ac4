#include "generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tori/errors.hpp"
#include "tori/matroid.hpp"
#include "tori/torus.hpp"

namespace tori::testing {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

}  // namespace

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, lo, hi);
  return m;
}

IntMatrix random_unimodular(Rng& rng, std::size_t n, int steps) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return uniform(rng, 0, 1) ? u : IntMatrix{{-1}};
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    u.add_row_multiple(i, j, Integer(uniform(rng, -1, 1)));
  }
  return u;
}

IntMatrix random_signed_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  IntMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m(perm[j], j) = uniform(rng, 0, 1) ? 1 : -1;
  return m;
}

std::optional<InputSpec> try_random_faithful_spec(Rng& rng, const RandomSpecLimits& limits) {
  const auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(limits.max_dim)));
  InputSpec spec;
  spec.dim = n;

  // Conjugate a small signed-permutation group by a random change of basis.
  const IntMatrix basis = random_unimodular(rng, n, 3);
  const IntMatrix basis_inv = unimodular_inverse(basis);
  const long gens = uniform(rng, 0, 2);
  for (long k = 0; k < gens; ++k)
    spec.generators.push_back(basis * random_signed_permutation(rng, n) * basis_inv);

  std::optional<TorusSpec> group;
  try {
    group.emplace(n, spec.generators, limits.max_group);
  } catch (const ValidationError&) {
    return std::nullopt;
  }

  // Add G-orbits of random vectors until the coweights span Z^n.
  std::set<IntVector> used;
  long total = 0;
  for (int attempt = 0; attempt < 12 && total < limits.max_total; ++attempt) {
    IntVector v(n);
    bool zero = true;
    for (auto& x : v) {
      x = uniform(rng, -2, 2);
      zero = zero && x == 0;
    }
    if (zero) continue;
    std::set<IntVector> orbit;
    for (const auto& g : group->elements()) {
      IntVector w(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w[i] += g(i, j) * v[j];
      orbit.insert(w);
    }
    if (std::any_of(orbit.begin(), orbit.end(), [&](const IntVector& w) { return used.count(w); }))
      continue;
    const long mult = uniform(rng, 1, 10) <= 8 ? 1 : 2;
    if (total + mult * static_cast<long>(orbit.size()) > limits.max_total) continue;
    for (const auto& w : orbit) {
      used.insert(w);
      spec.coweights.push_back({w, mult});
    }
    total += mult * static_cast<long>(orbit.size());
    if (lattice_quotient(n, [&] {
          std::vector<IntVector> rows(used.begin(), used.end());
          return IntMatrix::from_rows(rows, n);
        }()).group().is_trivial())
      if (uniform(rng, 0, 2) == 0) break;
  }
  if (spec.coweights.empty()) return std::nullopt;
  std::vector<IntVector> rows(used.begin(), used.end());
  if (!lattice_quotient(n, IntMatrix::from_rows(rows, n)).group().is_trivial()) return std::nullopt;
  return spec;
}

InputSpec random_faithful_spec(Rng& rng, const RandomSpecLimits& limits) {
  while (true)
    if (auto s = try_random_faithful_spec(rng, limits)) return *s;
}

std::vector<std::vector<Rational>> random_full_rank_rational(Rng& rng, std::size_t m,
                                                              std::size_t n) {
  while (true) {
    std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(n));
    for (auto& r : rows)
      for (auto& x : r) {
        // Sparse small entries give many ties and dependencies.
        if (uniform(rng, 0, 2) == 0) continue;
        x = Rational(uniform(rng, -3, 3), uniform(rng, 1, 3));
        x.canonicalize();
      }
    LinearMatroid mat(rows, n);
    if (mat.is_full_rank()) return rows;
  }
}

ArchBlocks random_arch_blocks(Rng& rng, std::size_t max_dim) {
  const long hi = static_cast<long>(max_dim);
  while (true) {
    ArchBlocks b;
    b.n1 = static_cast<std::size_t>(uniform(rng, 0, hi));
    b.n2 = static_cast<std::size_t>(uniform(rng, 0, hi));
    b.n3 = static_cast<std::size_t>(uniform(rng, 0, hi));
    b.m1 = static_cast<std::size_t>(uniform(rng, 0, hi));
    b.m2 = static_cast<std::size_t>(uniform(rng, 0, hi));
    b.m3 = static_cast<std::size_t>(uniform(rng, 0, hi));
    if (b.n1 + b.n2 + b.n3 == 0) continue;
    b.A1 = random_matrix(rng, b.m1, b.n1, -2, 2);
    b.A2 = random_matrix(rng, b.m2, b.n1, -2, 2);
    b.A3 = random_matrix(rng, b.m3, b.n1, -2, 2);
    b.C = random_matrix(rng, b.m3, b.n2, -2, 2);
    b.B1 = random_matrix(rng, b.m1, b.n3, -2, 2);
    b.B2 = random_matrix(rng, b.m2, b.n3, -2, 2);
    b.B3.assign(b.m3, {});
    for (auto& row : b.B3)
      for (std::size_t j = 0; j < b.n3; ++j) row.emplace_back(uniform(rng, -2, 2), uniform(rng, -2, 2));
    try {
      const ArchMatrices mats = assemble(b);
      if (!LinearMatroid::from_matrix(mats.M_prime).is_full_rank()) continue;
      if (!LinearMatroid::from_matrix(mats.M_re).is_full_rank()) continue;
    } catch (const ValidationError&) {
      continue;
    }
    return b;
  }
}

IntMatrix close_under(const IntMatrix& rows, const IntMatrix& p, std::size_t order) {
  // Row r spans the same lattice element as column r^T; its image is (p r^T)^T = r p^T.
  IntMatrix out = rows;
  IntMatrix cur = rows;
  const IntMatrix pt = p.transpose();
  for (std::size_t k = 1; k < order; ++k) {
    cur = cur * pt;
    out = out.stacked(cur);
  }
  return out;
}

}  // namespace tori::testing
