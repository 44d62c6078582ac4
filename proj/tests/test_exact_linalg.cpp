#include <gtest/gtest.h>

#include <set>

#include "support/generators.hpp"
#include "tori/errors.hpp"
#include "tori/lattice.hpp"
#include "tori/smith.hpp"

using namespace tori;
using tori::testing::Rng;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

void expect_valid_snf(const SNFDecomposition& s) {
  EXPECT_EQ(s.U * s.source * s.V, s.D);
  EXPECT_EQ(abs(determinant(s.U)), 1);
  EXPECT_EQ(abs(determinant(s.V)), 1);
  EXPECT_EQ(s.V * s.V_inverse, IntMatrix::identity(s.V.rows()));
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) {
        EXPECT_EQ(s.D(i, j), 0);
      }
  const auto f = s.invariant_factors();
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_GT(f[i], 0);
    if (i + 1 < f.size()) {
      EXPECT_EQ(mod_floor(f[i + 1], f[i]), 0);
    }
  }
  // Zeros trail the nonzero factors.
  for (std::size_t i = f.size(); i < std::min(s.D.rows(), s.D.cols()); ++i) EXPECT_EQ(s.D(i, i), 0);
}

}  // namespace

TEST(SmithNormalForm, IdentityIsFixed) {
  const auto s = smith_normal_form(IntMatrix::identity(2));
  EXPECT_EQ(s.D, IntMatrix::identity(2));
  EXPECT_EQ(s.U, IntMatrix::identity(2));
  EXPECT_EQ(s.V, IntMatrix::identity(2));
}

TEST(SmithNormalForm, CoprimeColumn) {
  const auto s = smith_normal_form(IntMatrix{{2}, {3}});
  expect_valid_snf(s);
  EXPECT_EQ(s.invariant_factors(), ints({1}));
}

TEST(SmithNormalForm, DiagonalTwoThree) {
  const auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  expect_valid_snf(s);
  EXPECT_EQ(s.invariant_factors(), ints({1, 6}));
}

TEST(SmithNormalForm, EmptyMatrices) {
  for (auto [r, c] : {std::pair{0, 0}, std::pair{0, 3}, std::pair{2, 0}}) {
    const auto s = smith_normal_form(IntMatrix(r, c));
    expect_valid_snf(s);
    EXPECT_EQ(s.rank(), 0u);
  }
}

TEST(SmithNormalForm, RandomMatricesSatisfyInvariants) {
  Rng rng(11);
  for (int t = 0; t < 400; ++t) {
    const auto m = static_cast<std::size_t>(rng() % 7);
    const auto n = static_cast<std::size_t>(rng() % 7);
    const IntMatrix a = tori::testing::random_matrix(rng, m, n, -9, 9);
    const auto s = smith_normal_form(a);
    expect_valid_snf(s);
    EXPECT_EQ(s.rank(), rank_by_elimination(a)) << a;
  }
}

TEST(SmithNormalForm, SquareFullRankTorsionIsDeterminant) {
  Rng rng(12);
  int checked = 0;
  while (checked < 100) {
    const auto n = 1 + static_cast<std::size_t>(rng() % 4);
    const IntMatrix a = tori::testing::random_matrix(rng, n, n, -5, 5);
    const Integer det = determinant(a);
    if (det == 0) continue;
    const auto q = lattice_quotient(n, a);
    EXPECT_EQ(q.group().free_rank, 0u);
    EXPECT_EQ(q.group().torsion_order(), abs(det));
    ++checked;
  }
}

TEST(LatticeQuotient, CoprimeRelationsGiveTrivialGroup) {
  const auto q = lattice_quotient(1, IntMatrix{{2}, {3}});
  EXPECT_EQ(q.group().free_rank, 0u);
  EXPECT_TRUE(q.group().invariant_factors.empty());
}

TEST(LatticeQuotient, CyclicOfOrderThree) {
  const auto q = lattice_quotient(1, IntMatrix{{3}});
  EXPECT_EQ(q.group().free_rank, 0u);
  EXPECT_EQ(q.group().invariant_factors, ints({3}));
}

TEST(LatticeQuotient, CoordinateKernel) {
  const auto q = lattice_quotient(2, IntMatrix{{0, 1}});
  EXPECT_EQ(q.group().free_rank, 1u);
  EXPECT_TRUE(q.group().invariant_factors.empty());
}

TEST(LatticeQuotient, CoordinatesKillRelationsAndRoundTrip) {
  Rng rng(13);
  for (int t = 0; t < 150; ++t) {
    const auto n = 1 + static_cast<std::size_t>(rng() % 4);
    const auto k = static_cast<std::size_t>(rng() % 5);
    const IntMatrix rel = tori::testing::random_matrix(rng, k, n, -6, 6);
    const LatticeQuotient q(n, rel);
    EXPECT_EQ(q.group().free_rank, n - rank_by_elimination(rel));
    for (std::size_t i = 0; i < k; ++i) {
      const IntVector r = rel.row(i);
      for (const auto& c : q.to_coords(r)) EXPECT_EQ(c, 0);
      for (const auto& c : q.free_coords(r)) EXPECT_EQ(c, 0);
      EXPECT_TRUE(q.contains(r));
    }
    if (q.group().torsion_order() > 2000) continue;
    for (const auto& y : torsion_elements(q.group())) EXPECT_EQ(q.to_coords(q.from_coords(y)), y);
  }
}

TEST(TorsionElements, Counts) {
  EXPECT_EQ(torsion_elements(FinAbGroup{}).size(), 1u);
  EXPECT_EQ(torsion_elements(FinAbGroup{ints({3}), 0}),
            (std::vector<TorsionElement>{ints({0}), ints({1}), ints({2})}));
  const auto all = torsion_elements(FinAbGroup{ints({2, 6}), 1});
  EXPECT_EQ(all.size(), 12u);
  EXPECT_EQ(std::set<TorsionElement>(all.begin(), all.end()).size(), 12u);
}

TEST(TorsionElements, CapIsEnforced) {
  EXPECT_THROW(torsion_elements(FinAbGroup{ints({1000, 1000}), 0}, 1000), EnumerationCapError);
}

TEST(InducedEndomorphism, IdentityAndNegation) {
  const LatticeQuotient q(1, IntMatrix{{3}});
  const auto id = induced_endomorphism(q, IntMatrix{{1}});
  const auto neg = induced_endomorphism(q, IntMatrix{{-1}});
  for (long y = 0; y < 3; ++y) {
    EXPECT_EQ(id.apply(ints({y})), ints({y}));
    EXPECT_EQ(neg.apply(ints({y})), ints({(3 - y) % 3}));
  }
}

TEST(InducedEndomorphism, SwapOnDiagonalQuotient) {
  // Z^2 / <(1,1), (3,0)> is Z/3; the swap fixes the class of (1,0) since
  // (0,1) = -(1,0) + (1,1).
  const LatticeQuotient q(2, IntMatrix{{1, 1}, {3, 0}});
  ASSERT_EQ(q.group().invariant_factors, ints({3}));
  const auto swap = induced_endomorphism(q, IntMatrix{{0, 1}, {1, 0}});
  for (const auto& y : torsion_elements(q.group())) {
    const IntVector v = q.from_coords(y);
    const IntVector image{v[1], v[0]};
    EXPECT_EQ(swap.apply(y), q.to_coords(image));
    EXPECT_EQ(swap.apply(y), q.reduce({-y[0]}));
  }
}

TEST(InducedEndomorphism, RejectsNonPreservingMatrix) {
  const LatticeQuotient q(2, IntMatrix{{0, 2}});
  EXPECT_THROW(induced_endomorphism(q, IntMatrix{{0, 1}, {1, 0}}), LatticeNotPreservedError);
}

TEST(InducedEndomorphism, CompositionOfProducts) {
  Rng rng(14);
  for (int t = 0; t < 100; ++t) {
    const auto n = 1 + static_cast<std::size_t>(rng() % 3);
    const IntMatrix p = tori::testing::random_matrix(rng, n, n, -2, 2);
    const IntMatrix r = tori::testing::random_matrix(rng, n, n, -2, 2);
    // m Z^n is stable under every integer matrix.
    const IntMatrix rel = Integer(2 + static_cast<long>(rng() % 5)) * IntMatrix::identity(n);
    const LatticeQuotient q(n, rel);
    const auto fp = induced_endomorphism(q, p);
    const auto fr = induced_endomorphism(q, r);
    const auto fpr = induced_endomorphism(q, p * r);
    for (const auto& y : torsion_elements(q.group())) EXPECT_EQ(fpr.apply(y), fp.after(fr).apply(y));
  }
}

TEST(InducedEndomorphism, CompositionOnStableSublattices) {
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    const auto n = 1 + static_cast<std::size_t>(rng() % 3);
    const IntMatrix g = tori::testing::random_signed_permutation(rng, n);
    const IntMatrix h = g * g;
    const IntMatrix seed = tori::testing::random_matrix(rng, 1 + rng() % 2, n, -4, 4);
    const IntMatrix rel = tori::testing::close_under(seed, g, 8).stacked(
        Integer(6) * IntMatrix::identity(n));
    const LatticeQuotient q(n, rel);
    const auto fg = induced_endomorphism(q, g);
    const auto fh = induced_endomorphism(q, h);
    for (const auto& y : torsion_elements(q.group())) EXPECT_EQ(fh.apply(y), fg.after(fg).apply(y));
  }
}

TEST(InducedMap, DualIsAdjoint) {
  // <chi, P y> = <P^dual chi, y> for chi dual to the target and y in the source.
  Rng rng(15);
  for (int t = 0; t < 60; ++t) {
    const auto n = 1 + static_cast<std::size_t>(rng() % 3);
    const IntMatrix src_rel = Integer(2 + static_cast<long>(rng() % 4)) * IntMatrix::identity(n);
    const LatticeQuotient src(n, src_rel);
    const LatticeQuotient dst(n, src_rel.stacked(tori::testing::random_matrix(rng, 1, n, -3, 3)));
    const IntMatrix p = tori::testing::random_signed_permutation(rng, n);
    const LatticeQuotient dst_p(n, src_rel);
    const auto map = induced_map(src, dst, IntMatrix::identity(n));
    const auto perm = induced_map(src, dst_p, p);
    auto pair = [](const TorsionElement& chi, const TorsionElement& y,
                   const std::vector<Integer>& f) {
      Rational s = 0;
      for (std::size_t i = 0; i < f.size(); ++i) s += Rational(chi[i] * y[i], f[i]);
      s.canonicalize();
      return Rational(s - Rational(floor_div(s.get_num(), s.get_den())));
    };
    for (const auto* m : {&map, &perm}) {
      const auto dual = m->dual();
      for (const auto& y : torsion_elements(FinAbGroup{m->source_factors, 0}))
        for (const auto& chi : torsion_elements(FinAbGroup{m->target_factors, 0}))
          EXPECT_EQ(pair(chi, m->apply(y), m->target_factors),
                    pair(dual.apply(chi), y, m->source_factors));
    }
  }
}

TEST(FiniteCokernel, Examples) {
  EXPECT_FALSE(finite_cokernel_order(2, IntMatrix{{1, 0}}).has_value());
  EXPECT_EQ(finite_cokernel_order(1, IntMatrix{{3}, {6}}), Integer(3));
  EXPECT_EQ(finite_cokernel_order(1, IntMatrix{{2}, {6}}), Integer(2));
}

TEST(IntMatrix, DeterminantAndInverse) {
  const IntMatrix a{{2, 1}, {1, 1}};
  EXPECT_EQ(determinant(a), 1);
  EXPECT_EQ(a * unimodular_inverse(a), IntMatrix::identity(2));
  EXPECT_THROW(unimodular_inverse(IntMatrix{{2}}), ValidationError);
  Rng rng(16);
  for (int t = 0; t < 50; ++t) {
    const IntMatrix u = tori::testing::random_unimodular(rng, 1 + rng() % 4, 6);
    EXPECT_EQ(u * unimodular_inverse(u), IntMatrix::identity(u.rows()));
  }
}
