#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "tori/arch.hpp"
#include "tori/errors.hpp"
#include "tori/report.hpp"

using namespace tori;
using tori::testing::Rng;

namespace {

ArchBlocks blocks(std::size_t n1, std::size_t n2, std::size_t n3, std::size_t m1, std::size_t m2,
                  std::size_t m3) {
  ArchBlocks b;
  b.n1 = n1, b.n2 = n2, b.n3 = n3, b.m1 = m1, b.m2 = m2, b.m3 = m3;
  b.A1 = IntMatrix(m1, n1);
  b.A2 = IntMatrix(m2, n1);
  b.A3 = IntMatrix(m3, n1);
  b.C = IntMatrix(m3, n2);
  b.B1 = IntMatrix(m1, n3);
  b.B2 = IntMatrix(m2, n3);
  b.B3.assign(m3, std::vector<std::pair<Integer, Integer>>(n3));
  return b;
}

Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

ArchBlocks gl1_real() {
  ArchBlocks b = blocks(1, 0, 0, 1, 0, 0);
  b.A1 = IntMatrix{{1}};
  return b;
}

// Res_{C/R} G_m: one complex coordinate, B3 = [(1, 0)].
ArchBlocks weil_restriction() {
  ArchBlocks b = blocks(0, 0, 1, 0, 0, 1);
  b.B3 = {{{Integer(1), Integer(0)}}};
  return b;
}

}  // namespace

TEST(Assemble, RealLine) {
  const ArchMatrices m = assemble(gl1_real());
  EXPECT_EQ(m.M_re, (IntMatrix{{1}}));
  EXPECT_EQ(m.M_int.rows(), 0u);
  EXPECT_EQ(m.M_prime, (IntMatrix{{1}}));
}

TEST(Assemble, CircleFactor) {
  ArchBlocks b = blocks(0, 1, 0, 0, 0, 1);
  b.C = IntMatrix{{1}};
  const ArchMatrices m = assemble(b);
  EXPECT_EQ(m.M_int, (IntMatrix{{1}}));
  EXPECT_EQ(m.M_re, IntMatrix(1, 0));
  EXPECT_EQ(m.M_prime, (IntMatrix{{1}, {-1}}));
}

TEST(Assemble, ComplexPairEntries) {
  const ArchMatrices m = assemble(weil_restriction());
  EXPECT_EQ(m.M_re, (IntMatrix{{1}}));
  EXPECT_EQ(m.M_int, (IntMatrix{{1}}));
  EXPECT_EQ(m.M_prime, (IntMatrix{{2, 0}, {0, 2}}));
}

TEST(Assemble, BlockLayout) {
  ArchBlocks b = blocks(1, 1, 1, 1, 1, 1);
  b.A1 = IntMatrix{{1}};
  b.A2 = IntMatrix{{2}};
  b.A3 = IntMatrix{{3}};
  b.C = IntMatrix{{4}};
  b.B1 = IntMatrix{{5}};
  b.B2 = IntMatrix{{6}};
  b.B3 = {{{Integer(7), Integer(1)}}};
  const ArchMatrices m = assemble(b);
  EXPECT_EQ(m.M_re, (IntMatrix{{1, 5}, {2, 6}, {3, 8}}));
  EXPECT_EQ(m.M_int, (IntMatrix{{4, 6}}));
  EXPECT_EQ(m.M_prime, (IntMatrix{{1, 0, 5, 5}, {2, 0, 6, 6}, {3, 4, 14, 2}, {3, -4, 2, 14}}));
}

TEST(Assemble, Validation) {
  ArchBlocks b = gl1_real();
  b.A1 = IntMatrix{{1, 2}};
  EXPECT_THROW(assemble(b), ValidationError);
  ArchBlocks degenerate = blocks(0, 1, 1, 0, 0, 1);
  degenerate.B3 = {{{Integer(2), Integer(2)}}};
  EXPECT_THROW(assemble(degenerate), ValidationError);
}

TEST(ArchAbscissa, Examples) {
  EXPECT_EQ(arch_abscissa(assemble(gl1_real())), 1);
  ArchBlocks two = blocks(2, 0, 0, 2, 0, 0);
  two.A1 = IntMatrix::identity(2);
  EXPECT_EQ(arch_abscissa(assemble(two)), 1);
  ArchBlocks circle = blocks(0, 1, 0, 0, 0, 1);
  circle.C = IntMatrix{{1}};
  EXPECT_EQ(arch_abscissa(assemble(circle)), ratio(1, 2));
  ArchBlocks deficient = blocks(2, 0, 0, 1, 0, 0);
  deficient.A1 = IntMatrix{{1, 1}};
  EXPECT_THROW(arch_abscissa(assemble(deficient)), ValidationError);
}

TEST(Domination, Examples) {
  const Domination d = check_domination(assemble(gl1_real()));
  EXPECT_EQ(d.lhs, 1);
  EXPECT_EQ(d.b_infinity, 1);
  EXPECT_TRUE(d.holds);
  ArchBlocks flat = blocks(1, 0, 0, 1, 0, 0);
  EXPECT_THROW(check_domination(assemble(flat)), ValidationError);
}

TEST(Domination, RandomBlocks) {
  Rng rng(61);
  for (int t = 0; t < 40; ++t) {
    const ArchBlocks b = tori::testing::random_arch_blocks(rng);
    const Domination d = check_domination(assemble(b));
    EXPECT_TRUE(d.holds) << d.lhs << " > " << d.b_infinity;
  }
}

// Row subsets of M' against sub-multisets of the matching coweights:
// |A| = |S| and r(N) - r(N \ A) = dim D(S).
TEST(RowCoweightCorrespondence, RealLineAndWeilRestriction) {
  struct Case {
    ArchBlocks blocks;
    InputSpec spec;
  };
  InputSpec line;
  line.dim = 1;
  line.coweights = {{IntVector{1}, 1}};
  InputSpec weil;
  weil.dim = 2;
  weil.generators = {IntMatrix{{0, 1}, {1, 0}}};
  weil.coweights = {{IntVector{1, 0}, 1}, {IntVector{0, 1}, 1}};
  for (const auto& c : {Case{gl1_real(), line}, Case{weil_restriction(), weil}}) {
    const ArchMatrices m = assemble(c.blocks);
    const LinearMatroid mp = LinearMatroid::from_matrix(m.M_prime);
    const Torus t = c.spec.build();
    ASSERT_EQ(mp.ground_size(), static_cast<std::size_t>(t.coweights().total()));
    const GroundMask ground = mp.ground_mask();
    for (GroundMask a = 0; a <= ground; ++a) {
      SubMultiset s = t.empty_multiset();
      for (std::size_t i = 0; i < s.counts.size(); ++i) s.counts[i] = a >> i & 1;
      EXPECT_EQ(mp.full_rank() - mp.rank(ground & ~a), t.diag_group(s).dimension);
      EXPECT_EQ(static_cast<long>(std::popcount(a)), s.size());
    }
  }
}
