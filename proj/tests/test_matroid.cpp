#include <gtest/gtest.h>

#include <bit>
#include <deque>

#include "support/generators.hpp"
#include "tori/errors.hpp"
#include "tori/exact_lp.hpp"
#include "tori/matroid.hpp"

using namespace tori;
using tori::testing::Rng;

namespace {

LinearMatroid mat(std::initializer_list<std::initializer_list<long>> rows) {
  return LinearMatroid::from_matrix(IntMatrix(rows));
}

Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Largest common independent set by augmenting paths in the exchange graph.
std::size_t max_common_independent(const Matroid& m1, const Matroid& m2) {
  const std::size_t n = m1.ground_size();
  GroundMask current = 0;
  auto indep = [](const Matroid& m, GroundMask s) {
    return m.rank(s) == static_cast<std::size_t>(std::popcount(s));
  };
  while (true) {
    std::vector<int> prev(n, -2);
    std::deque<std::size_t> queue;
    for (std::size_t x = 0; x < n; ++x)
      if (!(current >> x & 1) && indep(m1, current | GroundMask{1} << x)) {
        prev[x] = -1;
        queue.push_back(x);
      }
    int end = -1;
    while (!queue.empty() && end < 0) {
      const std::size_t u = queue.front();
      queue.pop_front();
      const bool u_out = !(current >> u & 1);
      if (u_out && indep(m2, current | GroundMask{1} << u)) {
        end = static_cast<int>(u);
        break;
      }
      for (std::size_t v = 0; v < n; ++v) {
        if (prev[v] != -2) continue;
        const bool v_out = !(current >> v & 1);
        bool edge = false;
        if (u_out && !v_out)  // swap in M2: current - v + u independent
          edge = indep(m2, (current & ~(GroundMask{1} << v)) | GroundMask{1} << u);
        if (!u_out && v_out)  // swap in M1: current - u + v independent
          edge = indep(m1, (current & ~(GroundMask{1} << u)) | GroundMask{1} << v);
        if (edge) {
          prev[v] = static_cast<int>(u);
          queue.push_back(v);
        }
      }
    }
    if (end < 0) return static_cast<std::size_t>(std::popcount(current));
    for (int v = end; v >= 0; v = prev[static_cast<std::size_t>(v)]) current ^= GroundMask{1} << v;
  }
}

}  // namespace

TEST(Rank, Examples) {
  EXPECT_EQ(mat({{1, 0}, {0, 1}}).rank(0), 0u);
  EXPECT_EQ(mat({{1, 0}, {2, 0}}).rank(0b11), 1u);
  EXPECT_EQ(mat({{1, 0}, {0, 1}, {1, 1}}).rank(0b111), 2u);
}

TEST(Rank, MatchesIntegerElimination) {
  Rng rng(51);
  for (int t = 0; t < 200; ++t) {
    const IntMatrix a = tori::testing::random_matrix(rng, 1 + rng() % 6, 1 + rng() % 4, -3, 3);
    const LinearMatroid m = LinearMatroid::from_matrix(a);
    for (GroundMask s = 0; s <= m.ground_mask(); ++s) {
      std::vector<std::size_t> idx = mask_indices(s);
      EXPECT_EQ(m.rank(s), rank_by_elimination(a.select_rows(idx)));
    }
  }
}

TEST(Rank, MatroidAxioms) {
  Rng rng(52);
  for (int t = 0; t < 80; ++t) {
    const auto m = 1 + static_cast<std::size_t>(rng() % 6);
    const auto n = 1 + static_cast<std::size_t>(rng() % 4);
    const LinearMatroid mt(tori::testing::random_full_rank_rational(rng, std::max(m, n), n), n);
    const GroundMask ground = mt.ground_mask();
    for (GroundMask a = 0; a <= ground; ++a) {
      EXPECT_LE(mt.rank(a), static_cast<std::size_t>(std::popcount(a)));
      for (std::size_t e = 0; e < mt.ground_size(); ++e) {
        const std::size_t with = mt.rank(a | GroundMask{1} << e);
        EXPECT_TRUE(with == mt.rank(a) || with == mt.rank(a) + 1);
      }
      for (GroundMask b = 0; b <= ground; ++b) {
        EXPECT_GE(mt.rank(a) + mt.rank(b), mt.rank(a | b) + mt.rank(a & b));
        if ((a & b) == a) {
          EXPECT_LE(mt.rank(a), mt.rank(b));
        }
      }
    }
  }
}

TEST(BInfinity, Examples) {
  const auto id = b_infinity(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(id.ratio, 1);
  EXPECT_EQ(id.subset, (std::vector<std::size_t>{0}));
  EXPECT_EQ(b_infinity(mat({{1}, {1}})).ratio, ratio(1, 2));
  const auto tri = b_infinity(mat({{1, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(tri.ratio, ratio(2, 3));
  EXPECT_EQ(tri.subset, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(tri.beta, 2u);
  EXPECT_THROW(b_infinity(mat({{1, 0}, {2, 0}})), ValidationError);
}

TEST(BInfinity, OracleExamples) {
  EXPECT_EQ(b_infinity_oracle(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 1);
  EXPECT_EQ(b_infinity_oracle(mat({{1}, {1}})), ratio(1, 2));
  EXPECT_EQ(b_infinity_oracle(mat({{1, 0}, {0, 1}, {1, 1}})), ratio(2, 3));
  std::vector<std::vector<Rational>> big(11, std::vector<Rational>{1});
  EXPECT_THROW(b_infinity_oracle(LinearMatroid(big, 1)), EnumerationCapError);
}

TEST(BInfinity, MatchesOracleOnRandomMatrices) {
  Rng rng(53);
  for (int t = 0; t < 60; ++t) {
    const auto n = 1 + static_cast<std::size_t>(rng() % 4);
    const auto m = n + static_cast<std::size_t>(rng() % (8 - n));
    const LinearMatroid mt(tori::testing::random_full_rank_rational(rng, m, n), n);
    EXPECT_EQ(b_infinity(mt).ratio, b_infinity_oracle(mt));
  }
}

TEST(BInfinity, CertificateIsConsistent) {
  Rng rng(54);
  for (int t = 0; t < 60; ++t) {
    const auto n = 1 + static_cast<std::size_t>(rng() % 3);
    const LinearMatroid mt(tori::testing::random_full_rank_rational(rng, n + rng() % 4, n), n);
    const auto c = b_infinity(mt);
    const GroundMask a = indices_mask(c.subset);
    EXPECT_EQ(c.alpha, c.subset.size());
    EXPECT_EQ(c.beta, mt.full_rank() - mt.rank(mt.ground_mask() & ~a));
    EXPECT_EQ(c.ratio, ratio(static_cast<long>(c.beta), static_cast<long>(c.alpha)));
    EXPECT_TRUE(is_biased(mt, c.alpha, c.beta).has_value());
  }
}

TEST(IsBiased, Examples) {
  Rng rng(55);
  for (int t = 0; t < 20; ++t) {
    const auto n = 1 + static_cast<std::size_t>(rng() % 3);
    const auto m = n + static_cast<std::size_t>(rng() % 3);
    const LinearMatroid mt(tori::testing::random_full_rank_rational(rng, m, n), n);
    EXPECT_TRUE(is_biased(mt, m, n).has_value());
  }
  EXPECT_TRUE(is_biased(mat({{1, 0}, {0, 1}}), 1, 1).has_value());
  EXPECT_FALSE(is_biased(mat({{1, 0}, {0, 1}, {1, 1}}), 1, 1).has_value());
}

// r(N) - r(N \ A) >= beta iff every basis meets A in at least beta elements.
TEST(IsBiased, AgreesWithBasisEnumeration) {
  Rng rng(56);
  for (int t = 0; t < 40; ++t) {
    const auto n = 1 + static_cast<std::size_t>(rng() % 3);
    const LinearMatroid mt(tori::testing::random_full_rank_rational(rng, n + rng() % 4, n), n);
    const auto all_bases = bases(mt);
    const GroundMask ground = mt.ground_mask();
    for (GroundMask a = 1; a <= ground; ++a) {
      const std::size_t deficit = mt.full_rank() - mt.rank(ground & ~a);
      std::size_t min_meet = n;
      for (GroundMask b : all_bases) min_meet = std::min<std::size_t>(min_meet, std::popcount(a & b));
      for (std::size_t beta = 0; beta <= n; ++beta)
        EXPECT_EQ(deficit >= beta, min_meet >= beta);
    }
  }
}

TEST(MatroidIntersection, MaxEqualsMinFormula) {
  Rng rng(57);
  for (int t = 0; t < 60; ++t) {
    const auto m = 1 + static_cast<std::size_t>(rng() % 6);
    const IntMatrix a = tori::testing::random_matrix(rng, m, 1 + rng() % 3, -2, 2);
    const IntMatrix b = tori::testing::random_matrix(rng, m, 1 + rng() % 3, -2, 2);
    const LinearMatroid m1 = LinearMatroid::from_matrix(a);
    const LinearMatroid m2 = LinearMatroid::from_matrix(b);
    std::size_t best = m;
    for (GroundMask s = 0; s <= m1.ground_mask(); ++s)
      best = std::min(best, m1.rank(s) + m2.rank(m1.ground_mask() & ~s));
    EXPECT_EQ(max_common_independent(m1, m2), best);
  }
}

TEST(RankOracle, AbstractUniformMatroid) {
  // U_{2,4}: rank min(|S|, 2).
  const RankOracleMatroid u(4, [](GroundMask s) {
    return std::min<std::size_t>(static_cast<std::size_t>(std::popcount(s)), 2);
  });
  EXPECT_EQ(b_infinity(u, 2).ratio, ratio(1, 2));
  EXPECT_EQ(b_infinity_oracle(u), ratio(1, 2));
  EXPECT_EQ(bases(u).size(), 6u);
}

TEST(ExactLp, SmallPrograms) {
  // min -x - y s.t. x + 2y <= 4, 3x + y <= 6.
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {-1, -1};
  lp.rows.push_back({{1, 2}, LinearProgram::Sense::kLessEqual, 4});
  lp.rows.push_back({{3, 1}, LinearProgram::Sense::kLessEqual, 6});
  const auto r = solve_exact(lp);
  ASSERT_EQ(r.status, LpResult::Status::kOptimal);
  EXPECT_EQ(r.value, ratio(-14, 5));
  EXPECT_EQ(r.x, (std::vector<Rational>{ratio(8, 5), ratio(6, 5)}));

  LinearProgram infeasible;
  infeasible.num_vars = 1;
  infeasible.objective = {1};
  infeasible.rows.push_back({{1}, LinearProgram::Sense::kEqual, -1});
  EXPECT_EQ(solve_exact(infeasible).status, LpResult::Status::kInfeasible);

  LinearProgram unbounded;
  unbounded.num_vars = 1;
  unbounded.objective = {-1};
  unbounded.rows.push_back({{-1}, LinearProgram::Sense::kLessEqual, 0});
  EXPECT_EQ(solve_exact(unbounded).status, LpResult::Status::kUnbounded);
}
