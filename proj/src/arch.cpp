#include "tori/arch.hpp"

#include <bit>
#include <string>

#include "tori/errors.hpp"

namespace tori {

namespace {

void require_shape(const char* name, const IntMatrix& m, std::size_t rows, std::size_t cols) {
  if (m.rows() != rows || m.cols() != cols)
    throw ValidationError(std::string("dimension mismatch: ") + name + " is " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                          ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
}

// Copies `src` into `dst` at (r0, c0), scaled by `sign`.
void place(IntMatrix& dst, const IntMatrix& src, std::size_t r0, std::size_t c0, int sign = 1) {
  for (std::size_t i = 0; i < src.rows(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j) dst(r0 + i, c0 + j) = sign * src(i, j);
}

// Largest beta / weight(A) over nonempty row subsets A.
template <class Weight>
Rational best_bias_ratio(const LinearMatroid& m, Weight&& weight) {
  const std::size_t size = m.ground_size();
  if (size > kMaxEnumeratedGround) throw EnumerationCapError("too many rows to enumerate");
  const GroundMask ground = m.ground_mask();
  const std::size_t r_n = m.rank(ground);
  Rational best = 0;
  for (GroundMask a = 1; a <= ground && a != 0; ++a) {
    const long beta = static_cast<long>(r_n - m.rank(ground & ~a));
    Rational ratio(beta, weight(a));
    ratio.canonicalize();
    if (ratio > best) best = ratio;
  }
  return best;
}

}  // namespace

void validate(const ArchBlocks& b) {
  require_shape("A1", b.A1, b.m1, b.n1);
  require_shape("A2", b.A2, b.m2, b.n1);
  require_shape("A3", b.A3, b.m3, b.n1);
  require_shape("C", b.C, b.m3, b.n2);
  require_shape("B1", b.B1, b.m1, b.n3);
  require_shape("B2", b.B2, b.m2, b.n3);
  if (b.B3.size() != b.m3)
    throw ValidationError("dimension mismatch: B3 has " + std::to_string(b.B3.size()) +
                          " rows, expected " + std::to_string(b.m3));
  for (std::size_t i = 0; i < b.m3; ++i) {
    if (b.B3[i].size() != b.n3)
      throw ValidationError("dimension mismatch: B3 row " + std::to_string(i) + " has " +
                            std::to_string(b.B3[i].size()) + " entries, expected " +
                            std::to_string(b.n3));
    bool ok = false;
    for (std::size_t j = 0; j < b.n2; ++j) ok = ok || b.C(i, j) != 0;
    for (const auto& [x, y] : b.B3[i]) ok = ok || x != y;
    if (!ok)
      throw ValidationError("archimedean row " + std::to_string(i) +
                            " of (A3 | C | B3) has C = 0 and b = b' throughout");
  }
}

ArchMatrices assemble(const ArchBlocks& b) {
  validate(b);
  IntMatrix b3p(b.m3, b.n3), b3m(b.m3, b.n3);
  for (std::size_t i = 0; i < b.m3; ++i)
    for (std::size_t j = 0; j < b.n3; ++j) {
      b3p(i, j) = b.B3[i][j].first + b.B3[i][j].second;
      b3m(i, j) = b.B3[i][j].first - b.B3[i][j].second;
    }

  ArchMatrices out;
  out.real_rows = b.m1 + b.m2;

  out.M_re = IntMatrix(b.m1 + b.m2 + b.m3, b.n1 + b.n3);
  place(out.M_re, b.A1, 0, 0);
  place(out.M_re, b.A2, b.m1, 0);
  place(out.M_re, b.A3, b.m1 + b.m2, 0);
  place(out.M_re, b.B1, 0, b.n1);
  place(out.M_re, b.B2, b.m1, b.n1);
  place(out.M_re, b3p, b.m1 + b.m2, b.n1);

  out.M_int = IntMatrix(b.m3, b.n2 + b.n3);
  place(out.M_int, b.C, 0, 0);
  place(out.M_int, b3m, 0, b.n2);

  const IntMatrix sum = b3p + b3m;
  const IntMatrix diff = b3p - b3m;
  const std::size_t r3 = b.m1 + b.m2, r4 = r3 + b.m3;
  const std::size_t c2 = b.n1, c3 = b.n1 + b.n2, c4 = c3 + b.n3;
  out.M_prime = IntMatrix(b.m1 + b.m2 + 2 * b.m3, b.n1 + b.n2 + 2 * b.n3);
  place(out.M_prime, b.A1, 0, 0);
  place(out.M_prime, b.B1, 0, c3);
  place(out.M_prime, b.B1, 0, c4);
  place(out.M_prime, b.A2, b.m1, 0);
  place(out.M_prime, b.B2, b.m1, c3);
  place(out.M_prime, b.B2, b.m1, c4);
  place(out.M_prime, b.A3, r3, 0);
  place(out.M_prime, b.C, r3, c2);
  place(out.M_prime, sum, r3, c3);
  place(out.M_prime, diff, r3, c4);
  place(out.M_prime, b.A3, r4, 0);
  place(out.M_prime, b.C, r4, c2, -1);
  place(out.M_prime, diff, r4, c3);
  place(out.M_prime, sum, r4, c4);
  return out;
}

Rational arch_abscissa(const ArchMatrices& mats) {
  const LinearMatroid re = LinearMatroid::from_matrix(mats.M_re);
  if (!re.is_full_rank()) throw ValidationError("M_re rank deficient");
  const GroundMask real_mask = (GroundMask{1} << mats.real_rows) - 1;
  const Rational from_re = best_bias_ratio(re, [&](GroundMask a) {
    const long a1 = std::popcount(a & real_mask);
    const long a2 = std::popcount(a & ~real_mask);
    return a1 + 2 * a2;
  });
  if (mats.M_int.rows() == 0) return from_re;
  const LinearMatroid in = LinearMatroid::from_matrix(mats.M_int);
  const Rational from_int =
      best_bias_ratio(in, [](GroundMask a) { return 2L * std::popcount(a); });
  return from_re > from_int ? from_re : from_int;
}

Domination check_domination(const ArchMatrices& mats) {
  const LinearMatroid prime = LinearMatroid::from_matrix(mats.M_prime);
  if (!prime.is_full_rank()) throw ValidationError("M' not full rank");
  Domination d;
  d.lhs = arch_abscissa(mats);
  d.b_infinity = b_infinity(prime).ratio;
  d.holds = d.lhs <= d.b_infinity;
  return d;
}

}  // namespace tori
