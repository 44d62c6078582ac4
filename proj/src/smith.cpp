#include "tori/smith.hpp"

#include <algorithm>

namespace tori {

std::size_t SNFDecomposition::rank() const {
  std::size_t r = 0;
  const std::size_t k = std::min(D.rows(), D.cols());
  while (r < k && D(r, r) != 0) ++r;
  return r;
}

std::vector<Integer> SNFDecomposition::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < rank(); ++i) out.push_back(D(i, i));
  return out;
}

namespace {

struct Work {
  IntMatrix a;
  IntMatrix u;
  IntMatrix v;
  IntMatrix v_inv;

  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
    v_inv.swap_rows(i, j);
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    a.add_row_multiple(dst, src, f);
    u.add_row_multiple(dst, src, f);
  }
  // col[dst] += f * col[src]; V picks up the same column operation, so
  // V^{-1} picks up the inverse row operation row[src] -= f * row[dst].
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    a.add_col_multiple(dst, src, f);
    v.add_col_multiple(dst, src, f);
    v_inv.add_row_multiple(src, dst, -f);
  }
  void negate_row(std::size_t i) {
    a.negate_row(i);
    u.negate_row(i);
  }
};

// Position of the nonzero entry of least absolute value in a[t.., t..].
bool find_pivot(const IntMatrix& a, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      if (!found || abs(a(i, j)) < abs(a(pr, pc))) {
        pr = i;
        pc = j;
        found = true;
      }
    }
  return found;
}

}  // namespace

SNFDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Work w{m, IntMatrix::identity(rows), IntMatrix::identity(cols), IntMatrix::identity(cols)};
  const std::size_t k = std::min(rows, cols);

  for (std::size_t t = 0; t < k; ++t) {
    std::size_t pr = t, pc = t;
    if (!find_pivot(w.a, t, pr, pc)) break;
    w.swap_rows(t, pr);
    w.swap_cols(t, pc);

    while (true) {
      bool changed = false;
      // Clear column t below the pivot.
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (w.a(i, t) == 0) continue;
        w.add_row(i, t, -floor_div(w.a(i, t), w.a(t, t)));
        if (w.a(i, t) != 0) {
          // Remainder is smaller than the pivot: promote it.
          w.swap_rows(t, i);
          changed = true;
        }
      }
      // Clear row t right of the pivot.
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (w.a(t, j) == 0) continue;
        w.add_col(j, t, -floor_div(w.a(t, j), w.a(t, t)));
        if (w.a(t, j) != 0) {
          w.swap_cols(t, j);
          changed = true;
        }
      }
      if (changed) continue;

      // Pivot must divide the whole remaining block.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (mod_floor(w.a(i, j), w.a(t, t)) != 0) {
            w.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (w.a(t, t) < 0) w.negate_row(t);
  }

  return SNFDecomposition{m, std::move(w.u), std::move(w.a), std::move(w.v),
                          std::move(w.v_inv)};
}

}  // namespace tori
