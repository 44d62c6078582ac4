#include "tori/exact_lp.hpp"

#include <stdexcept>

namespace tori {

namespace {

class Tableau {
 public:
  Tableau(std::size_t cols) : cols_(cols) {}

  void add_row(std::vector<Rational> coeffs, Rational rhs, std::size_t basic) {
    coeffs.resize(cols_);
    a_.push_back(std::move(coeffs));
    b_.push_back(std::move(rhs));
    basis_.push_back(basic);
  }

  // Reduced costs for `costs` relative to the current basis.
  void set_objective(const std::vector<Rational>& costs) {
    costs_ = costs;
    obj_ = costs;
    obj_rhs_ = 0;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const Rational& cb = costs[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) obj_[j] -= cb * a_[i][j];
      obj_rhs_ -= cb * b_[i];
    }
  }

  // Runs simplex over columns with allowed[j]; false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed[j] && obj_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == cols_) return true;
      std::size_t leave = a_.size();
      Rational best;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (a_[i][enter] <= 0) continue;
        Rational ratio = b_[i] / a_[i][enter];
        if (leave == a_.size() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == a_.size()) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t s) {
    const Rational p = a_[r][s];
    for (auto& v : a_[r]) v /= p;
    b_[r] /= p;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == r || a_[i][s] == 0) continue;
      const Rational f = a_[i][s];
      for (std::size_t j = 0; j < cols_; ++j)
        if (a_[r][j] != 0) a_[i][j] -= f * a_[r][j];
      b_[i] -= f * b_[r];
    }
    if (obj_[s] != 0) {
      const Rational f = obj_[s];
      for (std::size_t j = 0; j < cols_; ++j)
        if (a_[r][j] != 0) obj_[j] -= f * a_[r][j];
      obj_rhs_ -= f * b_[r];
    }
    basis_[r] = s;
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    b_.erase(b_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  Rational value() const { return -obj_rhs_; }
  std::size_t rows() const { return a_.size(); }
  std::size_t basic(std::size_t i) const { return basis_[i]; }
  const Rational& entry(std::size_t i, std::size_t j) const { return a_[i][j]; }
  const Rational& rhs(std::size_t i) const { return b_[i]; }

 private:
  std::size_t cols_;
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> costs_;
  std::vector<Rational> obj_;
  Rational obj_rhs_;
};

}  // namespace

LpResult solve_exact(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  if (lp.objective.size() != n) throw std::invalid_argument("objective size mismatch");

  // Column layout: originals, one slack/surplus per inequality, then one
  // artificial per row that lacks a natural basic column.
  std::size_t slack_count = 0;
  for (const auto& r : lp.rows)
    if (r.sense == LinearProgram::Sense::kLessEqual) ++slack_count;
  std::size_t artificial_count = 0;
  for (const auto& r : lp.rows)
    if (r.sense == LinearProgram::Sense::kEqual || r.rhs < 0) ++artificial_count;
  const std::size_t cols = n + slack_count + artificial_count;
  const std::size_t first_artificial = n + slack_count;

  Tableau t(cols);
  std::size_t next_slack = n;
  std::size_t next_art = first_artificial;
  for (const auto& r : lp.rows) {
    if (r.coefficients.size() != n) throw std::invalid_argument("row size mismatch");
    std::vector<Rational> coeffs(cols);
    for (std::size_t j = 0; j < n; ++j) coeffs[j] = r.coefficients[j];
    Rational rhs = r.rhs;
    std::size_t slack = cols;
    if (r.sense == LinearProgram::Sense::kLessEqual) {
      slack = next_slack++;
      coeffs[slack] = 1;
    }
    if (rhs < 0) {
      for (auto& c : coeffs) c = -c;
      rhs = -rhs;
    }
    if (r.sense == LinearProgram::Sense::kLessEqual && r.rhs >= 0) {
      t.add_row(std::move(coeffs), rhs, slack);
    } else {
      const std::size_t art = next_art++;
      coeffs[art] = 1;
      t.add_row(std::move(coeffs), rhs, art);
    }
  }

  std::vector<bool> allowed(cols, true);
  if (artificial_count > 0) {
    std::vector<Rational> phase1(cols);
    for (std::size_t j = first_artificial; j < cols; ++j) phase1[j] = 1;
    t.set_objective(phase1);
    t.optimize(allowed);
    if (t.value() != 0) return LpResult{LpResult::Status::kInfeasible, 0, {}};
    // Pivot zero-level artificials out of the basis, dropping redundant rows.
    for (std::size_t i = 0; i < t.rows();) {
      if (t.basic(i) < first_artificial) {
        ++i;
        continue;
      }
      std::size_t col = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j)
        if (t.entry(i, j) != 0) {
          col = j;
          break;
        }
      if (col == first_artificial) {
        t.drop_row(i);
      } else {
        t.pivot(i, col);
        ++i;
      }
    }
    for (std::size_t j = first_artificial; j < cols; ++j) allowed[j] = false;
  }

  std::vector<Rational> costs(cols);
  for (std::size_t j = 0; j < n; ++j) costs[j] = lp.objective[j];
  t.set_objective(costs);
  if (!t.optimize(allowed)) return LpResult{LpResult::Status::kUnbounded, 0, {}};

  LpResult out{LpResult::Status::kOptimal, t.value(), std::vector<Rational>(n)};
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (t.basic(i) < n) out.x[t.basic(i)] = t.rhs(i);
  return out;
}

}  // namespace tori
