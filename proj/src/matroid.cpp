#include "tori/matroid.hpp"

#include <bit>
#include <string>

#include "tori/errors.hpp"
#include "tori/exact_lp.hpp"

namespace tori {

namespace {

constexpr std::size_t kOracleMaxGround = 10;

void require_enumerable(std::size_t m) {
  if (m > kMaxEnumeratedGround)
    throw EnumerationCapError("ground set of size " + std::to_string(m) +
                              " exceeds the subset enumeration limit " +
                              std::to_string(kMaxEnumeratedGround));
}

// Calls visit(mask) for every k-subset of {0..m-1} in lexicographic order of
// index lists; stops early when visit returns true.
template <class Visit>
bool for_each_combination(std::size_t m, std::size_t k, Visit&& visit) {
  if (k > m) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    GroundMask mask = 0;
    for (auto i : idx) mask |= GroundMask{1} << i;
    if (visit(mask)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

GroundMask Matroid::ground_mask() const {
  const std::size_t m = ground_size();
  return m >= 64 ? ~GroundMask{0} : (GroundMask{1} << m) - 1;
}

LinearMatroid::LinearMatroid(std::vector<std::vector<Rational>> rows, std::size_t n)
    : rows_(std::move(rows)), n_(n) {
  if (rows_.size() > 63) throw ValidationError("matroid ground set larger than 63");
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i].size() != n_)
      throw SchemaError("row " + std::to_string(i) + " has length " +
                        std::to_string(rows_[i].size()) + ", expected " + std::to_string(n_));
}

LinearMatroid LinearMatroid::from_matrix(const IntMatrix& m) {
  std::vector<std::vector<Rational>> rows(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return LinearMatroid(std::move(rows), m.cols());
}

std::size_t LinearMatroid::rank(GroundMask s) const {
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->rank.find(s); it != cache_->rank.end()) return it->second;
  }
  std::vector<std::vector<Rational>> a;
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (s >> i & 1) a.push_back(rows_[i]);
  std::size_t r = 0;
  for (std::size_t col = 0; col < n_ && r < a.size(); ++col) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][col] == 0) continue;
      const Rational f = a[i][col] / a[r][col];
      for (std::size_t j = col; j < n_; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  std::lock_guard lock(cache_->mutex);
  cache_->rank.emplace(s, r);
  return r;
}

std::vector<std::size_t> mask_indices(GroundMask s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s >> i; ++i)
    if (s >> i & 1) out.push_back(i);
  return out;
}

GroundMask indices_mask(const std::vector<std::size_t>& indices) {
  GroundMask s = 0;
  for (auto i : indices) s |= GroundMask{1} << i;
  return s;
}

BiasCertificate b_infinity(const LinearMatroid& m) { return b_infinity(m, m.dim()); }

BiasCertificate b_infinity(const Matroid& m, std::size_t required_rank) {
  const std::size_t size = m.ground_size();
  require_enumerable(size);
  const GroundMask ground = m.ground_mask();
  const std::size_t r_n = m.rank(ground);
  if (r_n != required_rank || size == 0) throw ValidationError("not full rank");

  std::optional<BiasCertificate> best;
  for (std::size_t k = 1; k <= size; ++k) {
    for_each_combination(size, k, [&](GroundMask a) {
      const std::size_t beta = r_n - m.rank(ground & ~a);
      Rational ratio(static_cast<long>(beta), static_cast<long>(k));
      ratio.canonicalize();
      if (!best || ratio > best->ratio) best = BiasCertificate{mask_indices(a), k, beta, ratio};
      return false;
    });
  }
  return *best;
}

Rational b_infinity_oracle(const Matroid& m) {
  const std::size_t size = m.ground_size();
  if (size > kOracleMaxGround) throw EnumerationCapError("instance too large");
  if (size == 0) throw ValidationError("not full rank");
  const GroundMask ground = m.ground_mask();
  const std::size_t r_n = m.rank(ground);

  // Variables x_0..x_{m-1}, t. Only flats need a rank constraint: for any S,
  // x(S) <= x(cl S) <= r(cl S) = r(S) once x >= 0.
  LinearProgram lp;
  lp.num_vars = size + 1;
  lp.objective.assign(size + 1, 0);
  lp.objective[size] = 1;

  LinearProgram::Row total;
  total.coefficients.assign(size + 1, 0);
  for (std::size_t i = 0; i < size; ++i) total.coefficients[i] = 1;
  total.sense = LinearProgram::Sense::kEqual;
  total.rhs = static_cast<long>(r_n);
  lp.rows.push_back(total);

  for (std::size_t i = 0; i < size; ++i) {
    LinearProgram::Row cap;
    cap.coefficients.assign(size + 1, 0);
    cap.coefficients[i] = 1;
    cap.coefficients[size] = -1;
    cap.rhs = 0;
    lp.rows.push_back(cap);
  }

  for (GroundMask s = 0; s < ground; ++s) {
    const std::size_t r = m.rank(s);
    bool flat = true;
    for (std::size_t e = 0; e < size && flat; ++e)
      if (!(s >> e & 1) && m.rank(s | GroundMask{1} << e) == r) flat = false;
    if (!flat || s == 0) continue;
    LinearProgram::Row row;
    row.coefficients.assign(size + 1, 0);
    for (std::size_t i = 0; i < size; ++i)
      if (s >> i & 1) row.coefficients[i] = 1;
    row.rhs = static_cast<long>(r);
    lp.rows.push_back(std::move(row));
  }

  const LpResult res = solve_exact(lp);
  if (res.status != LpResult::Status::kOptimal)
    throw InternalError("base polytope linear program did not reach an optimum");
  return res.value;
}

std::optional<BiasCertificate> is_biased(const Matroid& m, std::size_t alpha, std::size_t beta) {
  const std::size_t size = m.ground_size();
  require_enumerable(size);
  const GroundMask ground = m.ground_mask();
  const std::size_t r_n = m.rank(ground);
  std::optional<BiasCertificate> out;
  for_each_combination(size, alpha, [&](GroundMask a) {
    const std::size_t b = r_n - m.rank(ground & ~a);
    if (b < beta) return false;
    Rational ratio(static_cast<long>(b), static_cast<long>(alpha));
    ratio.canonicalize();
    out = BiasCertificate{mask_indices(a), alpha, b, ratio};
    return true;
  });
  return out;
}

std::vector<GroundMask> bases(const Matroid& m) {
  const std::size_t size = m.ground_size();
  require_enumerable(size);
  const std::size_t r = m.full_rank();
  std::vector<GroundMask> out;
  for_each_combination(size, r, [&](GroundMask s) {
    if (m.rank(s) == r) out.push_back(s);
    return false;
  });
  return out;
}

}  // namespace tori
