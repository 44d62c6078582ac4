#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tori/int_matrix.hpp"

namespace tori {

// Bit i set <=> ground element i is in the set.
using GroundMask = std::uint64_t;

inline constexpr std::size_t kMaxEnumeratedGround = 24;

class Matroid {
 public:
  virtual ~Matroid() = default;
  virtual std::size_t ground_size() const = 0;
  virtual std::size_t rank(GroundMask s) const = 0;

  GroundMask ground_mask() const;
  std::size_t full_rank() const { return rank(ground_mask()); }
};

// Matroid given by a user-supplied rank function.
class RankOracleMatroid : public Matroid {
 public:
  RankOracleMatroid(std::size_t m, std::function<std::size_t(GroundMask)> rank)
      : m_(m), rank_(std::move(rank)) {}
  std::size_t ground_size() const override { return m_; }
  std::size_t rank(GroundMask s) const override { return rank_(s); }

 private:
  std::size_t m_;
  std::function<std::size_t(GroundMask)> rank_;
};

// Row matroid of a rational m x n matrix.
class LinearMatroid : public Matroid {
 public:
  LinearMatroid(std::vector<std::vector<Rational>> rows, std::size_t n);
  static LinearMatroid from_matrix(const IntMatrix& m);

  std::size_t ground_size() const override { return rows_.size(); }
  std::size_t dim() const { return n_; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }
  std::size_t rank(GroundMask s) const override;
  bool is_full_rank() const { return full_rank() == n_; }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::size_t n_;
  struct Cache {
    std::mutex mutex;
    std::unordered_map<GroundMask, std::size_t> rank;
  };
  std::unique_ptr<Cache> cache_ = std::make_unique<Cache>();
};

struct BiasCertificate {
  std::vector<std::size_t> subset;  // sorted ground indices
  std::size_t alpha = 0;
  std::size_t beta = 0;
  Rational ratio;
};

std::vector<std::size_t> mask_indices(GroundMask s);
GroundMask indices_mask(const std::vector<std::size_t>& indices);

// max over nonempty A of (r(N) - r(N \ A)) / |A|; ties go to the smallest
// |A|, then the lexicographically smallest index list.
BiasCertificate b_infinity(const LinearMatroid& m);
BiasCertificate b_infinity(const Matroid& m, std::size_t required_rank);

// min ||x||_inf over the base polytope, solved as a linear program.
Rational b_infinity_oracle(const Matroid& m);

// Some A with |A| = alpha and r(N) - r(N \ A) >= beta.
std::optional<BiasCertificate> is_biased(const Matroid& m, std::size_t alpha, std::size_t beta);

std::vector<GroundMask> bases(const Matroid& m);

}  // namespace tori
