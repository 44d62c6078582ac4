#include "tori/lattice.hpp"

#include <string>

#include "tori/errors.hpp"

namespace tori {

Integer FinAbGroup::torsion_order() const {
  Integer o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

void for_each_torsion_element(const FinAbGroup& g,
                              const std::function<void(const TorsionElement&)>& visit,
                              std::uint64_t cap) {
  const Integer order = g.torsion_order();
  if (order > Integer(static_cast<unsigned long>(cap)))
    throw EnumerationCapError("enumeration cap exceeded: torsion order " + order.get_str() +
                              " > " + std::to_string(cap));
  const std::size_t k = g.invariant_factors.size();
  TorsionElement y(k, 0);
  while (true) {
    visit(y);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++y[i] < g.invariant_factors[i]) break;
      y[i] = 0;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

std::vector<TorsionElement> torsion_elements(const FinAbGroup& g, std::uint64_t cap) {
  std::vector<TorsionElement> out;
  for_each_torsion_element(g, [&](const TorsionElement& y) { out.push_back(y); }, cap);
  return out;
}

LatticeQuotient::LatticeQuotient(std::size_t ambient_rank, const IntMatrix& relations)
    : ambient_rank_(ambient_rank),
      relations_(relations.rows() == 0 ? IntMatrix(0, ambient_rank) : relations),
      snf_(smith_normal_form(relations_)) {
  if (relations_.cols() != ambient_rank)
    throw std::invalid_argument("lattice_quotient: relations have " +
                                std::to_string(relations_.cols()) + " columns, expected " +
                                std::to_string(ambient_rank));
  rank_ = snf_.rank();
  for (std::size_t i = 0; i < rank_; ++i) {
    if (snf_.D(i, i) > 1) {
      torsion_index_.push_back(i);
      group_.invariant_factors.push_back(snf_.D(i, i));
    }
  }
  group_.free_rank = ambient_rank_ - rank_;
}

TorsionElement LatticeQuotient::to_coords(std::span<const Integer> x) const {
  TorsionElement y;
  y.reserve(torsion_index_.size());
  for (std::size_t k = 0; k < torsion_index_.size(); ++k) {
    const std::size_t i = torsion_index_[k];
    Integer s = 0;
    for (std::size_t j = 0; j < ambient_rank_; ++j) s += x[j] * snf_.V(j, i);
    y.push_back(mod_floor(s, group_.invariant_factors[k]));
  }
  return y;
}

IntVector LatticeQuotient::free_coords(std::span<const Integer> x) const {
  IntVector f;
  for (std::size_t i = rank_; i < ambient_rank_; ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < ambient_rank_; ++j) s += x[j] * snf_.V(j, i);
    f.push_back(s);
  }
  return f;
}

IntVector LatticeQuotient::from_coords(std::span<const Integer> y) const {
  IntVector x(ambient_rank_, 0);
  for (std::size_t k = 0; k < torsion_index_.size(); ++k) {
    const std::size_t i = torsion_index_[k];
    for (std::size_t j = 0; j < ambient_rank_; ++j) x[j] += y[k] * snf_.V_inverse(i, j);
  }
  return x;
}

IntVector LatticeQuotient::free_basis_vector(std::size_t j) const {
  return snf_.V_inverse.row(rank_ + j);
}

bool LatticeQuotient::contains(std::span<const Integer> x) const {
  for (std::size_t i = 0; i < ambient_rank_; ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < ambient_rank_; ++j) s += x[j] * snf_.V(j, i);
    if (i < rank_) {
      if (mod_floor(s, snf_.D(i, i)) != 0) return false;
    } else if (s != 0) {
      return false;
    }
  }
  return true;
}

TorsionElement LatticeQuotient::reduce(TorsionElement y) const {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = mod_floor(y[k], group_.invariant_factors[k]);
  return y;
}

LatticeQuotient lattice_quotient(std::size_t ambient_rank, const IntMatrix& relations) {
  return LatticeQuotient(ambient_rank, relations);
}

TorsionElement TorsionMap::apply(std::span<const Integer> y) const {
  TorsionElement out(target_factors.size(), 0);
  for (std::size_t i = 0; i < target_factors.size(); ++i) {
    for (std::size_t j = 0; j < source_factors.size(); ++j) out[i] += matrix(i, j) * y[j];
    out[i] = mod_floor(out[i], target_factors[i]);
  }
  return out;
}

TorsionMap TorsionMap::after(const TorsionMap& first) const {
  TorsionMap c{first.source_factors, target_factors, matrix * first.matrix};
  for (std::size_t i = 0; i < c.matrix.rows(); ++i)
    for (std::size_t j = 0; j < c.matrix.cols(); ++j)
      c.matrix(i, j) = mod_floor(c.matrix(i, j), target_factors[i]);
  return c;
}

TorsionMap TorsionMap::dual() const {
  // A character k of the target sends generator i to k_i / d_i in Q/Z; its
  // pullback sends source generator j to sum_i k_i m_ij / d_i, which is a
  // multiple of 1 / d'_j because d'_j m_ij is divisible by d_i.
  TorsionMap d{target_factors, source_factors,
               IntMatrix(source_factors.size(), target_factors.size())};
  for (std::size_t j = 0; j < source_factors.size(); ++j)
    for (std::size_t i = 0; i < target_factors.size(); ++i) {
      Integer num = matrix(i, j) * source_factors[j];
      if (mod_floor(num, target_factors[i]) != 0)
        throw InternalError("dual of an ill-defined torsion map");
      d.matrix(j, i) = mod_floor(Integer(num / target_factors[i]), source_factors[j]);
    }
  return d;
}

TorsionMap induced_map(const LatticeQuotient& source, const LatticeQuotient& target,
                       const IntMatrix& p) {
  const std::size_t n = source.ambient_rank();
  if (p.rows() != n || p.cols() != n || target.ambient_rank() != n)
    throw std::invalid_argument("induced_map: dimension mismatch");
  for (std::size_t r = 0; r < source.relations().rows(); ++r) {
    const IntVector rel = source.relations().row(r);
    if (!target.contains(p * std::span<const Integer>(rel))) throw LatticeNotPreservedError();
  }
  const auto& sf = source.group().invariant_factors;
  const auto& tf = target.group().invariant_factors;
  TorsionMap m{sf, tf, IntMatrix(tf.size(), sf.size())};
  for (std::size_t j = 0; j < sf.size(); ++j) {
    TorsionElement e(sf.size(), 0);
    e[j] = 1;
    const IntVector rep = source.from_coords(e);
    const TorsionElement img = target.to_coords(p * std::span<const Integer>(rep));
    for (std::size_t i = 0; i < tf.size(); ++i) m.matrix(i, j) = img[i];
  }
  return m;
}

TorsionMap induced_endomorphism(const LatticeQuotient& q, const IntMatrix& p) {
  return induced_map(q, q, p);
}

std::optional<Integer> finite_cokernel_order(std::size_t ambient_rank,
                                             const IntMatrix& combined_relations) {
  const LatticeQuotient q(ambient_rank, combined_relations);
  if (q.group().free_rank != 0) return std::nullopt;
  return q.group().torsion_order();
}

Integer torsion_cokernel_order(const TorsionMap& endo) {
  // Z^k / (columns of M + diag(d) Z^k).
  const std::size_t k = endo.source_factors.size();
  IntMatrix rel = endo.matrix.transpose().stacked(IntMatrix::diagonal(endo.source_factors));
  if (k == 0) return 1;
  auto order = finite_cokernel_order(k, rel);
  if (!order) throw InternalError("torsion cokernel is infinite");
  return *order;
}

}  // namespace tori
