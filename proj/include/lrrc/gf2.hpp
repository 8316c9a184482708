#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "lrrc/errors.hpp"

namespace lrrc {

// A coded packet Y = m^T v as its coefficient vector v over GF(2). Bit i
// holds the coefficient of file packet X_{i+1}. Dimension is a per-instance
// constant (4 for the explicit code, 2 for the duplication scheme).
struct PacketVector {
  std::uint32_t bits = 0;
  int dim = 0;

  bool is_zero() const { return bits == 0; }
  PacketVector operator^(const PacketVector& o) const { return {bits ^ o.bits, dim}; }
  bool operator==(const PacketVector& o) const = default;
};

inline PacketVector packet(std::uint32_t bits, int dim) { return {bits, dim}; }

// Lexicographic order on the coefficient sequence (X1, X2, ...): the first
// differing coordinate decides, absent-coefficient first.
inline bool lex_less(const PacketVector& a, const PacketVector& b) {
  for (int i = 0; i < a.dim; ++i) {
    bool ai = (a.bits >> i) & 1, bi = (b.bits >> i) & 1;
    if (ai != bi) return bi;
  }
  return false;
}

// Basis of a GF(2) subspace kept in reduced row echelon form (pivot = lowest
// set coordinate, pivots strictly increasing, pivot columns cleared in all
// other rows). Two subspaces are equal iff their rows are equal.
class SubspaceBasis {
 public:
  explicit SubspaceBasis(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::uint32_t>& rows() const { return rows_; }

  // Inserts a vector, keeping reduced echelon form. Returns true if the rank
  // grew.
  bool insert(PacketVector v) {
    check_dim(v);
    std::uint32_t w = reduce(v.bits);
    if (w == 0) return false;
    int pivot = lowest_bit(w);
    std::size_t at = 0;
    while (at < rows_.size() && lowest_bit(rows_[at]) < pivot) ++at;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), w);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (i != at && (rows_[i] >> pivot) & 1) rows_[i] ^= w;
    return true;
  }

  bool contains(PacketVector v) const {
    check_dim(v);
    return reduce(v.bits) == 0;
  }

  // All 2^rank member vectors, in increasing mask-of-rows order.
  std::vector<PacketVector> elements() const {
    std::vector<PacketVector> out;
    out.reserve(std::size_t{1} << rows_.size());
    for (std::uint32_t sel = 0; sel < (std::uint32_t{1} << rows_.size()); ++sel) {
      std::uint32_t v = 0;
      for (std::size_t i = 0; i < rows_.size(); ++i)
        if ((sel >> i) & 1) v ^= rows_[i];
      out.push_back({v, dim_});
    }
    return out;
  }

  bool operator==(const SubspaceBasis& o) const = default;

 private:
  void check_dim(const PacketVector& v) const {
    if (v.dim != dim_) throw DimensionError("packet vector dimension mismatch");
  }
  static int lowest_bit(std::uint32_t w) { return std::countr_zero(w); }
  std::uint32_t reduce(std::uint32_t w) const {
    for (std::uint32_t row : rows_)
      if ((w >> lowest_bit(row)) & 1) w ^= row;
    return w;
  }

  int dim_;
  std::vector<std::uint32_t> rows_;
};

inline SubspaceBasis span_of(std::span<const PacketVector> vectors, int dim) {
  SubspaceBasis b(dim);
  for (const auto& v : vectors) {
    if (v.dim != dim) throw DimensionError("packet vector dimension mismatch");
    b.insert(v);
  }
  return b;
}

inline SubspaceBasis span_of(std::initializer_list<PacketVector> vectors, int dim) {
  return span_of(std::span<const PacketVector>(vectors.begin(), vectors.size()), dim);
}

inline int rank(std::span<const PacketVector> vectors, int dim) {
  return span_of(vectors, dim).rank();
}

inline bool in_span(PacketVector v, const SubspaceBasis& s) { return s.contains(v); }

inline SubspaceBasis sum_space(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.dim() != b.dim()) throw DimensionError("sum space of different dimensions");
  SubspaceBasis out = a;
  for (std::uint32_t row : b.rows()) out.insert({row, a.dim()});
  return out;
}

}  // namespace lrrc
