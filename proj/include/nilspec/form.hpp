#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <span>
#include <vector>

#include "nilspec/rational.hpp"

namespace nilspec {

/// Largest Lie algebra dimension the exterior machinery accepts.
inline constexpr std::size_t kMaxDim = 16;

/// Strictly increasing list of 0-based covector indices, stored as a bit set.
/// Ordered lexicographically on the index list.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<std::size_t> indices);
  static MultiIndex from_bits(std::uint32_t bits) {
    MultiIndex m;
    m.bits_ = bits;
    return m;
  }

  std::uint32_t bits() const { return bits_; }
  std::size_t size() const;
  bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  bool overlaps(MultiIndex o) const { return (bits_ & o.bits_) != 0; }
  std::vector<std::size_t> indices() const;

  friend bool operator==(MultiIndex a, MultiIndex b) { return a.bits_ == b.bits_; }
  friend std::strong_ordering operator<=>(MultiIndex a, MultiIndex b);

 private:
  std::uint32_t bits_ = 0;
};

/// Sign of the permutation sorting the concatenation a ++ b; 0 when a and b
/// share an index.
int shuffle_sign(MultiIndex a, MultiIndex b);

/// Basis l-forms of an m-dimensional dual space, per degree, in
/// lexicographic multi-index order.
class ExteriorBasis {
 public:
  explicit ExteriorBasis(std::size_t m);

  std::size_t dim() const { return m_; }
  /// C(m, q); 0 outside 0..m.
  std::size_t size(long q) const;
  MultiIndex at(std::size_t q, std::size_t pos) const { return by_degree_[q][pos]; }
  std::span<const MultiIndex> degree(std::size_t q) const { return by_degree_[q]; }
  /// Position of `mi` inside its degree.
  std::size_t position(MultiIndex mi) const { return position_[mi.bits()]; }

 private:
  std::size_t m_;
  std::vector<std::vector<MultiIndex>> by_degree_;
  std::vector<std::uint32_t> position_;
};

/// Homogeneous exterior form with sparse coefficients.
class Form {
 public:
  explicit Form(std::size_t degree = 0) : degree_(degree) {}

  static Form basis(MultiIndex mi, Rational coeff = 1);
  static Form one(std::size_t index) { return basis(MultiIndex{index}); }
  static Form from_coords(std::size_t degree, std::span<const Rational> coords,
                          const ExteriorBasis& basis);

  std::size_t degree() const { return degree_; }
  const std::map<MultiIndex, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(MultiIndex mi) const;

  void add(MultiIndex mi, const Rational& c);
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const Rational& c);

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Rational& c, Form a) { return a *= c; }

  std::vector<Rational> coords(const ExteriorBasis& basis) const;

  friend bool operator==(const Form& a, const Form& b) = default;
  /// e.g. "e1^e2 - 1/2 e3^e4" with 1-based indices.
  friend std::ostream& operator<<(std::ostream& os, const Form& f);

 private:
  std::size_t degree_;
  std::map<MultiIndex, Rational> terms_;
};

/// Exterior product. Throws DimensionMismatch when deg x + deg y exceeds
/// `ambient_dim`.
Form wedge(const Form& x, const Form& y, std::size_t ambient_dim = kMaxDim);

}  // namespace nilspec
