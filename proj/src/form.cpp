#include "nilspec/form.hpp"

#include <algorithm>
#include <bit>

#include "nilspec/errors.hpp"

namespace nilspec {

MultiIndex::MultiIndex(std::initializer_list<std::size_t> indices) {
  std::size_t prev = 0;
  bool first = true;
  for (std::size_t i : indices) {
    if (i >= kMaxDim) throw DimensionMismatch("multi-index entry out of range");
    if (!first && i <= prev) throw Error("multi-index must be strictly increasing");
    bits_ |= 1U << i;
    prev = i;
    first = false;
  }
}

std::size_t MultiIndex::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<std::size_t> MultiIndex::indices() const {
  std::vector<std::size_t> out;
  for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

std::strong_ordering operator<=>(MultiIndex a, MultiIndex b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  // Lexicographic on sorted lists: the lowest differing index decides, and
  // the side holding it comes first.
  const std::uint32_t diff = a.bits_ ^ b.bits_;
  if (diff == 0) return std::strong_ordering::equal;
  const std::uint32_t low = diff & (~diff + 1);
  return (a.bits_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
}

int shuffle_sign(MultiIndex a, MultiIndex b) {
  if (a.overlaps(b)) return 0;
  // Count pairs (i in a, j in b) with i > j.
  std::size_t inversions = 0;
  for (std::size_t j : b.indices())
    inversions += static_cast<std::size_t>(std::popcount(a.bits() >> (j + 1)));
  return inversions % 2 ? -1 : 1;
}

ExteriorBasis::ExteriorBasis(std::size_t m) : m_(m), by_degree_(m + 1), position_(std::size_t{1} << m) {
  if (m > kMaxDim) throw DimensionMismatch("dimension exceeds " + std::to_string(kMaxDim));
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << m); ++bits)
    by_degree_[static_cast<std::size_t>(std::popcount(bits))].push_back(MultiIndex::from_bits(bits));
  for (auto& deg : by_degree_) {
    std::sort(deg.begin(), deg.end());
    for (std::size_t i = 0; i < deg.size(); ++i) position_[deg[i].bits()] = static_cast<std::uint32_t>(i);
  }
}

std::size_t ExteriorBasis::size(long q) const {
  if (q < 0 || q > static_cast<long>(m_)) return 0;
  return by_degree_[static_cast<std::size_t>(q)].size();
}

Form Form::basis(MultiIndex mi, Rational coeff) {
  Form f(mi.size());
  f.add(mi, coeff);
  return f;
}

Form Form::from_coords(std::size_t degree, std::span<const Rational> coords,
                       const ExteriorBasis& basis) {
  if (coords.size() != basis.size(static_cast<long>(degree)))
    throw DimensionMismatch("coordinate vector length differs from C(m,q)");
  Form f(degree);
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero()) f.terms_.emplace(basis.at(degree, i), coords[i]);
  return f;
}

Rational Form::coefficient(MultiIndex mi) const {
  const auto it = terms_.find(mi);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Form::add(MultiIndex mi, const Rational& c) {
  if (mi.size() != degree_) throw DimensionMismatch("term degree differs from form degree");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(mi, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Form& Form::operator+=(const Form& o) {
  if (o.degree_ != degree_ && !o.is_zero()) throw DimensionMismatch("adding forms of different degree");
  for (const auto& [mi, c] : o.terms_) add(mi, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  if (o.degree_ != degree_ && !o.is_zero()) throw DimensionMismatch("subtracting forms of different degree");
  for (const auto& [mi, c] : o.terms_) add(mi, -c);
  return *this;
}

Form& Form::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [mi, v] : terms_) v *= c;
  return *this;
}

std::vector<Rational> Form::coords(const ExteriorBasis& basis) const {
  std::vector<Rational> out(basis.size(static_cast<long>(degree_)));
  for (const auto& [mi, c] : terms_) {
    if (mi.bits() >> basis.dim()) throw DimensionMismatch("form uses covectors beyond the basis");
    out[basis.position(mi)] = c;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Form& f) {
  if (f.is_zero()) return os << "0";
  bool first = true;
  for (const auto& [mi, c] : f.terms()) {
    Rational mag = c.sign() < 0 ? -c : c;
    if (first)
      os << (c.sign() < 0 ? "-" : "");
    else
      os << (c.sign() < 0 ? " - " : " + ");
    first = false;
    const bool unit = mag == Rational(1);
    if (!unit || mi.size() == 0) os << mag;
    if (!unit && mi.size() > 0) os << ' ';
    bool first_idx = true;
    for (std::size_t i : mi.indices()) {
      os << (first_idx ? "" : "^") << 'e' << i + 1;
      first_idx = false;
    }
  }
  return os;
}

Form wedge(const Form& x, const Form& y, std::size_t ambient_dim) {
  if (x.degree() + y.degree() > ambient_dim)
    throw DimensionMismatch("wedge degree " + std::to_string(x.degree() + y.degree()) +
                            " exceeds dimension " + std::to_string(ambient_dim));
  Form out(x.degree() + y.degree());
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      const int s = shuffle_sign(a, b);
      if (s == 0) continue;
      const Rational c = ca * cb;
      out.add(MultiIndex::from_bits(a.bits() | b.bits()), s > 0 ? c : -c);
    }
  return out;
}

}  // namespace nilspec
