#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "nilspec/form.hpp"
#include "nilspec/rational.hpp"
#include "nilspec/subspace.hpp"

namespace nilspec {

/// Raw structure constants c_{ij}^k, 0-based, stored for i < j only. The
/// bracket is [e_i, e_j] = sum_k c_{ij}^k e_k and, dually,
/// de^k = sum_{i<j} c_{ij}^k e^i ^ e^j.
class StructureConstants {
 public:
  using Key = std::tuple<std::size_t, std::size_t, std::size_t>;

  StructureConstants() = default;
  explicit StructureConstants(std::size_t dim);

  std::size_t dim() const { return dim_; }

  /// Accumulates c into c_{ij}^k; i > j is stored as -c at (j, i).
  void add(std::size_t i, std::size_t j, std::size_t k, const Rational& c);
  Rational coefficient(std::size_t i, std::size_t j, std::size_t k) const;
  const std::map<Key, Rational>& entries() const { return entries_; }

  /// de^k as a 2-form.
  Form differential(std::size_t k) const;
  /// [u, v] for coordinate vectors u, v.
  std::vector<Rational> bracket(std::span<const Rational> u, std::span<const Rational> v) const;

  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

 private:
  std::size_t dim_ = 0;
  std::map<Key, Rational> entries_;
};

struct ValidationReport {
  bool jacobi_ok = false;
  bool nilpotent_ok = false;
  /// Least k with n^k = 0, when nilpotent.
  std::optional<std::size_t> nilpotency_index;
  /// dim n^0, dim n^1, ... until the series stabilizes.
  std::vector<std::size_t> series_dims;

  bool ok() const { return jacobi_ok && nilpotent_ok; }
};

/// Checks d^2 = 0 on 1-forms (the Jacobi identity) and nilpotency.
ValidationReport validate(const StructureConstants& c);

/// A nilpotent Lie algebra. Construction validates; instances are immutable.
class LieAlgebra {
 public:
  /// Throws JacobiError or NotNilpotentError.
  explicit LieAlgebra(StructureConstants c, std::string label = {});

  std::size_t dim() const { return c_.dim(); }
  const StructureConstants& constants() const { return c_; }
  const std::string& label() const { return label_; }
  std::size_t nilpotency_index() const { return k_; }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.c_ == b.c_;
  }

 private:
  StructureConstants c_;
  std::string label_;
  std::size_t k_ = 0;
};

inline ValidationReport validate(const LieAlgebra& a) { return validate(a.constants()); }

/// Annihilator filtration V_0 = 0 < V_1 < ... < V_k = n* in the original dual
/// coordinates, together with the lower central series it is dual to.
struct Filtration {
  std::size_t k = 0;
  std::vector<Subspace> spaces;       // V_0 .. V_k
  std::vector<Subspace> series;       // n^0 .. n^k
  std::vector<std::size_t> series_dims;

  /// dim V_i with V_i = 0 for i < 0 and V_i = n* for i >= k.
  std::size_t dim_v(long i) const;
};

/// V_i = {x : dx in Lambda^2 V_{i-1}}, cross-checked against the annihilator
/// of the bracket-iterated series.
Filtration descending_series(const LieAlgebra& a);

/// Matrix of d : n* -> Lambda^2 n* in the lexicographic basis.
Matrix one_form_differential(const StructureConstants& c, const ExteriorBasis& basis);

/// Lambda^2 W as a subspace of Lambda^2 Q^m.
Subspace second_power(const Subspace& w, const ExteriorBasis& basis);

/// Salamon notation, e.g. "(0,0,12,13,23,14+25)". Entry j lists de^j.
/// Terms are "[sign][coef[*]]pair"; pairs are two digits, or "a.b" (required
/// when m >= 10). A reversed pair "52" means -e^2^e^5.
StructureConstants parse_salamon_constants(std::string_view text);
/// parse_salamon_constants followed by validation.
LieAlgebra parse_salamon(std::string_view text, std::string label = {});
/// Canonical Salamon string: pairs ascending, unit coefficients implicit.
std::string to_salamon(const StructureConstants& c);
inline std::string to_salamon(const LieAlgebra& a) { return to_salamon(a.constants()); }

/// {"dim": m, "brackets": [{"i":1,"j":2,"k":3,"c":"1"}, ...], "label": "..."}
std::string to_json(const LieAlgebra& a);
LieAlgebra algebra_from_json(std::string_view text);

LieAlgebra abelian(std::size_t m);
/// Block-diagonal sum; the basis of `a` comes first.
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);
/// The filiform algebra with de^i = e^1 ^ e^{i-1}, i = 3..m.
LieAlgebra m0(std::size_t m);

}  // namespace nilspec
