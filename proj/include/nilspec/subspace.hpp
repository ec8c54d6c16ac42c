#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "nilspec/matrix.hpp"

namespace nilspec {

/// Linear subspace of Q^n, stored by its canonical RREF basis. Two subspaces
/// are equal as sets iff their basis matrices are identical.
class Subspace {
 public:
  /// Zero subspace of Q^0.
  Subspace() = default;

  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);
  /// span{e_i : i in coords}, coordinates 0-based.
  static Subspace coordinate(std::size_t ambient_dim,
                             std::span<const std::size_t> coords);
  static Subspace coordinate(std::size_t ambient_dim, std::initializer_list<std::size_t> coords) {
    return coordinate(ambient_dim, std::span<const std::size_t>(coords.begin(), coords.size()));
  }
  /// Span of the rows of `vectors`.
  static Subspace span(const Matrix& vectors);
  static Subspace span(const std::vector<std::vector<Rational>>& vectors,
                       std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  std::span<const std::size_t> pivots() const { return pivots_; }

  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  /// Whether v lies in the subspace.
  bool contains_vector(std::span<const Rational> v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  Subspace(std::size_t ambient, Matrix basis, std::vector<std::size_t> pivots)
      : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// {x : m x = 0} as a subspace of Q^{m.cols()}.
Subspace kernel(const Matrix& m);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);

/// Vectors annihilating every element of `a` under the standard pairing.
Subspace annihilator(const Subspace& a);

/// m(domain); requires m.cols() == domain.ambient_dim().
Subspace image(const Matrix& m, const Subspace& domain);

/// {x in domain : m x in target}.
Subspace preimage(const Matrix& m, const Subspace& target,
                  const Subspace& domain);

/// b is a subset of a.
bool contains(const Subspace& a, const Subspace& b);

}  // namespace nilspec
