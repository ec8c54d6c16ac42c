#include "nilspec/subspace.hpp"

#include "nilspec/errors.hpp"

namespace nilspec {

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch("subspaces of Q^" + std::to_string(a.ambient_dim()) +
                            " and Q^" + std::to_string(b.ambient_dim()));
}

}  // namespace

Subspace Subspace::zero(std::size_t ambient_dim) {
  return Subspace(ambient_dim, Matrix(0, ambient_dim), {});
}

Subspace Subspace::full(std::size_t ambient_dim) {
  std::vector<std::size_t> piv(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) piv[i] = i;
  return Subspace(ambient_dim, Matrix::identity(ambient_dim), std::move(piv));
}

Subspace Subspace::coordinate(std::size_t ambient_dim,
                              std::span<const std::size_t> coords) {
  std::vector<bool> on(ambient_dim, false);
  for (std::size_t c : coords) {
    if (c >= ambient_dim) throw DimensionMismatch("coordinate outside ambient space");
    on[c] = true;
  }
  std::vector<std::size_t> piv;
  for (std::size_t i = 0; i < ambient_dim; ++i)
    if (on[i]) piv.push_back(i);
  Matrix b(piv.size(), ambient_dim);
  for (std::size_t r = 0; r < piv.size(); ++r) b(r, piv[r]) = 1;
  return Subspace(ambient_dim, std::move(b), std::move(piv));
}

Subspace Subspace::span(const Matrix& vectors) {
  RrefResult red = rref(vectors);
  Matrix basis = red.reduced.row_block(0, red.rank);
  return Subspace(vectors.cols(), std::move(basis), std::move(red.pivots));
}

Subspace Subspace::span(const std::vector<std::vector<Rational>>& vectors,
                        std::size_t ambient_dim) {
  return span(Matrix::from_rows(vectors, ambient_dim));
}

bool Subspace::contains_vector(std::span<const Rational> v) const {
  if (v.size() != ambient_) throw DimensionMismatch("vector length differs from ambient dimension");
  // Reduce against the RREF basis; v is inside iff the remainder vanishes.
  std::vector<Rational> rem(v.begin(), v.end());
  for (std::size_t i = 0; i < dim(); ++i) {
    const Rational f = rem[pivots_[i]];
    if (f.is_zero()) continue;
    for (std::size_t j = pivots_[i]; j < ambient_; ++j)
      if (!basis_(i, j).is_zero()) rem[j] -= f * basis_(i, j);
  }
  for (const auto& x : rem)
    if (!x.is_zero()) return false;
  return true;
}

Subspace kernel(const Matrix& m) { return Subspace::span(kernel_basis(m)); }

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  if (b.is_zero() || a.is_full()) return a;
  if (a.is_zero() || b.is_full()) return b;
  return Subspace::span(a.basis().stacked(b.basis()));
}

Subspace annihilator(const Subspace& a) {
  if (a.is_zero()) return Subspace::full(a.ambient_dim());
  return kernel(a.basis());
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  return preimage(Matrix::identity(a.ambient_dim()), b, a);
}

Subspace image(const Matrix& m, const Subspace& domain) {
  if (m.cols() != domain.ambient_dim())
    throw DimensionMismatch("map domain differs from subspace ambient");
  if (domain.is_zero()) return Subspace::zero(m.rows());
  // Rows of (m B^T)^T = B m^T are the images of the basis vectors.
  return Subspace::span(domain.basis() * m.transposed());
}

Subspace preimage(const Matrix& m, const Subspace& target,
                  const Subspace& domain) {
  if (m.cols() != domain.ambient_dim() || m.rows() != target.ambient_dim())
    throw DimensionMismatch("preimage operands do not compose");
  if (target.is_full() || domain.is_zero()) return domain;
  // x = y B lies in the preimage iff N m B^T y = 0, where the rows of N span
  // the annihilator of the target.
  const Subspace ann = annihilator(target);
  const Matrix constraint = ann.basis() * (m * domain.basis().transposed());
  const Matrix coeffs = kernel_basis(constraint);
  if (coeffs.rows() == 0) return Subspace::zero(domain.ambient_dim());
  return Subspace::span(coeffs * domain.basis());
}

bool contains(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  if (b.dim() > a.dim()) return false;
  for (std::size_t i = 0; i < b.dim(); ++i)
    if (!a.contains_vector(b.basis().row(i))) return false;
  return true;
}

}  // namespace nilspec
