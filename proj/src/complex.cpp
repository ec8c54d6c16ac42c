#include "nilspec/complex.hpp"

#include <algorithm>

#include "nilspec/errors.hpp"

namespace nilspec {

Form differential(const StructureConstants& c, const Form& x) {
  const std::size_t m = c.dim();
  Form out(x.degree() + 1);
  if (x.degree() >= m) return out;
  for (const auto& [mi, coeff] : x.terms()) {
    const auto idx = mi.indices();
    // d(e^{j1} ^ ... ^ e^{jq}) = sum_t (-1)^t e^{j<t} ^ de^{jt} ^ e^{j>t}
    for (std::size_t t = 0; t < idx.size(); ++t) {
      Form de = c.differential(idx[t]);
      if (de.is_zero()) continue;
      MultiIndex before;
      MultiIndex after;
      std::uint32_t bits_before = 0;
      std::uint32_t bits_after = 0;
      for (std::size_t s = 0; s < idx.size(); ++s) {
        if (s < t) bits_before |= 1U << idx[s];
        if (s > t) bits_after |= 1U << idx[s];
      }
      before = MultiIndex::from_bits(bits_before);
      after = MultiIndex::from_bits(bits_after);
      Form term = wedge(wedge(Form::basis(before), de, m), Form::basis(after), m);
      const Rational sign = t % 2 ? Rational(-1) : Rational(1);
      out += (sign * coeff) * term;
    }
  }
  return out;
}

namespace {

// Chooses adapted covectors: a basis of V_1, extended to V_2, ..., to V_k.
// RREF rows of each V_i are tried in order, so an already adapted input keeps
// its coordinate covectors.
void choose_adapted_basis(const Filtration& f, std::size_t m, Matrix& change, std::vector<std::size_t>& levels) {
  std::vector<std::vector<Rational>> rows;
  Subspace current = Subspace::zero(m);
  for (std::size_t i = 1; i <= f.k; ++i) {
    const Subspace& vi = f.spaces[i];
    for (std::size_t r = 0; r < vi.dim(); ++r) {
      const auto row = vi.basis().row(r);
      if (current.contains_vector(row)) continue;
      rows.emplace_back(row.begin(), row.end());
      levels.push_back(i);
      current = Subspace::span(rows, m);
    }
    if (current.dim() != vi.dim()) throw InternalConsistencyError("adapted basis does not span V_i");
  }
  change = Matrix::from_rows(rows, m);
}

StructureConstants rewrite_constants(const StructureConstants& c, const Matrix& change) {
  const std::size_t m = c.dim();
  if (change == Matrix::identity(m)) return c;
  // f^a = sum_j P_aj e^j, hence e^i = sum_b (P^-1)_ib f^b.
  const Matrix inv = inverse(change);
  std::vector<Form> e_in_f;
  for (std::size_t i = 0; i < m; ++i) {
    Form f(1);
    for (std::size_t b = 0; b < m; ++b) f.add(MultiIndex{b}, inv(i, b));
    e_in_f.push_back(std::move(f));
  }
  StructureConstants out(m);
  for (std::size_t a = 0; a < m; ++a) {
    Form dfa(2);
    for (std::size_t j = 0; j < m; ++j) {
      if (change(a, j).is_zero()) continue;
      const Form dej = c.differential(j);
      for (const auto& [mi, coeff] : dej.terms()) {
        const auto idx = mi.indices();
        dfa += (change(a, j) * coeff) * wedge(e_in_f[idx[0]], e_in_f[idx[1]], m);
      }
    }
    for (const auto& [mi, coeff] : dfa.terms()) {
      const auto idx = mi.indices();
      out.add(idx[0], idx[1], a, coeff);
    }
  }
  return out;
}

}  // namespace

CochainComplex build_complex(const LieAlgebra& a, const Filtration& f) {
  const std::size_t m = a.dim();
  Matrix change;
  std::vector<std::size_t> levels;
  choose_adapted_basis(f, m, change, levels);
  if (m == 0) change = Matrix(0, 0);
  LieAlgebra adapted(rewrite_constants(a.constants(), change), a.label());

  CochainComplex c(m, adapted);
  c.k_ = f.k;
  c.basis_change_ = std::move(change);
  c.filtration_ = f;
  c.levels_ = std::move(levels);

  const ExteriorBasis& basis = c.basis_;
  const StructureConstants& sc = c.adapted_.constants();
  for (std::size_t q = 0; q <= m; ++q) {
    Matrix dq(basis.size(static_cast<long>(q) + 1), basis.size(static_cast<long>(q)));
    if (q > 0 && q < m) {
      for (std::size_t col = 0; col < basis.size(static_cast<long>(q)); ++col) {
        const Form image = differential(sc, Form::basis(basis.at(q, col)));
        for (const auto& [mi, coeff] : image.terms()) dq(basis.position(mi), col) = coeff;
      }
    }
    c.d_.push_back(std::move(dq));
  }
  for (std::size_t q = 0; q + 1 < m; ++q)
    if (!(c.d_[q + 1] * c.d_[q]).is_zero())
      throw InternalConsistencyError("d^2 != 0 in degree " + std::to_string(q));
  // Adapted V_i must be the initial coordinate segments.
  for (std::size_t i = 1; i <= f.k; ++i) {
    const std::size_t n = f.dim_v(static_cast<long>(i));
    if (n > 0 && c.levels_[n - 1] > i) throw InternalConsistencyError("adapted levels are not monotone");
    if (n < m && c.levels_[n] <= i) throw InternalConsistencyError("adapted levels are not monotone");
  }
  return c;
}

std::size_t CochainComplex::level(MultiIndex mi) const {
  std::size_t lvl = 1;
  for (std::size_t j : mi.indices()) lvl = std::max(lvl, levels_[j]);
  return lvl;
}

Form CochainComplex::apply_d(const Form& x) const {
  if (x.degree() > m_) throw DimensionMismatch("form degree exceeds dimension");
  const auto v = x.coords(basis_);
  const auto dv = d_[x.degree()] * std::span<const Rational>(v);
  if (x.degree() == m_) return Form(m_ + 1);
  return Form::from_coords(x.degree() + 1, dv, basis_);
}

Form CochainComplex::to_adapted(const Form& x) const {
  if (x.degree() > m_) throw DimensionMismatch("form degree exceeds dimension");
  if (basis_change_ == Matrix::identity(m_)) return x;
  const Matrix inv = inverse(basis_change_);
  Form out(x.degree());
  for (const auto& [mi, coeff] : x.terms()) {
    Form term = Form::basis(MultiIndex{});
    for (std::size_t j : mi.indices()) {
      Form ej(1);
      for (std::size_t b = 0; b < m_; ++b) ej.add(MultiIndex{b}, inv(j, b));
      term = wedge(term, ej, m_);
    }
    out += coeff * term;
  }
  return out;
}

Subspace lambda_subspace(const CochainComplex& c, long q, long i) {
  const std::size_t m = c.dim();
  if (q < 0 || q > static_cast<long>(m)) return Subspace::zero(0);
  const auto uq = static_cast<std::size_t>(q);
  const std::size_t n = c.basis().size(q);
  if (i <= 0) return Subspace::zero(n);
  if (i >= static_cast<long>(c.nilpotency_index())) return Subspace::full(n);
  std::vector<std::size_t> coords;
  for (std::size_t pos = 0; pos < n; ++pos)
    if (static_cast<long>(c.level(c.basis().at(uq, pos))) <= i) coords.push_back(pos);
  return Subspace::coordinate(n, coords);
}

Subspace divisibility_subspace(const CochainComplex& c) {
  const std::size_t m = c.dim();
  if (m == 0) return Subspace::zero(0);
  const std::size_t n0 = c.closed_one_forms();
  const std::uint32_t need = n0 >= 32 ? ~0U : ((1U << n0) - 1U);
  std::vector<std::size_t> coords;
  const std::size_t q = m - 1;
  for (std::size_t pos = 0; pos < c.basis().size(static_cast<long>(q)); ++pos)
    if ((c.basis().at(q, pos).bits() & need) == need) coords.push_back(pos);
  return Subspace::coordinate(c.basis().size(static_cast<long>(q)), coords);
}

bool is_divisible_by_v1_top(const CochainComplex& c, const Form& x) {
  if (c.dim() == 0 || x.degree() != c.dim() - 1)
    throw DimensionMismatch("divisibility test needs a form of degree m-1");
  return divisibility_subspace(c).contains_vector(x.coords(c.basis()));
}

}  // namespace nilspec
