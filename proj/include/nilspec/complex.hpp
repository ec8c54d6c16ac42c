#pragma once

#include <cstddef>
#include <vector>

#include "nilspec/form.hpp"
#include "nilspec/lie_algebra.hpp"
#include "nilspec/matrix.hpp"
#include "nilspec/subspace.hpp"

namespace nilspec {

/// Chevalley-Eilenberg complex of a nilpotent Lie algebra, written in a dual
/// basis adapted to the annihilator filtration: V_i is spanned by the first
/// dim V_i adapted covectors, so every Lambda^q V_i is a coordinate subspace.
class CochainComplex {
 public:
  std::size_t dim() const { return m_; }
  std::size_t nilpotency_index() const { return k_; }
  const ExteriorBasis& basis() const { return basis_; }

  /// Row a holds adapted covector a in the original dual coordinates.
  const Matrix& basis_change() const { return basis_change_; }
  /// The algebra rewritten in the adapted basis.
  const LieAlgebra& adapted_algebra() const { return adapted_; }
  const Filtration& filtration() const { return filtration_; }

  /// d : Lambda^q -> Lambda^{q+1}, q = 0..m. d(m) has no rows.
  const Matrix& d(std::size_t q) const { return d_[q]; }
  /// Least i with adapted covector j in V_i.
  std::size_t level(std::size_t j) const { return levels_[j]; }
  /// Filtration level of a basis form: the largest level of its covectors.
  /// Constants sit at level 1.
  std::size_t level(MultiIndex mi) const;
  /// dim V_1, the space of closed 1-forms.
  std::size_t closed_one_forms() const { return filtration_.dim_v(1); }

  /// Applies d to a form given in adapted coordinates.
  Form apply_d(const Form& x) const;
  /// Rewrites a form from the original dual coordinates into adapted ones.
  Form to_adapted(const Form& x) const;

  friend CochainComplex build_complex(const LieAlgebra& a, const Filtration& f);

 private:
  CochainComplex(std::size_t m, const LieAlgebra& adapted) : m_(m), basis_(m), adapted_(adapted) {}

  std::size_t m_;
  std::size_t k_ = 0;
  ExteriorBasis basis_;
  Matrix basis_change_;
  LieAlgebra adapted_;
  Filtration filtration_;
  std::vector<std::size_t> levels_;
  std::vector<Matrix> d_;
};

CochainComplex build_complex(const LieAlgebra& a, const Filtration& f);
inline CochainComplex build_complex(const LieAlgebra& a) { return build_complex(a, descending_series(a)); }

/// Derivation-rule differential of a form over the given constants.
Form differential(const StructureConstants& c, const Form& x);

/// Lambda^q V_i in adapted coordinates. q outside 0..m gives the zero space
/// of Q^0; i <= 0 gives 0 and i >= k the whole of Lambda^q.
Subspace lambda_subspace(const CochainComplex& c, long q, long i);

/// (m-1)-forms divisible by the wedge of a basis of V_1.
Subspace divisibility_subspace(const CochainComplex& c);
bool is_divisible_by_v1_top(const CochainComplex& c, const Form& x);

}  // namespace nilspec
