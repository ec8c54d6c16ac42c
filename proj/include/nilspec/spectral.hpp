#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilspec/complex.hpp"

namespace nilspec {

/// Page index standing for the limit term E_infinity.
inline constexpr int kLimitPage = std::numeric_limits<int>::max();

struct PageEntry {
  int r = 0;  // kLimitPage for the limit
  long p = 0;
  long q = 0;
  std::size_t dim = 0;
  std::size_t numerator_dim = 0;
  std::size_t denominator_dim = 0;
};

/// Dimensions e^{p,q} for 0 <= p < k and total degree n = p+q in 0..m,
/// indexed as (p, n).
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t k, std::size_t m) : k_(k), m_(m), cells_(k * (m + 1)) {}

  std::size_t rows() const { return k_; }
  std::size_t cols() const { return m_ + 1; }
  std::size_t& at(std::size_t p, std::size_t n) { return cells_[p * (m_ + 1) + n]; }
  std::size_t at(std::size_t p, std::size_t n) const { return cells_[p * (m_ + 1) + n]; }
  /// e^{p,q} with zero outside the band.
  std::size_t entry(long p, long q) const;

  /// Rows in table order: p = k-1 first, p = 0 last.
  std::vector<std::vector<std::size_t>> layout() const;
  static Grid from_layout(const std::vector<std::vector<std::size_t>>& rows);

  /// Sum over p of e^{p, n-p}.
  std::size_t column_sum(std::size_t n) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t k_ = 0;
  std::size_t m_ = 0;
  std::vector<std::size_t> cells_;
};

/// A_r^{p,q} = {x in Lambda^{p+q} V_{k-p} : dx in Lambda^{p+q+1} V_{k-p-r}}.
Subspace a_space(const CochainComplex& c, long p, long q, long r);

/// E_r^{p,q} = A_r^{p,q} / (d A_{r-1}^{p-r+1,q+r-2} + A_{r-1}^{p+1,q-1}).
/// Throws InternalConsistencyError if the denominator escapes the numerator.
PageEntry page_entry(const CochainComplex& c, long p, long q, long r);

/// E_inf^{p,q} = Z / (d{x : dx in Lambda^{p+q} V_{k-p}} + closed forms in
/// Lambda^{p+q} V_{k-p-1}), Z the closed forms in Lambda^{p+q} V_{k-p}.
PageEntry limit_entry(const CochainComplex& c, long p, long q);

enum class LimitClass { NotInNumerator, Zero, Nonzero };

/// Class of x (original coordinates) in the quotient defining E_inf^{p,q},
/// q = deg x - p.
LimitClass limit_class(const CochainComplex& c, long p, const Form& x);

/// Whether x (original coordinates) is d of some form.
bool is_exact(const CochainComplex& c, const Form& x);

/// beta_i = dim ker d_i - rank d_{i-1}.
std::vector<std::size_t> betti_numbers(const CochainComplex& c);

/// Closed-form page zero: C(dim V_{k-p}, n) - C(dim V_{k-p-1}, n).
Grid page_zero_closed_form(const CochainComplex& c);

struct SpectralTable {
  std::size_t m = 0;
  std::size_t k = 0;
  std::map<int, Grid> pages;
  Grid limit;
  std::vector<std::size_t> betti;
  /// Least r with page r equal to the limit.
  int r0 = 0;
  /// Audit trail: (r, p, n) -> entry, limit under kLimitPage.
  std::map<std::tuple<int, std::size_t, std::size_t>, PageEntry> audit;

  /// Page r; the limit for kLimitPage or any r past the stored pages
  /// (pages are constant from r0 on).
  const Grid& grid(int r) const;
};

/// Pages 0..max(max_page, r0) plus the limit.
SpectralTable full_table(const CochainComplex& c, std::optional<int> max_page = std::nullopt);

/// One assertion made by a checker.
struct CheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::string subject;
  std::vector<CheckItem> items;

  bool ok() const;
  void add(std::string name, bool passed, std::string detail = {});
  void merge(const CheckReport& other, const std::string& prefix = {});
};

/// Vanishing of the limit in total degrees 0, 1, m-1 and m, except for one
/// slot each.
CheckReport check_low_high_degrees(const SpectralTable& t, const CochainComplex& c);

/// Every (m-1)-form is closed, and exact iff divisible by the top wedge of V_1.
CheckReport check_top_degree_forms(const CochainComplex& c);

/// For h non-abelian and each j = 1..s, compares the tables of R^j + h and
/// R^{j-1} + h at the given pages, and checks r0(R^s + h) = r0(h).
CheckReport check_abelian_factor(const LieAlgebra& h, std::size_t s, const std::vector<int>& pages);

/// Same comparison on precomputed tables: `big` (with complex `big_c`) belongs
/// to R + (algebra of `small`).
CheckReport compare_abelian_extension(const CochainComplex& big_c, const SpectralTable& big,
                                      const SpectralTable& small, const std::vector<int>& pages);

/// Grids at r = k, k+1, k+2 equal the limit.
CheckReport check_degeneration_bound(const CochainComplex& c, const SpectralTable& t);

/// Convergence to cohomology and Poincare duality of the column sums.
CheckReport check_convergence(const SpectralTable& t);

}  // namespace nilspec
