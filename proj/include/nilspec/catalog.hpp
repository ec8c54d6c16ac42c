#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nilspec/spectral.hpp"

namespace nilspec {

/// Cell of a stored table in layout coordinates (row 0 is p = k-1).
struct GoldenCell {
  int page = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  std::string note;
};

struct Decomposition {
  std::size_t s = 0;  // number of abelian summands
  std::string base_id;
};

struct CatalogEntry {
  std::string id;
  std::string salamon;
  std::string label;
  std::optional<Decomposition> decomposition;
  /// Printed tables, keyed by page.
  std::map<int, Grid> golden_pages;
  /// Page printed as equal to the limit, if marked.
  std::optional<int> limit_page;
  /// Printed cells known to be misprints; mismatches there are reported only.
  std::vector<GoldenCell> suspects;

  std::size_t dim() const;
  LieAlgebra algebra() const;
  bool is_suspect(int page, std::size_t row, std::size_t col) const;
  /// The marked limit page, or the last stored page when unmarked.
  std::optional<int> effective_limit_page() const;
};

/// Golden table file: records of the form
///
///   entry <id>
///   salamon <notation>
///   label <free text>                 (optional)
///   decomposition <s> <base id>       (optional)
///   limit <r>                         (optional)
///   suspect <r> <row> <col> <note>    (optional, repeatable)
///   page <r> <rows> <cols>            (followed by <rows> lines of integers)
///   end
///
/// Blank lines and lines starting with '#' are ignored.
class Catalog {
 public:
  static Catalog parse(std::string_view text);
  /// The tables of all nilpotent Lie algebras of dimension at most 6.
  static const Catalog& builtin();

  std::string format() const;

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  std::vector<const CatalogEntry*> list(std::optional<std::size_t> dim = std::nullopt) const;
  const CatalogEntry& find(std::string_view id) const;

 private:
  std::vector<CatalogEntry> entries_;
};

struct CellMismatch {
  int page = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t printed = 0;
  std::size_t computed = 0;
  bool suspect = false;
};

struct GoldenReport {
  std::string id;
  std::vector<CellMismatch> mismatches;
  std::vector<std::string> problems;  // shape or marker failures
  std::size_t cells_compared = 0;

  /// No problems and no mismatch outside the suspect list.
  bool ok() const;
  std::size_t suspect_mismatches() const;
};

/// Compares every stored grid, and the marked limit, with the engine.
GoldenReport golden_check(const CatalogEntry& e, const SpectralTable& t);
GoldenReport golden_check(const CatalogEntry& e);

struct Census {
  std::size_t classes = 0;
  std::size_t distinct_tables = 0;
};

/// Groups the computed limit tables of one dimension by equality.
Census distinct_table_census(std::size_t dim, const Catalog& cat = Catalog::builtin());

/// All pairs of catalog entries of the same dimension with equal Betti
/// numbers and different limit tables.
std::vector<std::pair<std::string, std::string>> betti_equal_table_different(
    std::size_t dim, const Catalog& cat = Catalog::builtin());

/// The only pair of consecutively numbered dimension-6 entries with equal
/// Betti numbers and different limit tables of the same shape (equal
/// nilpotency index). Throws InternalConsistencyError
/// unless exactly one such pair exists.
std::pair<std::string, std::string> betti_vs_table_witness(const Catalog& cat = Catalog::builtin());

}  // namespace nilspec
