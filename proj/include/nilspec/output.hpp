#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nilspec/spectral.hpp"

namespace nilspec {

enum class Format { Text, Json, Csv, Latex };

/// "text", "json", "csv" or "latex"; throws Error otherwise.
Format parse_format(std::string_view name);

/// Which pages a table carries.
struct PageSelection {
  enum class Mode { UpToDegeneration, LimitOnly, All, List };
  Mode mode = Mode::UpToDegeneration;
  std::vector<int> pages;  // for Mode::List

  /// "default", "limit", "all" or a comma list such as "0,1,3".
  static PageSelection parse(std::string_view text);
};

struct OutputTable {
  std::string id;
  std::string label;
  std::string salamon;
  std::size_t m = 0;
  std::size_t k = 0;
  int r0 = 0;
  std::vector<std::size_t> betti;
  std::map<int, Grid> pages;
  std::optional<Grid> limit;

  friend bool operator==(const OutputTable&, const OutputTable&) = default;
};

/// Picks the selected pages out of `t`; pages past the stored ones equal the
/// limit and are filled from it.
OutputTable make_output(const SpectralTable& t, const PageSelection& sel, std::string id = {},
                        std::string label = {}, std::string salamon = {});

std::string render(const OutputTable& t, Format f);

nlohmann::ordered_json to_json(const OutputTable& t);
/// Inverse of to_json; throws Error on schema violations.
OutputTable output_from_json(const nlohmann::json& j);

/// Grids of each tabular block in LaTeX text produced by render, with the
/// caption ("E_{0}", "E_{2}=E_\infty", ...) of each.
std::vector<std::pair<std::string, Grid>> parse_latex_tables(std::string_view text);

}  // namespace nilspec
