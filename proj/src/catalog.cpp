#include "nilspec/catalog.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "nilspec/errors.hpp"

namespace nilspec {

namespace detail {
std::string_view catalog_text();
}

std::size_t CatalogEntry::dim() const { return parse_salamon_constants(salamon).dim(); }

LieAlgebra CatalogEntry::algebra() const { return parse_salamon(salamon, label.empty() ? id : label); }

bool CatalogEntry::is_suspect(int page, std::size_t row, std::size_t col) const {
  return std::any_of(suspects.begin(), suspects.end(), [&](const GoldenCell& c) {
    return c.page == page && c.row == row && c.col == col;
  });
}

std::optional<int> CatalogEntry::effective_limit_page() const {
  if (limit_page) return limit_page;
  if (golden_pages.empty()) return std::nullopt;
  return golden_pages.rbegin()->first;
}

namespace {

std::string rest_of_line(std::istringstream& in) {
  std::string rest;
  std::getline(in, rest);
  const auto first = rest.find_first_not_of(" \t");
  return first == std::string::npos ? std::string{} : rest.substr(first);
}

}  // namespace

Catalog Catalog::parse(std::string_view text) {
  Catalog cat;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<CatalogEntry> cur;
  auto fail = [&](const std::string& what) -> SyntaxError {
    return SyntaxError("catalog line " + std::to_string(line_no) + ": " + what, line_no);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "entry") {
      if (cur) throw fail("entry without end");
      cur.emplace();
      if (!(ls >> cur->id)) throw fail("missing id");
      continue;
    }
    if (!cur) throw fail("'" + key + "' outside an entry");
    if (key == "salamon") {
      cur->salamon = rest_of_line(ls);
    } else if (key == "label") {
      cur->label = rest_of_line(ls);
    } else if (key == "decomposition") {
      Decomposition d;
      if (!(ls >> d.s >> d.base_id)) throw fail("expected 'decomposition <s> <base id>'");
      cur->decomposition = d;
    } else if (key == "limit") {
      int r = 0;
      if (!(ls >> r)) throw fail("expected 'limit <r>'");
      cur->limit_page = r;
    } else if (key == "suspect") {
      GoldenCell c;
      if (!(ls >> c.page >> c.row >> c.col)) throw fail("expected 'suspect <r> <row> <col> <note>'");
      c.note = rest_of_line(ls);
      cur->suspects.push_back(std::move(c));
    } else if (key == "page") {
      int r = 0;
      std::size_t rows = 0;
      std::size_t cols = 0;
      if (!(ls >> r >> rows >> cols)) throw fail("expected 'page <r> <rows> <cols>'");
      std::vector<std::vector<std::size_t>> grid;
      for (std::size_t i = 0; i < rows; ++i) {
        if (!std::getline(in, line)) throw fail("truncated page");
        ++line_no;
        std::istringstream rs(line);
        std::vector<std::size_t> row;
        std::size_t v = 0;
        while (rs >> v) row.push_back(v);
        if (!rs.eof()) throw fail("non-integer cell");
        if (row.size() != cols) throw fail("row has " + std::to_string(row.size()) + " cells, expected " +
                                            std::to_string(cols));
        grid.push_back(std::move(row));
      }
      if (!cur->golden_pages.emplace(r, Grid::from_layout(grid)).second) throw fail("duplicate page");
    } else if (key == "end") {
      if (cur->salamon.empty()) throw fail("entry without salamon string");
      cat.entries_.push_back(std::move(*cur));
      cur.reset();
    } else {
      throw fail("unknown key '" + key + "'");
    }
  }
  if (cur) throw fail("missing 'end'");
  return cat;
}

const Catalog& Catalog::builtin() {
  static const Catalog cat = parse(detail::catalog_text());
  return cat;
}

std::string Catalog::format() const {
  std::ostringstream os;
  for (const auto& e : entries_) {
    os << "entry " << e.id << '\n' << "salamon " << e.salamon << '\n';
    if (!e.label.empty()) os << "label " << e.label << '\n';
    if (e.decomposition) os << "decomposition " << e.decomposition->s << ' ' << e.decomposition->base_id << '\n';
    if (e.limit_page) os << "limit " << *e.limit_page << '\n';
    for (const auto& s : e.suspects)
      os << "suspect " << s.page << ' ' << s.row << ' ' << s.col << (s.note.empty() ? "" : " ") << s.note << '\n';
    for (const auto& [r, g] : e.golden_pages) {
      os << "page " << r << ' ' << g.rows() << ' ' << g.cols() << '\n';
      for (const auto& row : g.layout()) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
        os << '\n';
      }
    }
    os << "end\n\n";
  }
  return os.str();
}

std::vector<const CatalogEntry*> Catalog::list(std::optional<std::size_t> dim) const {
  std::vector<const CatalogEntry*> out;
  for (const auto& e : entries_)
    if (!dim || e.dim() == *dim) out.push_back(&e);
  return out;
}

const CatalogEntry& Catalog::find(std::string_view id) const {
  for (const auto& e : entries_)
    if (e.id == id) return e;
  throw Error("no catalog entry '" + std::string(id) + "'");
}

bool GoldenReport::ok() const {
  return problems.empty() &&
         std::all_of(mismatches.begin(), mismatches.end(), [](const CellMismatch& m) { return m.suspect; });
}

std::size_t GoldenReport::suspect_mismatches() const {
  return static_cast<std::size_t>(
      std::count_if(mismatches.begin(), mismatches.end(), [](const CellMismatch& m) { return m.suspect; }));
}

GoldenReport golden_check(const CatalogEntry& e, const SpectralTable& t) {
  GoldenReport rep;
  rep.id = e.id;
  auto compare = [&](int page, const Grid& printed, const Grid& computed) {
    if (printed.rows() != computed.rows() || printed.cols() != computed.cols()) {
      rep.problems.push_back("page " + std::to_string(page) + ": printed shape " + std::to_string(printed.rows()) +
                             "x" + std::to_string(printed.cols()) + ", computed " + std::to_string(computed.rows()) +
                             "x" + std::to_string(computed.cols()));
      return;
    }
    const auto a = printed.layout();
    const auto b = computed.layout();
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a[i].size(); ++j) {
        ++rep.cells_compared;
        if (a[i][j] != b[i][j]) rep.mismatches.push_back({page, i, j, a[i][j], b[i][j], e.is_suspect(page, i, j)});
      }
  };
  for (const auto& [r, g] : e.golden_pages) compare(r, g, t.grid(r));
  if (const auto lp = e.effective_limit_page()) {
    const auto it = e.golden_pages.find(*lp);
    if (it == e.golden_pages.end()) {
      rep.problems.push_back("limit marker names a page that is not stored");
    } else {
      compare(kLimitPage, it->second, t.limit);
      if (e.limit_page && t.r0 > *lp)
        rep.problems.push_back("computed r0=" + std::to_string(t.r0) + " exceeds the marked limit page " +
                               std::to_string(*lp));
    }
  }
  return rep;
}

GoldenReport golden_check(const CatalogEntry& e) {
  int max_page = 0;
  for (const auto& [r, g] : e.golden_pages) max_page = std::max(max_page, r);
  const LieAlgebra a = e.algebra();
  return golden_check(e, full_table(build_complex(a), max_page));
}

namespace {

struct Computed {
  const CatalogEntry* entry;
  SpectralTable table;
};

std::vector<Computed> compute_dimension(std::size_t dim, const Catalog& cat) {
  std::vector<Computed> out;
  for (const CatalogEntry* e : cat.list(dim)) out.push_back({e, full_table(build_complex(e->algebra()))});
  return out;
}

}  // namespace

Census distinct_table_census(std::size_t dim, const Catalog& cat) {
  if (dim < 3 || dim > 6) throw Error("census is available for dimensions 3..6");
  const auto all = compute_dimension(dim, cat);
  std::set<std::vector<std::vector<std::size_t>>> distinct;
  for (const auto& c : all) distinct.insert(c.table.limit.layout());
  return Census{all.size(), distinct.size()};
}

std::vector<std::pair<std::string, std::string>> betti_equal_table_different(std::size_t dim, const Catalog& cat) {
  const auto all = compute_dimension(dim, cat);
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (all[i].table.betti == all[j].table.betti && !(all[i].table.limit == all[j].table.limit))
        out.emplace_back(all[i].entry->id, all[j].entry->id);
  return out;
}

namespace {

int item_number(const std::string& id) {
  const auto dash = id.rfind('-');
  if (dash == std::string::npos) return -1;
  try {
    return std::stoi(id.substr(dash + 1));
  } catch (const std::exception&) {
    return -1;
  }
}

}  // namespace

std::pair<std::string, std::string> betti_vs_table_witness(const Catalog& cat) {
  std::vector<std::pair<std::string, std::string>> adjacent;
  for (auto& pr : betti_equal_table_different(6, cat)) {
    const int a = item_number(pr.first);
    if (a < 0 || item_number(pr.second) != a + 1) continue;
    if (cat.find(pr.first).algebra().nilpotency_index() != cat.find(pr.second).algebra().nilpotency_index()) continue;
    adjacent.push_back(std::move(pr));
  }
  if (adjacent.size() != 1)
    throw InternalConsistencyError("expected exactly one consecutive dimension-6 pair with equal Betti numbers and "
                                   "different tables of the same shape, found " +
                                   std::to_string(adjacent.size()));
  return adjacent.front();
}

}  // namespace nilspec
