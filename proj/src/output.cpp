#include "nilspec/output.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <sstream>

#include "nilspec/errors.hpp"

namespace nilspec {

Format parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "latex") return Format::Latex;
  throw Error("unknown format '" + std::string(name) + "'");
}

PageSelection PageSelection::parse(std::string_view text) {
  PageSelection sel;
  if (text == "default") return sel;
  if (text == "limit") {
    sel.mode = Mode::LimitOnly;
    return sel;
  }
  if (text == "all") {
    sel.mode = Mode::All;
    return sel;
  }
  sel.mode = Mode::List;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view item = text.substr(start, comma - start);
    int r = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), r);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size() || r < 0)
      throw Error("bad page list '" + std::string(text) + "'");
    sel.pages.push_back(r);
    start = comma + 1;
  }
  std::sort(sel.pages.begin(), sel.pages.end());
  sel.pages.erase(std::unique(sel.pages.begin(), sel.pages.end()), sel.pages.end());
  return sel;
}

OutputTable make_output(const SpectralTable& t, const PageSelection& sel, std::string id, std::string label,
                        std::string salamon) {
  OutputTable out;
  out.id = std::move(id);
  out.label = std::move(label);
  out.salamon = std::move(salamon);
  out.m = t.m;
  out.k = t.k;
  out.r0 = t.r0;
  out.betti = t.betti;
  using Mode = PageSelection::Mode;
  switch (sel.mode) {
    case Mode::UpToDegeneration:
      for (int r = 0; r <= t.r0; ++r) out.pages.emplace(r, t.grid(r));
      out.limit = t.limit;
      break;
    case Mode::LimitOnly:
      out.limit = t.limit;
      break;
    case Mode::All:
      for (const auto& [r, g] : t.pages) out.pages.emplace(r, g);
      out.limit = t.limit;
      break;
    case Mode::List:
      for (int r : sel.pages) out.pages.emplace(r, t.grid(r));
      break;
  }
  return out;
}

namespace {

// Printed blocks: each selected page, with the limit folded into the first
// page equal to it when that page is at or past r0.
struct Block {
  std::string name;
  std::string latex_name;
  const Grid* grid;
};

std::vector<Block> blocks(const OutputTable& t) {
  std::vector<Block> out;
  bool limit_shown = false;
  for (const auto& [r, g] : t.pages) {
    const std::string rs = std::to_string(r);
    if (t.limit && !limit_shown && r >= t.r0 && g == *t.limit) {
      out.push_back({"E_" + rs + " = E_inf", "E_{" + rs + "}=E_\\infty", &g});
      limit_shown = true;
    } else {
      out.push_back({"E_" + rs, "E_{" + rs + "}", &g});
    }
  }
  if (t.limit && !limit_shown) out.push_back({"E_inf", "E_\\infty", &*t.limit});
  return out;
}

std::string heading(const OutputTable& t) {
  std::ostringstream os;
  if (!t.id.empty()) os << t.id << ' ';
  if (!t.label.empty()) os << t.label << ' ';
  if (!t.salamon.empty()) os << t.salamon << ' ';
  os << "m=" << t.m << " k=" << t.k << " r0=" << t.r0;
  return os.str();
}

std::string render_text(const OutputTable& t) {
  std::ostringstream os;
  os << heading(t) << '\n' << "betti:";
  for (std::size_t b : t.betti) os << ' ' << b;
  os << '\n';
  for (const Block& b : blocks(t)) {
    os << '\n' << b.name << '\n';
    const auto rows = b.grid->layout();
    std::size_t width = 1;
    for (const auto& row : rows)
      for (std::size_t v : row) width = std::max(width, std::to_string(v).size());
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << std::setw(static_cast<int>(width)) << row[i];
      os << '\n';
    }
  }
  return os.str();
}

std::string render_csv(const OutputTable& t) {
  std::ostringstream os;
  os << "page,p,q,dim\n";
  auto emit = [&](const std::string& page, const Grid& g) {
    for (std::size_t p = g.rows(); p-- > 0;)
      for (std::size_t n = 0; n < g.cols(); ++n)
        os << page << ',' << p << ',' << static_cast<long>(n) - static_cast<long>(p) << ',' << g.at(p, n) << '\n';
  };
  for (const auto& [r, g] : t.pages) emit(std::to_string(r), g);
  if (t.limit) emit("inf", *t.limit);
  return os.str();
}

std::string render_latex(const OutputTable& t) {
  std::ostringstream os;
  os << "% " << heading(t) << '\n';
  for (const Block& b : blocks(t)) {
    const auto rows = b.grid->layout();
    os << "% " << b.latex_name << '\n' << "\\begin{tabular}{" << std::string(b.grid->cols(), 'c') << "}\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "&" : "") << row[i];
      os << "\\\\\n";
    }
    os << "\\end{tabular}\n";
  }
  return os.str();
}

std::vector<std::vector<std::size_t>> json_rows(const nlohmann::json& j) {
  if (!j.is_array()) throw Error("grid must be an array of rows");
  std::vector<std::vector<std::size_t>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error("grid row must be an array");
    std::vector<std::size_t> r;
    for (const auto& v : row) {
      if (!v.is_number_unsigned()) throw Error("grid cells must be non-negative integers");
      r.push_back(v.get<std::size_t>());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

std::string render(const OutputTable& t, Format f) {
  switch (f) {
    case Format::Text:
      return render_text(t);
    case Format::Json:
      return to_json(t).dump() + "\n";
    case Format::Csv:
      return render_csv(t);
    case Format::Latex:
      return render_latex(t);
  }
  return {};
}

nlohmann::ordered_json to_json(const OutputTable& t) {
  nlohmann::ordered_json j;
  j["id"] = t.id;
  j["salamon"] = t.salamon;
  if (!t.label.empty()) j["label"] = t.label;
  j["m"] = t.m;
  j["k"] = t.k;
  j["r0"] = t.r0;
  j["betti"] = t.betti;
  nlohmann::ordered_json pages = nlohmann::ordered_json::object();
  for (const auto& [r, g] : t.pages) pages[std::to_string(r)] = g.layout();
  j["pages"] = std::move(pages);
  if (t.limit) j["limit"] = t.limit->layout();
  return j;
}

OutputTable output_from_json(const nlohmann::json& j) {
  try {
    OutputTable t;
    t.id = j.at("id").get<std::string>();
    t.salamon = j.at("salamon").get<std::string>();
    t.label = j.value("label", std::string{});
    t.m = j.at("m").get<std::size_t>();
    t.k = j.at("k").get<std::size_t>();
    t.r0 = j.at("r0").get<int>();
    t.betti = j.at("betti").get<std::vector<std::size_t>>();
    for (const auto& [key, grid] : j.at("pages").items()) {
      std::size_t used = 0;
      const int r = std::stoi(key, &used);
      if (used != key.size()) throw Error("bad page key '" + key + "'");
      t.pages.emplace(r, Grid::from_layout(json_rows(grid)));
    }
    if (j.contains("limit")) t.limit = Grid::from_layout(json_rows(j.at("limit")));
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad table JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error("bad page key in table JSON");
  }
}

std::vector<std::pair<std::string, Grid>> parse_latex_tables(std::string_view text) {
  std::vector<std::pair<std::string, Grid>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::string caption;
  std::optional<std::vector<std::vector<std::size_t>>> rows;
  while (std::getline(in, line)) {
    if (line.rfind("% ", 0) == 0) {
      caption = line.substr(2);
    } else if (line.rfind("\\begin{tabular}", 0) == 0) {
      rows.emplace();
    } else if (line == "\\end{tabular}") {
      if (!rows) throw Error("\\end{tabular} without \\begin");
      out.emplace_back(caption, Grid::from_layout(*rows));
      rows.reset();
    } else if (rows) {
      const auto end = line.rfind("\\\\");
      if (end == std::string::npos) throw Error("tabular row without \\\\");
      std::vector<std::size_t> row;
      std::istringstream cells(line.substr(0, end));
      std::string cell;
      while (std::getline(cells, cell, '&')) row.push_back(static_cast<std::size_t>(std::stoul(cell)));
      rows->push_back(std::move(row));
    }
  }
  if (rows) throw Error("unterminated tabular");
  return out;
}

}  // namespace nilspec
