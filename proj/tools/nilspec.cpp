#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nilspec/catalog.hpp"
#include "nilspec/errors.hpp"
#include "nilspec/output.hpp"

using namespace nilspec;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kParse = 2, kValidation = 3, kInternal = 4 };

struct Input {
  LieAlgebra algebra;
  std::string id;
  std::string salamon;
  const CatalogEntry* entry = nullptr;
};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// A Salamon string, an inline JSON algebra, a catalog id, or a file holding
// either of the first two.
Input resolve(const std::string& raw) {
  std::string text = trim(raw);
  if (text.empty()) throw SyntaxError("empty input", 0);
  if (text.front() != '(' && text.front() != '{') {
    for (const auto& e : Catalog::builtin().entries())
      if (e.id == text) return Input{e.algebra(), e.id, e.salamon, &e};
    std::ifstream in(text);
    if (!in) throw Error("'" + text + "' is neither an algebra, a catalog id nor a readable file");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = trim(ss.str());
  }
  if (!text.empty() && text.front() == '{') {
    LieAlgebra a = algebra_from_json(text);
    return Input{a, a.label(), to_salamon(a), nullptr};
  }
  LieAlgebra a = parse_salamon(text);
  return Input{a, {}, text, nullptr};
}

int exit_code_of(const std::exception_ptr& ep, std::string& message) {
  try {
    std::rethrow_exception(ep);
  } catch (const ParseError& e) {
    message = std::string("parse error: ") + e.what();
    return kParse;
  } catch (const ValidationError& e) {
    message = std::string("invalid algebra: ") + e.what();
    return kValidation;
  } catch (const InternalConsistencyError& e) {
    message = std::string("internal error: ") + e.what();
    return kInternal;
  } catch (const std::exception& e) {
    message = std::string("error: ") + e.what();
    return kUsage;
  }
}

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (...) {
    std::string message;
    const int code = exit_code_of(std::current_exception(), message);
    std::cerr << "nilspec: " << message << '\n';
    return code;
  }
}

std::string compute_one(const Input& in, const PageSelection& sel, Format fmt) {
  const CochainComplex c = build_complex(in.algebra);
  int max_page = 0;
  if (sel.mode == PageSelection::Mode::List && !sel.pages.empty()) max_page = sel.pages.back();
  const SpectralTable t = full_table(c, max_page);
  const std::string label = in.entry ? in.entry->label : in.algebra.label();
  return render(make_output(t, sel, in.id, label, in.salamon), fmt);
}

CheckReport standard_checks(const CochainComplex& c, const SpectralTable& t, bool theorems, bool lemma) {
  CheckReport rep;
  if (theorems) {
    rep.merge(check_low_high_degrees(t, c), "low/high degrees: ");
    rep.merge(check_convergence(t), "convergence: ");
    rep.merge(check_degeneration_bound(c, t), "degeneration: ");
  }
  if (lemma) rep.merge(check_top_degree_forms(c), "top-degree forms: ");
  return rep;
}

void print_report(const CheckReport& rep, Format fmt, std::ostream& os) {
  if (fmt == Format::Json) {
    nlohmann::ordered_json j;
    j["subject"] = rep.subject;
    j["ok"] = rep.ok();
    j["items"] = nlohmann::ordered_json::array();
    for (const auto& i : rep.items) j["items"].push_back({{"name", i.name}, {"passed", i.passed}, {"detail", i.detail}});
    os << j.dump(2) << '\n';
    return;
  }
  for (const auto& i : rep.items)
    os << (i.passed ? "PASS " : "FAIL ") << i.name << (i.detail.empty() ? "" : ": ") << i.detail << '\n';
  std::size_t failed = static_cast<std::size_t>(
      std::count_if(rep.items.begin(), rep.items.end(), [](const CheckItem& i) { return !i.passed; }));
  os << rep.subject << ": " << rep.items.size() - failed << '/' << rep.items.size() << " checks passed\n";
}

std::size_t worker_count(std::size_t jobs) {
  std::size_t n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NILSPEC_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

int run_batch(const std::string& source, const PageSelection& sel, Format fmt) {
  std::vector<std::string> lines;
  {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (source != "-") {
      file.open(source);
      if (!file) throw Error("cannot read '" + source + "'");
      in = &file;
    }
    std::string line;
    while (std::getline(*in, line)) lines.push_back(line);
  }
  struct Result {
    bool skip = false;
    int code = kOk;
    std::string out;
    std::string err;
  };
  std::vector<Result> results(lines.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < lines.size();) {
      const std::string text = trim(lines[i]);
      Result& r = results[i];
      if (text.empty() || text.front() == '#') {
        r.skip = true;
        continue;
      }
      try {
        r.out = compute_one(resolve(text), sel, fmt);
      } catch (...) {
        r.code = exit_code_of(std::current_exception(), r.err);
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t workers = worker_count(lines.size());
  for (std::size_t w = 0; w + 1 < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  int worst = kOk;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Result& r = results[i];
    if (r.skip) continue;
    worst = std::max(worst, r.code);
    if (r.code == kOk) {
      if (fmt == Format::Text && i > 0) std::cout << '\n';
      std::cout << r.out;
    } else if (fmt == Format::Json) {
      nlohmann::ordered_json j{{"line", i + 1}, {"input", trim(lines[i])}, {"error", r.err}, {"exit", r.code}};
      std::cout << j.dump() << '\n';
    } else {
      std::cerr << "nilspec: line " << i + 1 << ": " << r.err << '\n';
    }
  }
  return worst;
}

int run_catalog(std::optional<std::size_t> dim, bool check, std::optional<std::size_t> census, bool witness) {
  const Catalog& cat = Catalog::builtin();
  if (census) {
    const Census c = distinct_table_census(*census, cat);
    std::cout << c.classes << " classes, " << c.distinct_tables << " distinct tables\n";
    return kOk;
  }
  if (witness) {
    const auto [a, b] = betti_vs_table_witness(cat);
    std::cout << a << ' ' << b << '\n';
    return kOk;
  }
  const auto entries = cat.list(dim);
  if (!check) {
    for (const CatalogEntry* e : entries)
      std::cout << e->id << "  " << e->salamon << (e->label.empty() ? "" : "  ") << e->label << '\n';
    return kOk;
  }
  std::size_t failed = 0;
  for (const CatalogEntry* e : entries) {
    int max_page = 0;
    for (const auto& [r, g] : e->golden_pages) max_page = std::max(max_page, r);
    const CochainComplex c = build_complex(e->algebra());
    const SpectralTable t = full_table(c, max_page);
    const GoldenReport g = golden_check(*e, t);
    CheckReport rep = standard_checks(c, t, true, true);
    if (e->decomposition) {
      std::vector<int> pages;
      for (const auto& [r, grid] : e->golden_pages) pages.push_back(r);
      pages.push_back(kLimitPage);
      rep.merge(check_abelian_factor(cat.find(e->decomposition->base_id).algebra(), e->decomposition->s, pages),
                "abelian factor: ");
    }
    const bool ok = g.ok() && rep.ok();
    if (!ok) ++failed;
    std::cout << (ok ? "PASS " : "FAIL ") << e->id << ": " << g.cells_compared << " cells";
    if (g.suspect_mismatches()) std::cout << ", " << g.suspect_mismatches() << " suspect";
    std::cout << ", " << rep.items.size() << " checks\n";
    for (const auto& mm : g.mismatches)
      std::cout << "  " << (mm.suspect ? "suspect" : "MISMATCH") << " page "
                << (mm.page == kLimitPage ? std::string("inf") : std::to_string(mm.page)) << " row " << mm.row
                << " col " << mm.col << ": printed " << mm.printed << ", computed " << mm.computed << '\n';
    for (const auto& p : g.problems) std::cout << "  " << p << '\n';
    for (const auto& i : rep.items)
      if (!i.passed) std::cout << "  FAIL " << i.name << ": " << i.detail << '\n';
  }
  std::cout << entries.size() - failed << '/' << entries.size() << " entries pass\n";
  return failed ? kInternal : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral sequence of the annihilator filtration of nilpotent Lie algebras"};
  app.require_subcommand(1);

  std::string format_name = "text";
  std::string pages_name = "default";

  auto* compute = app.add_subcommand("compute", "Print the pages of one algebra");
  std::string compute_input;
  std::optional<std::size_t> m0_dim;
  compute->add_option("input", compute_input, "Salamon string, JSON algebra, catalog id or file");
  compute->add_option("--m0", m0_dim, "Use the filiform algebra m0(N)")->check(CLI::Range(3, 16));
  compute->add_option("--format", format_name, "text, json, csv or latex");
  compute->add_option("--pages", pages_name, "default, limit, all or a list such as 0,1,3");

  auto* catalog = app.add_subcommand("catalog", "List or check the built-in tables");
  std::optional<std::size_t> dim;
  std::optional<std::size_t> census;
  bool check_flag = false;
  bool witness = false;
  catalog->add_option("--dim", dim, "Only algebras of this dimension");
  catalog->add_flag("--check", check_flag, "Compare with the stored tables and run all checks");
  catalog->add_option("--census", census, "Count distinct limit tables in a dimension");
  catalog->add_flag("--witness", witness, "Pair with equal Betti numbers and different tables");

  auto* check = app.add_subcommand("check", "Run structural checks on one algebra");
  std::string check_input;
  bool theorems = false;
  bool lemma = false;
  std::optional<std::size_t> direct_sum_s;
  std::string check_format = "text";
  check->add_option("input", check_input, "Salamon string, JSON algebra, catalog id or file")->required();
  check->add_flag("--theorems", theorems, "Low/high degree vanishing, convergence and degeneration bound");
  check->add_flag("--lemma", lemma, "Closed and exact forms of degree m-1");
  check->add_option("--direct-sum", direct_sum_s, "Compare R^j + h with R^(j-1) + h for j = 1..s");
  check->add_option("--format", check_format, "text or json");

  auto* batch = app.add_subcommand("batch", "Compute one algebra per input line");
  std::string batch_source;
  batch->add_option("file", batch_source, "Input file, or - for standard input")->required();
  batch->add_option("--format", format_name, "text, json, csv or latex");
  batch->add_option("--pages", pages_name, "default, limit, all or a list such as 0,1,3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*compute) {
    return guarded([&] {
      const Format fmt = parse_format(format_name);
      const PageSelection sel = PageSelection::parse(pages_name);
      if (m0_dim && !compute_input.empty()) throw Error("give either an input or --m0, not both");
      if (!m0_dim && compute_input.empty()) throw Error("missing input");
      const Input in = m0_dim ? Input{m0(*m0_dim), "m0(" + std::to_string(*m0_dim) + ")", {}, nullptr}
                              : resolve(compute_input);
      Input named = in;
      if (m0_dim) named.salamon = to_salamon(in.algebra);
      std::cout << compute_one(named, sel, fmt);
      return static_cast<int>(kOk);
    });
  }
  if (*catalog) return guarded([&] { return run_catalog(dim, check_flag, census, witness); });
  if (*check) {
    return guarded([&] {
      const Format fmt = parse_format(check_format);
      if (fmt != Format::Text && fmt != Format::Json) throw Error("check output is text or json");
      const Input in = resolve(check_input);
      const bool all = !theorems && !lemma && !direct_sum_s;
      const CochainComplex c = build_complex(in.algebra);
      const SpectralTable t = full_table(c);
      CheckReport rep = standard_checks(c, t, theorems || all, lemma || all);
      if (direct_sum_s) rep.merge(check_abelian_factor(in.algebra, *direct_sum_s, {0, 1, 2, kLimitPage}), "abelian factor: ");
      rep.subject = in.id.empty() ? in.salamon : in.id;
      print_report(rep, fmt, std::cout);
      return static_cast<int>(rep.ok() ? kOk : kInternal);
    });
  }
  if (*batch) {
    return guarded([&] { return run_batch(batch_source, PageSelection::parse(pages_name), parse_format(format_name)); });
  }
  return kUsage;
}
