// Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
// Exit status is 0 iff every criterion passes.

#include <chrono>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nilspec/catalog.hpp"
#include "nilspec/spectral.hpp"
#include "support.hpp"

using namespace nilspec;

namespace {

struct Subject {
  std::string name;
  LieAlgebra algebra;
};

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  std::size_t failures = 0;

  void fail(const std::string& what) {
    ok = false;
    if (failures++ < 5) detail << (failures > 1 ? "; " : "") << what;
  }
};

int failed_criteria = 0;

void report(int number, const std::string& title, Outcome& o, const std::string& summary) {
  if (!o.ok) ++failed_criteria;
  std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << number << ". " << title << ": " << summary;
  if (!o.ok) std::cout << " | " << o.detail.str() << (o.failures > 5 ? " ..." : "");
  std::cout << std::endl;
}

std::vector<Subject> catalog_subjects(std::size_t max_dim = 6) {
  std::vector<Subject> out;
  for (const CatalogEntry* e : Catalog::builtin().list())
    if (e->dim() <= max_dim) out.push_back({e->id, e->algebra()});
  return out;
}

std::vector<Subject> random_subjects(std::uint64_t seed, std::size_t count, std::size_t max_dim) {
  std::vector<Subject> out;
  std::size_t i = 0;
  for (auto& a : nilspec::testing::random_family(seed, count, 2, max_dim))
    out.push_back({"random#" + std::to_string(i++) + " " + to_salamon(a), std::move(a)});
  return out;
}

Form basis_form(std::initializer_list<std::size_t> one_based) {
  std::uint32_t bits = 0;
  for (std::size_t i : one_based) bits |= 1U << (i - 1);
  return Form::basis(MultiIndex::from_bits(bits));
}

std::string join(const std::vector<long>& v) {
  std::string s;
  for (long x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "{" + s + "}";
}

void golden_tables() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::size_t cells = 0;
  std::size_t suspects = 0;
  const auto& entries = Catalog::builtin().entries();
  for (const CatalogEntry& e : entries) {
    const GoldenReport g = golden_check(e);
    cells += g.cells_compared;
    suspects += g.suspect_mismatches();
    if (!g.ok()) o.fail(e.id + (g.problems.empty() ? " cell mismatch" : ": " + g.problems.front()));
  }
  if (entries.size() != 44) o.fail("catalog holds " + std::to_string(entries.size()) + " entries");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 60) o.fail("took " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << entries.size() << " entries, " << cells << " cells, " << suspects << " logged suspect cells, " << secs << " s";
  report(1, "golden tables", o, s.str());
}

void convergence() {
  Outcome o;
  std::size_t n = 0;
  for (const Subject& s : catalog_subjects()) {
    const CochainComplex c = build_complex(s.algebra);
    const SpectralTable t = full_table(c);
    const std::vector<std::size_t> betti = betti_numbers(c);
    for (std::size_t i = 0; i <= c.dim(); ++i)
      if (t.limit.column_sum(i) != betti[i]) o.fail(s.name + " degree " + std::to_string(i));
    ++n;
  }
  report(2, "limit column sums equal Betti numbers", o, std::to_string(n) + " algebras");
}

std::vector<Subject> structural_set() {
  std::vector<Subject> out = catalog_subjects();
  for (std::size_t m = 3; m <= 9; ++m) out.push_back({"m0(" + std::to_string(m) + ")", m0(m)});
  for (auto& s : random_subjects(20250, 50, 7)) out.push_back(std::move(s));
  return out;
}

void low_high_degrees(const std::vector<Subject>& set) {
  Outcome o;
  std::size_t items = 0;
  for (const Subject& s : set) {
    const CochainComplex c = build_complex(s.algebra);
    const CheckReport r = check_low_high_degrees(full_table(c), c);
    items += r.items.size();
    for (const CheckItem& i : r.items)
      if (!i.passed) o.fail(s.name + ": " + i.name);
  }
  report(3, "vanishing in degrees 0, 1, m-1, m", o,
         std::to_string(set.size()) + " algebras, " + std::to_string(items) + " assertions");
}

void abelian_factor() {
  Outcome o;
  const Catalog& cat = Catalog::builtin();
  const std::vector<std::pair<std::string, LieAlgebra>> bases{
      {"h3", parse_salamon("(0,0,12)")},         {"dim5-1", cat.find("dim5-1").algebra()},
      {"dim5-2", cat.find("dim5-2").algebra()}, {"dim5-3", cat.find("dim5-3").algebra()},
      {"dim5-6", cat.find("dim5-6").algebra()}, {"dim5-8", cat.find("dim5-8").algebra()}};
  std::size_t items = 0;
  for (const auto& [name, h] : bases) {
    const CheckReport r = check_abelian_factor(h, 2, {0, 1, 2, kLimitPage});
    items += r.items.size();
    for (const CheckItem& i : r.items)
      if (!i.passed) o.fail(name + ": " + i.name);
  }
  // R + h3 against every line of the worked example.
  const Grid g = full_table(build_complex(direct_sum(abelian(1), parse_salamon("(0,0,12)")))).limit;
  const std::vector<std::tuple<long, long, std::size_t>> expected{
      {0, 0, 0}, {1, -1, 1}, {1, 0, 3}, {0, 1, 0}, {0, 2, 2}, {1, 1, 2}, {0, 3, 3}, {1, 2, 0}, {0, 4, 1}};
  for (const auto& [p, q, d] : expected)
    if (g.entry(p, q) != d) o.fail("R+h3 e_inf^{" + std::to_string(p) + "," + std::to_string(q) + "}");
  for (long p = 0; p <= 1; ++p)
    for (long q = -4; q < -p; ++q)
      if (g.entry(p, q) != 0) o.fail("R+h3 negative total degree");
  report(4, "abelian summands", o,
         std::to_string(items) + " identities over 6 bases, s = 1..2, r in {0,1,2,inf}; R+h3 worked example");
}

void top_degree_forms(const std::vector<Subject>& set) {
  Outcome o;
  for (const Subject& s : set) {
    const CheckReport r = check_top_degree_forms(build_complex(s.algebra));
    for (const CheckItem& i : r.items)
      if (!i.passed) o.fail(s.name + ": " + i.name);
  }
  report(5, "closed and exact (m-1)-forms", o, std::to_string(set.size()) + " algebras");
}

Form omega(std::size_t s) {
  Form w(2);
  for (std::size_t i = 2; i <= 2 * s - 1; ++i)
    w += Rational(i % 2 ? -1 : 1, 2) * wedge(basis_form({i}), basis_form({2 * s + 1 - i}));
  return w;
}

void filiform_family() {
  Outcome o;
  bool eq_row = true;
  bool witness_even = true;
  bool omega_closed = true;
  std::ostringstream where;
  for (std::size_t m = 4; m <= 10; ++m) {
    const CochainComplex c = build_complex(m0(m));
    const SpectralTable t = full_table(c);
    const long k = static_cast<long>(t.k);
    if (t.limit.entry(0, 2) != (m % 2 ? 2U : 1U)) eq_row = false;
    for (long p = 1; p <= static_cast<long>(m) - 2; ++p)
      if (t.limit.entry(p, 2 - p) != (p % 2 == static_cast<long>(m % 2) ? 0U : 1U)) eq_row = false;
    if (m % 2 == 0) {
      const long r = static_cast<long>(m / 2) - 1;
      if (page_entry(c, 0, 2, r).dim < 2 || limit_entry(c, 0, 2).dim != 1) witness_even = false;
    }
    for (std::size_t s = 2; s <= (m + 1) / 2; ++s) {
      const Form w = omega(s);
      if (!c.apply_d(c.to_adapted(w)).is_zero() || is_exact(c, w)) omega_closed = false;
      const long stated = static_cast<long>(m) - 2 * static_cast<long>(s) - 1;
      std::vector<long> nonzero;
      for (long p = 0; p < k; ++p)
        if (limit_class(c, p, w) == LimitClass::Nonzero) nonzero.push_back(p);
      const bool hit = stated >= 0 && stated < k && limit_class(c, stated, w) == LimitClass::Nonzero;
      if (!hit) o.fail("m=" + std::to_string(m) + " s=" + std::to_string(s) + ": class at p=" + std::to_string(stated) +
                       " is " + (stated < 0 ? "out of range" : "not nonzero") + ", nonzero at p=" + join(nonzero));
    }
  }
  if (!eq_row) o.fail("degree-2 row of the limit");
  if (!witness_even) o.fail("even-m non-degeneration witness");
  if (!omega_closed) o.fail("omega_s closed and non-exact");
  std::ostringstream s;
  s << "m = 4..10; degree-2 limit row " << (eq_row ? "ok" : "wrong") << ", even-m witness "
    << (witness_even ? "ok" : "wrong") << ", omega_s closed/non-exact " << (omega_closed ? "ok" : "wrong")
    << ", omega_s at p = m-2s-1";
  report(6, "filiform family", o, s.str());
}

void census() {
  Outcome o;
  const Census c5 = distinct_table_census(5);
  const Census c6 = distinct_table_census(6);
  if (c5.classes != 8 || c5.distinct_tables != 6) o.fail("dim 5 census");
  if (c6.classes != 33 || c6.distinct_tables != 15) o.fail("dim 6 census");
  std::string witness;
  try {
    const auto [a, b] = betti_vs_table_witness();
    witness = a + "/" + b;
    if (a != "dim6-16" || b != "dim6-17") o.fail("witness " + witness);
  } catch (const std::exception& e) {
    o.fail(e.what());
  }
  std::ostringstream s;
  s << "dim 5 (" << c5.classes << "," << c5.distinct_tables << "), dim 6 (" << c6.classes << ","
    << c6.distinct_tables << "), witness " << witness;
  report(7, "census", o, s.str());
}

void oracle_equivalence() {
  Outcome o;
  std::vector<Subject> set = catalog_subjects(5);
  for (auto& s : random_subjects(20251, 20, 5)) set.push_back(std::move(s));
  for (const Subject& s : set) {
    const CochainComplex c = build_complex(s.algebra);
    const StructureConstants& sc = c.adapted_algebra().constants();
    for (std::size_t q = 0; q <= c.dim(); ++q)
      if (c.d(q) != nilspec::testing::pointwise_differential(sc, q)) o.fail(s.name + " d on " + std::to_string(q) + "-forms");
    // Differential in the original coordinates, via the basis change.
    const ExteriorBasis basis(c.dim());
    for (std::size_t j = 0; j < c.dim(); ++j)
      for (std::size_t q = 1; q < c.dim(); ++q) {
        const Form x = Form::basis(basis.at(q, j % basis.size(static_cast<long>(q))));
        if (c.apply_d(c.to_adapted(x)) != c.to_adapted(differential(s.algebra.constants(), x)))
          o.fail(s.name + " basis change");
      }
    const SpectralTable t = full_table(c, 0);
    if (t.grid(0) != page_zero_closed_form(c)) o.fail(s.name + " page 0");
  }
  report(8, "oracle equivalence", o, std::to_string(set.size()) + " algebras of dimension <= 5");
}

void degeneration_bound(const std::vector<Subject>& set) {
  Outcome o;
  std::map<std::size_t, int> worst;
  for (const Subject& s : set) {
    const CochainComplex c = build_complex(s.algebra);
    const SpectralTable t = full_table(c);
    for (const CheckItem& i : check_degeneration_bound(c, t).items)
      if (!i.passed) o.fail(s.name + ": " + i.name);
    worst[c.dim()] = std::max(worst[c.dim()], t.r0);
  }
  report(9, "degeneration by page k", o, std::to_string(set.size()) + " algebras");
  std::cout << "[INFO] largest r0 by dimension vs ceil(m/2):";
  for (const auto& [m, r0] : worst) std::cout << " m=" << m << ":" << r0 << "/" << (m + 1) / 2;
  std::cout << std::endl;
}

}  // namespace

int main() {
  try {
    golden_tables();
    convergence();
    const std::vector<Subject> set = structural_set();
    low_high_degrees(set);
    abelian_factor();
    top_degree_forms(set);
    filiform_family();
    census();
    oracle_equivalence();
    std::vector<Subject> all = set;
    all.push_back({"m0(10)", m0(10)});
    degeneration_bound(all);
  } catch (const std::exception& e) {
    std::cout << "[FAIL] aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << (failed_criteria ? std::to_string(failed_criteria) + " criteria failed" : "all criteria passed")
            << std::endl;
  return failed_criteria ? 1 : 0;
}
