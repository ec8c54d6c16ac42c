#include "nilspec/spectral.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "nilspec/errors.hpp"

namespace nilspec {

std::size_t Grid::entry(long p, long q) const {
  const long n = p + q;
  if (p < 0 || p >= static_cast<long>(k_) || n < 0 || n > static_cast<long>(m_)) return 0;
  return at(static_cast<std::size_t>(p), static_cast<std::size_t>(n));
}

std::vector<std::vector<std::size_t>> Grid::layout() const {
  std::vector<std::vector<std::size_t>> rows;
  for (std::size_t i = 0; i < k_; ++i) {
    const std::size_t p = k_ - 1 - i;
    rows.emplace_back(cells_.begin() + static_cast<std::ptrdiff_t>(p * (m_ + 1)),
                      cells_.begin() + static_cast<std::ptrdiff_t>((p + 1) * (m_ + 1)));
  }
  return rows;
}

Grid Grid::from_layout(const std::vector<std::vector<std::size_t>>& rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  if (cols == 0) throw DimensionMismatch("grid with no columns");
  Grid g(rows.size(), cols - 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("ragged grid");
    for (std::size_t n = 0; n < cols; ++n) g.at(rows.size() - 1 - i, n) = rows[i][n];
  }
  return g;
}

std::size_t Grid::column_sum(std::size_t n) const {
  std::size_t s = 0;
  for (std::size_t p = 0; p < k_; ++p) s += at(p, n);
  return s;
}

namespace {

// Memoizes A-spaces and their images. A_r^{p,q} depends only on the total
// degree and the clamped filtration levels of its domain and target, so a
// whole table needs at most (m+1)(k+1)^2 distinct spaces.
class Engine {
 public:
  explicit Engine(const CochainComplex& c) : c_(c), k_(static_cast<long>(c.nilpotency_index())) {}

  long clamp(long level) const { return std::clamp(level, 0L, k_); }

  // {x in Lambda^n V_dom : dx in Lambda^{n+1} V_tgt}
  const Subspace& a(long n, long dom, long tgt) {
    const auto key = std::make_tuple(n, clamp(dom), clamp(tgt));
    if (auto it = a_cache_.find(key); it != a_cache_.end()) return it->second;
    Subspace s;
    if (n < 0 || n > static_cast<long>(c_.dim())) {
      s = Subspace::zero(0);
    } else {
      const Subspace domain = lambda_subspace(c_, n, std::get<1>(key));
      const Subspace target = lambda_subspace(c_, n + 1, std::get<2>(key));
      s = preimage(c_.d(static_cast<std::size_t>(n)), target, domain);
    }
    return a_cache_.emplace(key, std::move(s)).first->second;
  }

  // d(A(n, dom, tgt)) inside Lambda^{n+1}.
  const Subspace& d_of_a(long n, long dom, long tgt) {
    const auto key = std::make_tuple(n, clamp(dom), clamp(tgt));
    if (auto it = image_cache_.find(key); it != image_cache_.end()) return it->second;
    Subspace s;
    if (n < 0) {
      s = Subspace::zero(c_.basis().size(n + 1));
    } else if (n >= static_cast<long>(c_.dim())) {
      s = Subspace::zero(0);
    } else {
      s = image(c_.d(static_cast<std::size_t>(n)), a(n, dom, tgt));
    }
    return image_cache_.emplace(key, std::move(s)).first->second;
  }

  PageEntry quotient(int r, long p, long q, const Subspace& num, const Subspace& den) const {
    if (!contains(num, den)) {
      std::ostringstream os;
      os << "denominator not contained in numerator at r=" << (r == kLimitPage ? std::string("inf") : std::to_string(r))
         << " p=" << p << " q=" << q;
      throw InternalConsistencyError(os.str());
    }
    return PageEntry{r, p, q, num.dim() - den.dim(), num.dim(), den.dim()};
  }

  PageEntry page(long p, long q, long r) {
    const long n = p + q;
    if (n < 0 || n > static_cast<long>(c_.dim())) return PageEntry{static_cast<int>(r), p, q, 0, 0, 0};
    const Subspace& num = a(n, k_ - p, k_ - p - r);
    // d(A_{r-1}^{p-r+1, q+r-2}) + A_{r-1}^{p+1, q-1}
    const Subspace& exact = d_of_a(n - 1, k_ - p + r - 1, k_ - p);
    const Subspace& deeper = a(n, k_ - p - 1, k_ - p - r);
    return quotient(static_cast<int>(r), p, q, num, subspace_sum(exact, deeper));
  }

  PageEntry limit(long p, long q) {
    const long n = p + q;
    if (n < 0 || n > static_cast<long>(c_.dim())) return PageEntry{kLimitPage, p, q, 0, 0, 0};
    const Subspace& num = a(n, k_ - p, 0);
    const Subspace& exact = d_of_a(n - 1, k_, k_ - p);
    const Subspace& deeper = a(n, k_ - p - 1, 0);
    return quotient(kLimitPage, p, q, num, subspace_sum(exact, deeper));
  }

  Grid page_grid(long r, SpectralTable* audit) {
    Grid g(c_.nilpotency_index(), c_.dim());
    for (std::size_t p = 0; p < g.rows(); ++p)
      for (std::size_t n = 0; n < g.cols(); ++n) {
        const long sp = static_cast<long>(p);
        const PageEntry e = r == kLimitPage ? limit(sp, static_cast<long>(n) - sp)
                                            : page(sp, static_cast<long>(n) - sp, r);
        g.at(p, n) = e.dim;
        if (audit) audit->audit[{static_cast<int>(r), p, n}] = e;
      }
    return g;
  }

 private:
  const CochainComplex& c_;
  long k_;
  std::map<std::tuple<long, long, long>, Subspace> a_cache_;
  std::map<std::tuple<long, long, long>, Subspace> image_cache_;
};

std::size_t binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  std::size_t out = 1;
  for (std::size_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

// dim Lambda^n V for a filtration level, constants entering at level 1.
std::size_t lambda_dim(const Filtration& f, std::size_t n, long level) {
  if (n == 0) return level >= 1 ? 1 : 0;
  return binomial(f.dim_v(level), n);
}

std::string page_name(int r) { return r == kLimitPage ? "E_inf" : "E_" + std::to_string(r); }

}  // namespace

Subspace a_space(const CochainComplex& c, long p, long q, long r) {
  Engine e(c);
  const long k = static_cast<long>(c.nilpotency_index());
  return e.a(p + q, k - p, k - p - r);
}

PageEntry page_entry(const CochainComplex& c, long p, long q, long r) { return Engine(c).page(p, q, r); }

PageEntry limit_entry(const CochainComplex& c, long p, long q) { return Engine(c).limit(p, q); }

LimitClass limit_class(const CochainComplex& c, long p, const Form& x) {
  const long k = static_cast<long>(c.nilpotency_index());
  if (p < 0 || p >= k) throw DimensionMismatch("filtration degree out of range");
  const Form y = c.to_adapted(x);
  const long n = static_cast<long>(y.degree());
  Engine e(c);
  const auto v = y.coords(c.basis());
  if (!e.a(n, k - p, 0).contains_vector(v)) return LimitClass::NotInNumerator;
  const Subspace den = subspace_sum(e.d_of_a(n - 1, k, k - p), e.a(n, k - p - 1, 0));
  return den.contains_vector(v) ? LimitClass::Zero : LimitClass::Nonzero;
}

bool is_exact(const CochainComplex& c, const Form& x) {
  const Form y = c.to_adapted(x);
  if (y.degree() == 0) return y.is_zero();
  const Subspace exact = image(c.d(y.degree() - 1), Subspace::full(c.basis().size(static_cast<long>(y.degree()) - 1)));
  return exact.contains_vector(y.coords(c.basis()));
}

std::vector<std::size_t> betti_numbers(const CochainComplex& c) {
  const std::size_t m = c.dim();
  std::vector<std::size_t> ranks(m + 1);
  for (std::size_t q = 0; q <= m; ++q) ranks[q] = rref(c.d(q)).rank;
  std::vector<std::size_t> betti(m + 1);
  for (std::size_t i = 0; i <= m; ++i)
    betti[i] = c.basis().size(static_cast<long>(i)) - ranks[i] - (i > 0 ? ranks[i - 1] : 0);
  return betti;
}

Grid page_zero_closed_form(const CochainComplex& c) {
  const long k = static_cast<long>(c.nilpotency_index());
  Grid g(c.nilpotency_index(), c.dim());
  for (std::size_t p = 0; p < g.rows(); ++p)
    for (std::size_t n = 0; n < g.cols(); ++n) {
      const long sp = static_cast<long>(p);
      g.at(p, n) = lambda_dim(c.filtration(), n, k - sp) - lambda_dim(c.filtration(), n, k - sp - 1);
    }
  return g;
}

const Grid& SpectralTable::grid(int r) const {
  if (r == kLimitPage) return limit;
  if (auto it = pages.find(r); it != pages.end()) return it->second;
  if (r >= r0) return limit;
  throw Error("page " + std::to_string(r) + " was not computed");
}

SpectralTable full_table(const CochainComplex& c, std::optional<int> max_page) {
  Engine e(c);
  SpectralTable t;
  t.m = c.dim();
  t.k = c.nilpotency_index();
  t.betti = betti_numbers(c);
  t.limit = e.page_grid(kLimitPage, &t);
  const int bound = static_cast<int>(t.k);
  int r = 0;
  for (;; ++r) {
    Grid g = e.page_grid(r, &t);
    const bool stable = g == t.limit;
    t.pages.emplace(r, std::move(g));
    if (stable) break;
    if (r >= bound)
      throw InternalConsistencyError("page " + std::to_string(r) + " differs from the limit although r >= k");
  }
  t.r0 = r;
  for (int extra = r + 1; extra <= max_page.value_or(0); ++extra) t.pages.emplace(extra, e.page_grid(extra, &t));
  return t;
}

bool CheckReport::ok() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.passed; });
}

void CheckReport::add(std::string name, bool passed, std::string detail) {
  items.push_back(CheckItem{std::move(name), passed, std::move(detail)});
}

void CheckReport::merge(const CheckReport& other, const std::string& prefix) {
  for (const auto& i : other.items) items.push_back(CheckItem{prefix + i.name, i.passed, i.detail});
}

namespace {

// The column of total degree n must vanish except possibly at row p_keep,
// which must equal `expected`.
void check_column(CheckReport& rep, const std::string& name, const Grid& g, std::size_t n, std::size_t p_keep,
                  std::size_t expected) {
  bool ok = true;
  std::ostringstream os;
  for (std::size_t p = 0; p < g.rows(); ++p) {
    const std::size_t want = p == p_keep ? expected : 0;
    if (g.at(p, n) != want) {
      ok = false;
      os << "e^{" << p << "," << static_cast<long>(n) - static_cast<long>(p) << "}=" << g.at(p, n) << " expected "
         << want << "; ";
    }
  }
  rep.add(name, ok, os.str());
}

}  // namespace

CheckReport check_low_high_degrees(const SpectralTable& t, const CochainComplex& c) {
  CheckReport rep;
  rep.subject = "limit terms in degrees 0, 1, m-1, m";
  const std::size_t m = t.m;
  const std::size_t k = t.k;
  if (m == 0) {
    rep.add("trivial algebra", true);
    return rep;
  }
  const Grid& g = t.limit;
  check_column(rep, "(1) degree 0: only e_inf^{k-1,1-k} = 1", g, 0, k - 1, 1);
  check_column(rep, "(2) degree 1: only e_inf^{k-1,2-k} = dim V_1", g, 1, k - 1, c.closed_one_forms());
  check_column(rep, "(3) degree m-1: only e_inf^{0,m-1} = b_{m-1}", g, m - 1, 0, t.betti[m - 1]);
  check_column(rep, "(4) degree m: only e_inf^{0,m} = 1", g, m, 0, 1);
  return rep;
}

CheckReport check_top_degree_forms(const CochainComplex& c) {
  CheckReport rep;
  rep.subject = "closed and exact forms of degree m-1";
  const std::size_t m = c.dim();
  if (m == 0) {
    rep.add("trivial algebra", true);
    return rep;
  }
  rep.add("every (m-1)-form is closed", c.d(m - 1).is_zero());
  const std::size_t top = c.basis().size(static_cast<long>(m) - 1);
  const Subspace exact = m >= 2 ? image(c.d(m - 2), Subspace::full(c.basis().size(static_cast<long>(m) - 2)))
                                : Subspace::zero(top);
  const Subspace divisible = divisibility_subspace(c);
  std::ostringstream os;
  os << "dim B^{m-1}=" << exact.dim() << ", divisible dim=" << divisible.dim();
  rep.add("exact (m-1)-forms = forms divisible by the top wedge of V_1", exact == divisible, os.str());
  return rep;
}

CheckReport compare_abelian_extension(const CochainComplex& big_c, const SpectralTable& big,
                                      const SpectralTable& small, const std::vector<int>& pages) {
  CheckReport rep;
  rep.subject = "R + h against h";
  if (big.k != small.k || big.m != small.m + 1) {
    rep.add("shapes", false, "R + h must have dimension m+1 and the same nilpotency index");
    return rep;
  }
  const long k = static_cast<long>(big.k);
  for (int r : pages) {
    const Grid& e = big.grid(r);
    const Grid& f = small.grid(r);
    const std::string pre = page_name(r) + ": ";
    auto entry_at = [&](long p, long q) {
      return r == kLimitPage ? limit_entry(big_c, p, q).dim : page_entry(big_c, p, q, r).dim;
    };
    bool ok1 = true;
    for (long p = -1; p <= k; ++p)
      for (long n = -2; n < 0; ++n) ok1 = ok1 && entry_at(p, n - p) == 0;
    rep.add(pre + "(1) zero in negative total degree", ok1);

    bool ok2 = e.entry(k - 1, 1 - k) == 1;
    for (long p = -1; p <= k; ++p)
      if (p != k - 1) ok2 = ok2 && entry_at(p, -p) == 0;
    rep.add(pre + "(2) degree 0 is R at p = k-1 only", ok2);

    rep.add(pre + "(3) e^{k-1,2-k} = e~^{k-1,2-k} + 1", e.entry(k - 1, 2 - k) == f.entry(k - 1, 2 - k) + 1,
            std::to_string(e.entry(k - 1, 2 - k)) + " vs " + std::to_string(f.entry(k - 1, 2 - k)) + "+1");

    bool ok4 = true;
    for (long p = 0; p <= k - 2; ++p) ok4 = ok4 && e.entry(p, 1 - p) == f.entry(p, 1 - p);
    ok4 = ok4 && entry_at(-1, 2) == 0 && entry_at(k, 1 - k) == 0;
    rep.add(pre + "(4) degree 1 below the top row agrees with h", ok4);

    bool ok5 = true;
    std::ostringstream os;
    for (long n = 2; n <= static_cast<long>(big.m); ++n)
      for (long p = 0; p < k; ++p) {
        const std::size_t want = f.entry(p, n - p) + f.entry(p, n - 1 - p);
        if (e.entry(p, n - p) != want) {
          ok5 = false;
          os << "e^{" << p << "," << n - p << "}=" << e.entry(p, n - p) << " expected " << want << "; ";
        }
      }
    rep.add(pre + "(5) e^{p,q} = e~^{p,q} + e~^{p,q-1} for p+q >= 2", ok5, os.str());
  }
  return rep;
}

CheckReport check_abelian_factor(const LieAlgebra& h, std::size_t s, const std::vector<int>& pages) {
  CheckReport rep;
  rep.subject = "R^" + std::to_string(s) + " + h";
  int max_page = 0;
  for (int r : pages)
    if (r != kLimitPage) max_page = std::max(max_page, r);
  CochainComplex hc = build_complex(h);
  SpectralTable base = full_table(hc, max_page);
  SpectralTable prev = base;
  for (std::size_t j = 1; j <= s; ++j) {
    const LieAlgebra n = direct_sum(abelian(j), h);
    const CochainComplex nc = build_complex(n);
    SpectralTable cur = full_table(nc, max_page);
    rep.merge(compare_abelian_extension(nc, cur, prev, pages), "R^" + std::to_string(j) + ": ");
    if (j == s)
      rep.add("degeneration page of R^s + h equals that of h", cur.r0 == base.r0,
              std::to_string(cur.r0) + " vs " + std::to_string(base.r0));
    prev = std::move(cur);
  }
  return rep;
}

CheckReport check_degeneration_bound(const CochainComplex& c, const SpectralTable& t) {
  CheckReport rep;
  rep.subject = "pages from r = k on equal the limit";
  Engine e(c);
  const int k = static_cast<int>(t.k);
  for (int r = k; r <= k + 2; ++r) rep.add("E_" + std::to_string(r) + " = E_inf", e.page_grid(r, nullptr) == t.limit);
  rep.add("r0 <= k", t.r0 <= k, "r0=" + std::to_string(t.r0));
  return rep;
}

CheckReport check_convergence(const SpectralTable& t) {
  CheckReport rep;
  rep.subject = "convergence to cohomology";
  bool sums = true;
  std::ostringstream os;
  for (std::size_t n = 0; n <= t.m; ++n)
    if (t.limit.column_sum(n) != t.betti[n]) {
      sums = false;
      os << "degree " << n << ": " << t.limit.column_sum(n) << " vs b=" << t.betti[n] << "; ";
    }
  rep.add("column sums of E_inf equal Betti numbers", sums, os.str());
  bool dual = true;
  for (std::size_t n = 0; n <= t.m; ++n) dual = dual && t.betti[n] == t.betti[t.m - n];
  rep.add("Poincare duality b_i = b_{m-i}", dual);
  return rep;
}

}  // namespace nilspec
