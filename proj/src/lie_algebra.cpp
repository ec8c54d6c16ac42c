#include "nilspec/lie_algebra.hpp"

#include <cctype>
#include <sstream>

#include <json.hpp>

#include "nilspec/errors.hpp"

namespace nilspec {

StructureConstants::StructureConstants(std::size_t dim) : dim_(dim) {
  if (dim > kMaxDim) throw DimensionMismatch("dimension exceeds " + std::to_string(kMaxDim));
}

void StructureConstants::add(std::size_t i, std::size_t j, std::size_t k, const Rational& c) {
  if (i >= dim_ || j >= dim_ || k >= dim_) throw DimensionMismatch("structure constant index out of range");
  if (i == j) throw Error("bracket of a basis vector with itself");
  if (c.is_zero()) return;
  const Key key = i < j ? Key{i, j, k} : Key{j, i, k};
  const Rational v = i < j ? c : -c;
  auto [it, inserted] = entries_.emplace(key, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

Rational StructureConstants::coefficient(std::size_t i, std::size_t j, std::size_t k) const {
  if (i == j) return 0;
  const auto it = entries_.find(i < j ? Key{i, j, k} : Key{j, i, k});
  if (it == entries_.end()) return 0;
  return i < j ? it->second : -it->second;
}

Form StructureConstants::differential(std::size_t k) const {
  Form f(2);
  for (const auto& [key, c] : entries_) {
    const auto [i, j, kk] = key;
    if (kk == k) f.add(MultiIndex{i, j}, c);
  }
  return f;
}

std::vector<Rational> StructureConstants::bracket(std::span<const Rational> u,
                                                  std::span<const Rational> v) const {
  std::vector<Rational> out(dim_);
  for (const auto& [key, c] : entries_) {
    const auto [i, j, k] = key;
    // [e_i, e_j] = c e_k and [e_j, e_i] = -c e_k.
    const Rational w = u[i] * v[j] - u[j] * v[i];
    if (!w.is_zero()) out[k] += c * w;
  }
  return out;
}

namespace {

Form d_of_two_form(const StructureConstants& c, const Form& x) {
  Form out(3);
  for (const auto& [mi, coeff] : x.terms()) {
    const auto idx = mi.indices();
    // d(a ^ b) = da ^ b - a ^ db
    out += coeff * wedge(c.differential(idx[0]), Form::one(idx[1]), c.dim());
    out -= coeff * wedge(Form::one(idx[0]), c.differential(idx[1]), c.dim());
  }
  return out;
}

// Lower central series n^0 = n, n^i = [n, n^{i-1}] until it stabilizes.
std::vector<Subspace> lower_central_series(const StructureConstants& c) {
  const std::size_t m = c.dim();
  std::vector<Subspace> series{Subspace::full(m)};
  for (std::size_t step = 0; step <= m; ++step) {
    const Subspace& prev = series.back();
    if (prev.is_zero()) break;
    std::vector<std::vector<Rational>> gens;
    for (std::size_t a = 0; a < m; ++a) {
      std::vector<Rational> ea(m);
      ea[a] = 1;
      for (std::size_t r = 0; r < prev.dim(); ++r) gens.push_back(c.bracket(ea, prev.basis().row(r)));
    }
    Subspace next = Subspace::span(gens, m);
    if (next == prev) break;
    series.push_back(std::move(next));
  }
  return series;
}

}  // namespace

ValidationReport validate(const StructureConstants& c) {
  ValidationReport rep;
  rep.jacobi_ok = true;
  // Below dimension 3 there are no 3-forms, so d^2 = 0 holds trivially.
  for (std::size_t k = 0; c.dim() >= 3 && k < c.dim(); ++k)
    if (!d_of_two_form(c, c.differential(k)).is_zero()) {
      rep.jacobi_ok = false;
      break;
    }
  const auto series = lower_central_series(c);
  for (const auto& s : series) rep.series_dims.push_back(s.dim());
  rep.nilpotent_ok = series.back().is_zero();
  if (rep.nilpotent_ok) rep.nilpotency_index = series.size() - 1;
  return rep;
}

LieAlgebra::LieAlgebra(StructureConstants c, std::string label) : c_(std::move(c)), label_(std::move(label)) {
  const ValidationReport rep = validate(c_);
  if (!rep.jacobi_ok) throw JacobiError("structure constants violate the Jacobi identity (d^2 != 0)");
  if (!rep.nilpotent_ok)
    throw NotNilpotentError("descending central series stabilizes at dimension " +
                            std::to_string(rep.series_dims.back()));
  k_ = *rep.nilpotency_index;
}

std::size_t Filtration::dim_v(long i) const {
  if (i <= 0) return 0;
  if (i >= static_cast<long>(k)) return spaces.back().dim();
  return spaces[static_cast<std::size_t>(i)].dim();
}

Matrix one_form_differential(const StructureConstants& c, const ExteriorBasis& basis) {
  const std::size_t m = c.dim();
  Matrix d(basis.size(2), m);
  for (const auto& [key, coeff] : c.entries()) {
    const auto [i, j, k] = key;
    d(basis.position(MultiIndex{i, j}), k) += coeff;
  }
  return d;
}

Subspace second_power(const Subspace& w, const ExteriorBasis& basis) {
  std::vector<std::vector<Rational>> gens;
  for (std::size_t a = 0; a < w.dim(); ++a)
    for (std::size_t b = a + 1; b < w.dim(); ++b) {
      const Form fa = Form::from_coords(1, w.basis().row(a), basis);
      const Form fb = Form::from_coords(1, w.basis().row(b), basis);
      gens.push_back(wedge(fa, fb, basis.dim()).coords(basis));
    }
  return Subspace::span(gens, basis.size(2));
}

Filtration descending_series(const LieAlgebra& a) {
  const std::size_t m = a.dim();
  const ExteriorBasis basis(m);
  const Matrix d1 = one_form_differential(a.constants(), basis);
  Filtration f;
  f.series = lower_central_series(a.constants());
  if (!f.series.back().is_zero()) throw NotNilpotentError("descending central series does not reach 0");
  f.k = f.series.size() - 1;
  for (const auto& s : f.series) f.series_dims.push_back(s.dim());
  f.spaces.push_back(Subspace::zero(m));
  for (std::size_t i = 1; i <= f.k; ++i)
    f.spaces.push_back(preimage(d1, second_power(f.spaces.back(), basis), Subspace::full(m)));
  for (std::size_t i = 0; i <= f.k; ++i)
    if (!(f.spaces[i] == annihilator(f.series[i])))
      throw InternalConsistencyError("V_" + std::to_string(i) + " differs from the annihilator of n^" +
                                     std::to_string(i));
  return f;
}

// ---------------------------------------------------------------------------
// Salamon notation

namespace {

class SalamonParser {
 public:
  explicit SalamonParser(std::string_view text) : s_(text) {}

  StructureConstants parse() {
    skip_ws();
    expect('(');
    // Entry boundaries first: the dimension fixes the pair syntax.
    std::vector<std::pair<std::size_t, std::size_t>> entries;
    std::size_t start = pos_;
    while (true) {
      if (pos_ >= s_.size()) throw SyntaxError("unterminated Salamon list, expected ')'", pos_);
      const char ch = s_[pos_];
      if (ch == '(') throw SyntaxError("unexpected '('", pos_);
      if (ch == ',' || ch == ')') {
        entries.emplace_back(start, pos_);
        ++pos_;
        if (ch == ')') break;
        start = pos_;
      } else {
        ++pos_;
      }
    }
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError("trailing characters after ')'", pos_);
    const std::size_t m = entries.size();
    if (m > kMaxDim) throw DimensionMismatch("dimension exceeds " + std::to_string(kMaxDim));
    StructureConstants c(m);
    for (std::size_t k = 0; k < m; ++k) parse_entry(c, k, entries[k].first, entries[k].second);
    return c;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void skip_ws(std::size_t end) {
    while (pos_ < end && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char ch) {
    if (pos_ >= s_.size() || s_[pos_] != ch) throw SyntaxError(std::string("expected '") + ch + "'", pos_);
    ++pos_;
  }
  static bool is_digit(char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; }

  std::size_t index_value(std::size_t from, std::size_t to, std::size_t m) const {
    if (from == to) throw SyntaxError("expected basis index", from);
    std::size_t v = 0;
    for (std::size_t i = from; i < to; ++i) v = v * 10 + static_cast<std::size_t>(s_[i] - '0');
    if (v < 1 || v > m)
      throw IndexRangeError("basis index " + std::to_string(v) + " outside 1.." + std::to_string(m), from);
    return v - 1;
  }

  void parse_entry(StructureConstants& c, std::size_t k, std::size_t begin, std::size_t end) {
    const std::size_t m = c.dim();
    pos_ = begin;
    skip_ws(end);
    if (pos_ == end) throw SyntaxError("empty entry", pos_);
    // A lone "0" means de^k = 0.
    {
      std::size_t p = pos_;
      if (s_[p] == '0') {
        ++p;
        while (p < end && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
        if (p == end) return;
      }
    }
    bool first = true;
    while (true) {
      skip_ws(end);
      if (pos_ == end) {
        if (first) throw SyntaxError("empty entry", pos_);
        break;
      }
      bool negative = false;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        negative = s_[pos_] == '-';
        ++pos_;
        skip_ws(end);
      } else if (!first) {
        throw SyntaxError("expected '+' or '-' between terms", pos_);
      }
      parse_term(c, k, end, negative, m);
      first = false;
    }
  }

  // term := [coef '*'] pair | digits   (undotted: trailing two digits are the pair)
  void parse_term(StructureConstants& c, std::size_t k, std::size_t end, bool negative, std::size_t m) {
    const std::size_t term_start = pos_;
    std::size_t p = pos_;
    while (p < end && (is_digit(s_[p]) || s_[p] == '/' || s_[p] == '.')) ++p;
    if (p == term_start) throw SyntaxError("expected a term", term_start);
    Rational coeff = 1;
    std::size_t pair_start = term_start;
    std::size_t pair_end = p;
    std::size_t q = p;
    while (q < end && std::isspace(static_cast<unsigned char>(s_[q]))) ++q;
    if (q < end && s_[q] == '*') {
      coeff = parse_coefficient(term_start, p);
      pos_ = q + 1;
      skip_ws(end);
      pair_start = pos_;
      pair_end = pos_;
      while (pair_end < end && (is_digit(s_[pair_end]) || s_[pair_end] == '.')) ++pair_end;
    }
    const std::string_view pair = s_.substr(pair_start, pair_end - pair_start);
    std::size_t a = 0;
    std::size_t b = 0;
    const std::size_t dot = pair.find('.');
    if (dot != std::string_view::npos) {
      if (pair.find('.', dot + 1) != std::string_view::npos || pair.find('/') != std::string_view::npos)
        throw SyntaxError("malformed dotted index pair", pair_start);
      a = index_value(pair_start, pair_start + dot, m);
      b = index_value(pair_start + dot + 1, pair_end, m);
    } else {
      if (m >= 10) throw SyntaxError("index pairs must be dot-separated when m >= 10", pair_start);
      const std::size_t slash = pair.find('/');
      if (pair_end - pair_start < 2) throw SyntaxError("expected a two-digit index pair", pair_start);
      if (pair_start == term_start && pair_end - pair_start > 2) {
        // Implicit coefficient: "314" is 3 e^1^e^4, "1/214" is 1/2 e^1^e^4.
        coeff = parse_coefficient(term_start, pair_end - 2);
        pair_start = pair_end - 2;
      } else if (slash != std::string_view::npos) {
        throw SyntaxError("unexpected '/' in index pair", pair_start + slash);
      }
      if (pair_end - pair_start != 2 || !is_digit(s_[pair_start]) || !is_digit(s_[pair_start + 1]))
        throw SyntaxError("expected a two-digit index pair", pair_start);
      a = index_value(pair_start, pair_start + 1, m);
      b = index_value(pair_start + 1, pair_start + 2, m);
    }
    if (a == b) throw RepeatedIndexError("index pair repeats basis index " + std::to_string(a + 1), pair_start);
    c.add(a, b, k, negative ? -coeff : coeff);
    pos_ = pair_end;
  }

  Rational parse_coefficient(std::size_t from, std::size_t to) const {
    const std::string_view text = s_.substr(from, to - from);
    if (text.find('.') != std::string_view::npos) throw SyntaxError("coefficients must be p or p/q", from);
    try {
      return Rational::parse(text);
    } catch (const SyntaxError& e) {
      throw SyntaxError("malformed coefficient", from + e.position());
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

StructureConstants parse_salamon_constants(std::string_view text) { return SalamonParser(text).parse(); }

LieAlgebra parse_salamon(std::string_view text, std::string label) {
  return LieAlgebra(parse_salamon_constants(text), std::move(label));
}

std::string to_salamon(const StructureConstants& c) {
  const std::size_t m = c.dim();
  const bool dotted = m >= 10;
  std::vector<std::vector<std::pair<std::pair<std::size_t, std::size_t>, Rational>>> terms(m);
  for (const auto& [key, coeff] : c.entries()) {
    const auto [i, j, k] = key;
    terms[k].push_back({{i, j}, coeff});
  }
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < m; ++k) {
    if (k) os << ',';
    if (terms[k].empty()) {
      os << '0';
      continue;
    }
    bool first = true;
    for (const auto& [pair, coeff] : terms[k]) {
      const Rational mag = coeff.sign() < 0 ? -coeff : coeff;
      if (coeff.sign() < 0)
        os << '-';
      else if (!first)
        os << '+';
      first = false;
      if (mag != Rational(1)) os << mag << '*';
      os << pair.first + 1;
      if (dotted) os << '.';
      os << pair.second + 1;
    }
  }
  os << ')';
  return os.str();
}

std::string to_json(const LieAlgebra& a) {
  nlohmann::ordered_json j;
  j["dim"] = a.dim();
  j["brackets"] = nlohmann::ordered_json::array();
  for (const auto& [key, coeff] : a.constants().entries()) {
    const auto [i, jj, k] = key;
    j["brackets"].push_back({{"i", i + 1}, {"j", jj + 1}, {"k", k + 1}, {"c", coeff.to_string()}});
  }
  j["label"] = a.label();
  return j.dump();
}

LieAlgebra algebra_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("invalid JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  try {
    const std::size_t m = j.at("dim").get<std::size_t>();
    StructureConstants c(m);
    for (const auto& b : j.at("brackets")) {
      const long i = b.at("i").get<long>();
      const long jj = b.at("j").get<long>();
      const long k = b.at("k").get<long>();
      for (long v : {i, jj, k})
        if (v < 1 || v > static_cast<long>(m))
          throw IndexRangeError("bracket index " + std::to_string(v) + " outside 1.." + std::to_string(m), 0);
      if (i == jj) throw RepeatedIndexError("bracket [e_i, e_i]", 0);
      Rational coeff = b.at("c").is_string() ? Rational::parse(b.at("c").get<std::string>())
                                             : Rational(b.at("c").get<std::int64_t>());
      c.add(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(jj - 1), static_cast<std::size_t>(k - 1),
            coeff);
    }
    std::string label = j.contains("label") ? j.at("label").get<std::string>() : std::string{};
    return LieAlgebra(std::move(c), std::move(label));
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("malformed algebra JSON: ") + e.what(), 0);
  }
}

LieAlgebra abelian(std::size_t m) { return LieAlgebra(StructureConstants(m), "R^" + std::to_string(m)); }

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const std::size_t off = a.dim();
  StructureConstants c(a.dim() + b.dim());
  for (const auto& [key, coeff] : a.constants().entries()) {
    const auto [i, j, k] = key;
    c.add(i, j, k, coeff);
  }
  for (const auto& [key, coeff] : b.constants().entries()) {
    const auto [i, j, k] = key;
    c.add(i + off, j + off, k + off, coeff);
  }
  std::string label;
  if (!a.label().empty() && !b.label().empty()) label = a.label() + " + " + b.label();
  return LieAlgebra(std::move(c), std::move(label));
}

LieAlgebra m0(std::size_t m) {
  if (m < 3) throw ValidationError("m0(m) requires m >= 3");
  StructureConstants c(m);
  for (std::size_t i = 2; i < m; ++i) c.add(0, i - 1, i, 1);
  return LieAlgebra(std::move(c), "m0(" + std::to_string(m) + ")");
}

}  // namespace nilspec
