#pragma once

// Shared generators and independent oracles for the test suites.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "nilspec/complex.hpp"
#include "nilspec/lie_algebra.hpp"
#include "nilspec/matrix.hpp"

namespace nilspec::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo = -3, long hi = 3,
                            double zero_bias = 0.3) {
  Matrix m(rows, cols);
  std::bernoulli_distribution zero(zero_bias);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = zero(rng) ? Rational(0) : Rational(uniform(rng, lo, hi));
  return m;
}

// Plain int64 fractions, kept entirely separate from the GMP-backed code.
struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Frac() = default;
  Frac(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }
  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }
  bool zero() const { return num == 0; }
  friend Frac operator-(Frac a, Frac b) { return Frac(a.num * b.den - b.num * a.den, a.den * b.den); }
  friend Frac operator*(Frac a, Frac b) { return Frac(a.num * b.num, a.den * b.den); }
  friend Frac operator/(Frac a, Frac b) { return Frac(a.num * b.den, a.den * b.num); }
};

// Textbook Gauss-Jordan elimination; returns the reduced matrix and rank.
inline std::pair<std::vector<std::vector<Frac>>, std::size_t> naive_rref(std::vector<std::vector<Frac>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c].zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const Frac inv = Frac(1) / a[rank][c];
    for (auto& v : a[rank]) v = v * inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c].zero()) continue;
      const Frac f = a[r][c];
      for (std::size_t j = 0; j < cols; ++j) a[r][j] = a[r][j] - f * a[rank][j];
    }
    ++rank;
  }
  return {a, rank};
}

inline std::vector<std::vector<Frac>> to_frac(const Matrix& m) {
  std::vector<std::vector<Frac>> out(m.rows(), std::vector<Frac>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = Frac(std::stoll(m(r, c).to_string()));
  return out;
}

inline Matrix from_frac(const std::vector<std::vector<Frac>>& a, std::size_t cols) {
  Matrix m(a.size(), cols);
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Rational(a[r][c].num, a[r][c].den);
  return m;
}

// Sign of the permutation sorting `v` (distinct entries), or 0 on repeats.
inline int sort_sign(std::vector<std::size_t> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] == v[j]) return 0;
      if (v[i] > v[j]) sign = -sign;
    }
  return sign;
}

// Matrix of d on q-forms from the pointwise formula
//   dx(u_1..u_{q+1}) = sum_{i<j} (-1)^{i+j-1} x([u_i,u_j], u_1..^i..^j..u_{q+1})
// evaluated on basis vectors; column = basis q-form, row = basis (q+1)-form.
inline Matrix pointwise_differential(const StructureConstants& c, std::size_t q) {
  const std::size_t m = c.dim();
  const ExteriorBasis basis(m);
  Matrix out(basis.size(static_cast<long>(q) + 1), basis.size(static_cast<long>(q)));
  if (q + 1 > m) return out;
  for (std::size_t row = 0; row < basis.size(static_cast<long>(q) + 1); ++row) {
    const auto u = basis.at(q + 1, row).indices();
    for (std::size_t col = 0; col < basis.size(static_cast<long>(q)); ++col) {
      const auto x = basis.at(q, col).indices();
      Rational total;
      for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j) {
          // 1-based positions i+1, j+1.
          const bool negative = (i + j + 1) % 2 == 1;
          std::vector<std::size_t> rest;
          for (std::size_t t = 0; t < u.size(); ++t)
            if (t != i && t != j) rest.push_back(u[t]);
          for (std::size_t k = 0; k < m; ++k) {
            const Rational ck = c.coefficient(u[i], u[j], k);
            if (ck.is_zero()) continue;
            // x = e^{x_1}^...^e^{x_q} on (e_k, rest): permutation sign of
            // (k, rest) against x when they agree as sets.
            std::vector<std::size_t> args{k};
            args.insert(args.end(), rest.begin(), rest.end());
            std::vector<std::size_t> sorted = args;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != x) continue;
            const int s = sort_sign(args);
            total += (negative ? -ck : ck) * Rational(s);
          }
        }
      out(row, col) = total;
    }
  }
  return out;
}

// Closed 2-forms of the algebra spanned by the first n covectors.
inline std::vector<Form> closed_two_forms(const StructureConstants& c, std::size_t n) {
  const ExteriorBasis basis(n);
  StructureConstants sub(n);
  for (const auto& [key, v] : c.entries()) {
    const auto [i, j, k] = key;
    if (k < n) sub.add(i, j, k, v);
  }
  Matrix d2(basis.size(3), basis.size(2));
  for (std::size_t col = 0; col < basis.size(2); ++col) {
    const Form image = differential(sub, Form::basis(basis.at(2, col)));
    for (const auto& [mi, coeff] : image.terms()) d2(basis.position(mi), col) = coeff;
  }
  const Matrix ker = kernel_basis(d2);
  std::vector<Form> out;
  for (std::size_t r = 0; r < ker.rows(); ++r) out.push_back(Form::from_coords(2, ker.row(r), basis));
  return out;
}

// f^a = sum_j P_aj e^j; returns the constants in the f basis.
inline StructureConstants change_basis(const StructureConstants& c, const Matrix& p) {
  const std::size_t m = c.dim();
  const Matrix inv = inverse(p);
  std::vector<Form> e_in_f;
  for (std::size_t i = 0; i < m; ++i) {
    Form f(1);
    for (std::size_t b = 0; b < m; ++b) f.add(MultiIndex{b}, inv(i, b));
    e_in_f.push_back(f);
  }
  StructureConstants out(m);
  for (std::size_t a = 0; a < m; ++a) {
    Form dfa(2);
    for (std::size_t j = 0; j < m; ++j) {
      if (p(a, j).is_zero()) continue;
      const Form dej = c.differential(j);
      for (const auto& [mi, coeff] : dej.terms()) {
        const auto idx = mi.indices();
        dfa += (p(a, j) * coeff) * wedge(e_in_f[idx[0]], e_in_f[idx[1]], m);
      }
    }
    for (const auto& [mi, coeff] : dfa.terms()) {
      const auto idx = mi.indices();
      out.add(idx[0], idx[1], a, coeff);
    }
  }
  return out;
}

// Random nilpotent algebra of dimension m: a few closed covectors, then each
// new covector has as differential a random nonzero closed 2-form of the
// algebra built so far. With `scramble`, the result is rewritten in a random
// unimodular basis, so the filtration is no longer a coordinate flag.
inline LieAlgebra random_nilpotent(Rng& rng, std::size_t m, bool scramble = true) {
  StructureConstants c(m);
  const std::size_t closed = static_cast<std::size_t>(uniform(rng, 2, std::max<long>(2, static_cast<long>(m) - 1)));
  for (std::size_t j = closed; j < m; ++j) {
    const auto z = closed_two_forms(c, j);
    Form de(2);
    while (de.is_zero()) {
      for (const Form& w : z) {
        const long coef = uniform(rng, -2, 2);
        if (coef) de += Rational(coef) * w;
      }
    }
    for (const auto& [mi, coeff] : de.terms()) {
      const auto idx = mi.indices();
      c.add(idx[0], idx[1], j, coeff);
    }
  }
  if (scramble && m > 1) {
    // Permutation times a unipotent integer matrix.
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix u = Matrix::identity(m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        if (uniform(rng, 0, 3) == 0) u(a, b) = Rational(uniform(rng, -1, 1));
    Matrix p(m, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) p(a, b) = u(perm[a], b);
    c = change_basis(c, p);
  }
  return LieAlgebra(std::move(c), "random");
}

inline std::vector<LieAlgebra> random_family(std::uint64_t seed, std::size_t count, std::size_t min_dim,
                                             std::size_t max_dim) {
  Rng rng(seed);
  std::vector<LieAlgebra> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto m = static_cast<std::size_t>(uniform(rng, static_cast<long>(min_dim), static_cast<long>(max_dim)));
    out.push_back(random_nilpotent(rng, m, i % 3 != 0));
  }
  return out;
}

}  // namespace nilspec::testing
