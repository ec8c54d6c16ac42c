#include "nilspec/rational.hpp"

#include <cctype>

#include "nilspec/errors.hpp"

namespace nilspec {

Rational::Rational(std::int64_t num, std::int64_t den)
    : value_(static_cast<long>(num), static_cast<unsigned long>(den < 0 ? -den : den)) {
  if (den == 0) throw Error("rational with zero denominator");
  if (den < 0) value_ = -value_;
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
      ++j;
    return j;
  };
  const std::size_t num_end = digits(i);
  if (num_end == i) throw SyntaxError("expected digits in rational", i);
  std::string num(text.substr(i, num_end - i));
  std::string den = "1";
  std::size_t end = num_end;
  if (end < text.size() && text[end] == '/') {
    const std::size_t den_end = digits(end + 1);
    if (den_end == end + 1)
      throw SyntaxError("expected denominator digits", end + 1);
    den = std::string(text.substr(end + 1, den_end - end - 1));
    end = den_end;
  }
  if (end != text.size()) throw SyntaxError("trailing characters in rational", end);
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw SyntaxError("zero denominator", num_end + 1);
  Rational r;
  r.value_ = mpq_class(negative ? mpz_class(-n) : n, d);
  r.value_.canonicalize();
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("division by zero rational");
  value_ /= o.value_;
  return *this;
}

}  // namespace nilspec
