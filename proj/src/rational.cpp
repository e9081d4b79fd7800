#include "ptv/rational.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <ostream>
#include <stdexcept>

namespace ptv {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Strips factors of `p` from `n`, returning how many were removed.
unsigned strip(mpz_class& n, unsigned long p) {
  unsigned count = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
    n /= p;
    ++count;
  }
  return count;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  value_ = mpq_class(num, 1) / mpq_class(den, 1);
  value_.canonicalize();
}

std::optional<Rational> Rational::try_parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  mpq_class result;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d{std::string(den), 10};
    if (d == 0) return std::nullopt;
    result = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    result = mpq_class(mpz_class(std::string(whole) + std::string(frac), 10), scale);
  } else {
    if (!all_digits(body)) return std::nullopt;
    result = mpq_class(mpz_class(std::string(body), 10));
  }
  result.canonicalize();
  if (negative) result = -result;
  return Rational(std::move(result));
}

Rational Rational::parse(std::string_view text) {
  if (auto r = try_parse(text)) return *std::move(r);
  throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
}

std::string Rational::str() const {
  const mpz_class& num = value_.get_num();
  const mpz_class& den = value_.get_den();
  if (den == 1) return num.get_str();

  mpz_class rest = den;
  const unsigned twos = strip(rest, 2);
  const unsigned fives = strip(rest, 5);
  if (rest != 1) return num.get_str() + "/" + den.get_str();

  const unsigned places = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  mpz_class scaled = ::abs(num) * scale / den;
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return (sgn(num) < 0 ? "-" : "") + digits;
}

bool Rational::is_integer() const { return value_.get_den() == 1; }

long Rational::to_long() const {
  if (!is_integer() || !value_.get_num().fits_slong_p()) {
    throw std::range_error("rational " + str() + " is not a machine integer");
  }
  return value_.get_num().get_si();
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return Rational(mpq_class(q));
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace ptv
