#include "acl/rational.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>

namespace acl {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw InputError("invalid rational '" + std::string(text) + "' (expected p/q, decimals are not accepted)");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InputError("zero denominator in rational '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_decimal(const Rational& r, int digits) {
  mpf_class f(r, 256);
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << f;
  return out.str();
}

Rational power(const Rational& r, unsigned n) {
  Rational out = 1;
  for (unsigned i = 0; i < n; ++i) out *= r;
  return out;
}

}  // namespace acl
