#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace acl {

/// Exact rational scalar used for every value, weight and coefficient.
using Rational = mpq_class;

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed user input (files, formula text, rationals).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

/// Parses "p/q", "p" or "-p/q". Decimal notation is rejected.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" for integers).
std::string to_string(const Rational& r);

/// Fixed-point decimal rendering, for display only.
std::string to_decimal(const Rational& r, int digits = 6);

inline Rational abs_value(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// r^n for n >= 0.
Rational power(const Rational& r, unsigned n);

}  // namespace acl
