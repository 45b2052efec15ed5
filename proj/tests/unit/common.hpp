#pragma once

#include "acl/structures.hpp"

#include <doctest.h>

#include <string>
#include <vector>

namespace unit {

using acl::Rational;

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

/// c, F/1 (lambda 2), R/1 (lambda 1).
inline acl::Signature small_signature() {
  acl::Signature sig;
  sig.add({"c", acl::SymbolKind::Constant, 0, 0});
  sig.add({"F", acl::SymbolKind::Function, 1, 2});
  sig.add({"R", acl::SymbolKind::Relation, 1, 1});
  return sig;
}

/// Points a, b at distance d with R = (r_a, r_b) and a unary relation of
/// Lipschitz constant `lambda`.
inline acl::FiniteStructure two_point_r(const Rational& d, const Rational& ra, const Rational& rb,
                                        const Rational& lambda = 1) {
  acl::Signature sig;
  sig.add({"R", acl::SymbolKind::Relation, 1, lambda});
  acl::FiniteStructure m(sig, {"a", "b"}, {0, d, d, 0});
  m.set_relation("R", {1, {ra, rb}});
  return m;
}

inline acl::Formula parse(const std::string& text, const acl::Signature& sig) { return acl::parse_formula(text, sig); }

}  // namespace unit
