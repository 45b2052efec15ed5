#include "common.hpp"
#include "support/generators.hpp"

#include "acl/satisfiability.hpp"

#include <algorithm>
#include <optional>

using namespace acl;
using unit::q;

namespace {

// sigma = 2*(sup x. R(x)) - 1 takes the value 2r - 1 on a structure with R = r.
FiniteStructure constant_r(const Rational& r) { return unit::two_point_r(1, r, r); }

const Signature& r_signature() {
  static const Signature sig = constant_r(0).signature();
  return sig;
}

Formula sigma() { return parse_formula("2*(sup x. R(x)) - 1", r_signature()); }

Theory theory(const std::vector<std::string>& conditions) {
  Theory t;
  for (const auto& c : conditions) t.conditions.push_back(parse_condition(c, r_signature()));
  return t;
}

// Over a two-member family a charge is (w, 1-w). Each condition with margins
// m0, m1 in the members asks for w*m0 + (1-w)*m1 >= 0, a half-line in w.
std::optional<std::pair<Rational, Rational>> feasible_interval(const Theory& t, const std::vector<FiniteStructure>& fam) {
  Rational lo = 0, hi = 1;
  for (const auto& c : t.conditions) {
    Rational m0 = eval(fam[0], c.rhs) - eval(fam[0], c.lhs);
    Rational m1 = eval(fam[1], c.rhs) - eval(fam[1], c.lhs);
    // m1 + w*(m0 - m1) >= 0
    Rational slope = m0 - m1;
    if (slope > 0) lo = std::max(lo, Rational(-m1 / slope));
    else if (slope < 0) hi = std::min(hi, Rational(-m1 / slope));
    else if (m1 < 0) return std::nullopt;
  }
  if (lo > hi) return std::nullopt;
  return std::pair{lo, hi};
}

}  // namespace

TEST_SUITE("satisfiability") {

TEST_CASE("value matrix") {
  auto vm = value_matrix({constant_r(0), constant_r(1)}, {sigma()});
  CHECK(vm.values == std::vector<std::vector<Rational>>{{-1}, {1}});
  CHECK_THROWS_AS(value_matrix({constant_r(0)}, {parse_formula("R(x)", r_signature())}), InputError);
}

TEST_CASE("balanced charge") {
  Theory t = theory({"0 <= 2*(sup x. R(x)) - 1", "2*(sup x. R(x)) - 1 <= 0"});
  auto v = sat_over_family(t, {constant_r(0), constant_r(1)}, {"M1", "M2"});
  REQUIRE(std::holds_alternative<Sat>(v));
  const Charge& w = std::get<Sat>(v).charge;
  CHECK(w.ids() == std::vector<std::string>{"M1", "M2"});
  CHECK(w.weights() == std::vector<Rational>{q(1, 2), q(1, 2)});
}

TEST_CASE("certificate of unsatisfiability") {
  Theory t = theory({"1 <= 2*(sup x. R(x)) - 1"});
  auto v = sat_over_family(t, {constant_r(q(1, 2))});
  REQUIRE(std::holds_alternative<Unsat>(v));
  const Unsat& u = std::get<Unsat>(v);
  REQUIRE(u.certificate.size() == 1);
  CHECK(u.certificate[0].first == 0);
  CHECK(u.certificate[0].second == 1);
  CHECK(u.margin == 1);
  CHECK(certificate_condition(t, u) == t.conditions[0]);
}

TEST_CASE("theories true in the only member") {
  Theory t = theory({"sup x. R(x) <= 1", "0 <= inf x. R(x)", "1/4 <= sup x. R(x)"});
  auto v = sat_over_family(t, {constant_r(q(1, 2))});
  REQUIRE(std::holds_alternative<Sat>(v));
  CHECK(std::get<Sat>(v).charge.weights() == std::vector<Rational>{1});
}

TEST_CASE("consequence margins") {
  std::vector<FiniteStructure> fam = {constant_r(0), constant_r(1)};
  Condition target{Formula::numeral(0), sigma()};

  auto free = consequence_margin(Theory{}, target, fam);
  CHECK(free.value == -1);
  CHECK(free.minimizer.weights() == std::vector<Rational>{1, 0});

  Theory t = theory({"0 <= 2*(sup x. R(x)) - 1"});
  auto member = consequence_margin(t, t.conditions[0], fam);
  CHECK(member.value >= 0);
  auto scaled = consequence_margin(t, Condition{Formula::numeral(0), Formula::scale(2, sigma())}, fam);
  CHECK(scaled.value >= 0);

  Theory bad = theory({"1 <= 2*(sup x. R(x)) - 1", "2*(sup x. R(x)) - 1 <= -1"});
  CHECK_THROWS_AS(consequence_margin(bad, target, fam), UnsatisfiableTheory);
}

TEST_CASE("agrees with the interval oracle on two-member families") {
  testgen::Rng rng(23);
  int sat = 0, unsat = 0;
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<FiniteStructure> fam = {testgen::structure(rng, 1 + testgen::pick(rng, 3)),
                                        testgen::structure(rng, 1 + testgen::pick(rng, 3))};
    Theory t = testgen::theory(rng);
    auto oracle = feasible_interval(t, fam);
    auto v = sat_over_family(t, fam);
    if (oracle) {
      REQUIRE(std::holds_alternative<Sat>(v));
      const Rational& w = std::get<Sat>(v).charge.weight(0);
      CHECK(w >= oracle->first);
      CHECK(w <= oracle->second);
      ++sat;

      // The minimum of a linear target over [lo, hi] sits at an endpoint.
      Condition target = testgen::theory(rng).conditions[0];
      auto at = [&](const Rational& x) -> Rational {
        return x * (eval(fam[0], target.rhs) - eval(fam[0], target.lhs)) +
               (1 - x) * (eval(fam[1], target.rhs) - eval(fam[1], target.lhs));
      };
      auto m = consequence_margin(t, target, fam);
      CHECK(m.value == std::min(at(oracle->first), at(oracle->second)));
      CHECK(m.offset == m.value);
    } else {
      REQUIRE(std::holds_alternative<Unsat>(v));
      const Unsat& u = std::get<Unsat>(v);
      CHECK(u.margin > 0);
      Condition cert = certificate_condition(t, u);
      for (const auto& m : fam) CHECK(eval(m, cert.lhs) - eval(m, cert.rhs) >= u.margin);
      ++unsat;
    }
  }
  CHECK(sat > 0);
  CHECK(unsat > 0);
}

TEST_CASE("separation") {
  Formula s = parse_formula("sup x. R(x)", r_signature());
  auto r = separate({constant_r(0)}, {constant_r(1)}, {s});
  REQUIRE(std::holds_alternative<Separation>(r));
  const Separation& sep = std::get<Separation>(r);
  CHECK(sep.coeffs == std::vector<Rational>{1});
  CHECK(sep.r == 0);
  CHECK(sep.s == 1);

  std::vector<FiniteStructure> same = {constant_r(0), constant_r(1)};
  CHECK(std::holds_alternative<NotSeparable>(separate(same, same, {s})));

  // B lies inside the hull of A.
  CHECK(std::holds_alternative<NotSeparable>(separate(same, {constant_r(q(1, 2))}, {s})));
}

TEST_CASE("linear combinations") {
  Formula s = parse_formula("sup x. R(x)", r_signature());
  Formula t = parse_formula("inf x. R(x)", r_signature());
  CHECK(linear_combination({s, t}, {1, 0}) == s);
  CHECK(linear_combination({s, t}, {0, 0}) == Formula::numeral(0));
  CHECK(linear_combination({s, t}, {2, -1}) == Formula::sum(Formula::scale(2, s), Formula::scale(-1, t)));
}

}
