#include "common.hpp"
#include "support/generators.hpp"

#include "acl/syntax.hpp"

using namespace acl;
using unit::q;

TEST_SUITE("syntax") {

TEST_CASE("Lipschitz constants and bounds") {
  Signature sig = unit::small_signature();

  Formula d = parse_formula("d(x,y)", sig);
  CHECK(d.kind() == Formula::Kind::Dist);
  CHECK(d.lipschitz() == 2);
  CHECK(d.bound() == 1);

  Formula f = parse_formula("3*d(F(x),y) + 2*1", sig);
  CHECK(f.lipschitz() == 9);
  CHECK(f.bound() == 5);

  Formula s = parse_formula("sup y. d(x,y)", sig);
  CHECK(s.lipschitz() == 2);
  CHECK(s.bound() == 1);
  CHECK(s.free_variables() == std::set<std::string>{"x"});
}

TEST_CASE("negative scalars count by absolute value") {
  Signature sig = unit::small_signature();
  Formula f = parse_formula("-1/2*R(F(x)) + R(c)", sig);
  CHECK(f.lipschitz() == 1);
  CHECK(f.bound() == q(3, 2));
}

TEST_CASE("quantifier bodies extend to the right") {
  Signature sig = unit::small_signature();
  Formula f = parse_formula("sup x. R(x) + R(y)", sig);
  REQUIRE(f.kind() == Formula::Kind::Sup);
  CHECK(f.body().kind() == Formula::Kind::Sum);
  CHECK(f.free_variables() == std::set<std::string>{"y"});
}

TEST_CASE("subtraction and numerals") {
  Signature sig = unit::small_signature();
  CHECK(parse_formula("R(x) - R(y)", sig) ==
        Formula::sum(parse_formula("R(x)", sig), Formula::scale(-1, parse_formula("R(y)", sig))));
  CHECK(parse_formula("1/2", sig) == Formula::numeral(q(1, 2)));
  CHECK(parse_formula("1/2", sig).numeral_value() == q(1, 2));
  CHECK(to_string(Formula::numeral(0)) == "0");
}

TEST_CASE("printing round-trips") {
  Signature sig = unit::small_signature();
  for (const char* text : {"d(x,y)", "3*d(F(x),y) + 2*1", "sup y. d(x,y)", "inf x. min(R(x), 1 - R(x))",
                           "max(R(c), d(F(c),c))", "-1*sup x. inf y. d(x,y)", "2*(sup x. R(x)) - 1",
                           "-2*0", "2*3*R(c)", "1/2*-1/3"}) {
    Formula f = parse_formula(text, sig);
    CHECK_MESSAGE(parse_formula(to_string(f), sig) == f, text);
  }

  testgen::Rng rng(7);
  Signature gen = testgen::signature();
  for (int i = 0; i < 300; ++i) {
    Formula f = testgen::formula(rng, {"x", "y"});
    CHECK(parse_formula(to_string(f), gen) == f);
  }
}

TEST_CASE("input errors") {
  Signature sig = unit::small_signature();
  CHECK_THROWS_AS(parse_formula("d(x,", sig), SyntaxError);
  CHECK_THROWS_AS(parse_formula("G(x)", sig), SignatureError);
  CHECK_THROWS_AS(parse_formula("R(x,y)", sig), SignatureError);
  CHECK_THROWS_AS(parse_formula("sup c. R(c)", sig), SyntaxError);
  CHECK_THROWS_AS(parse_formula("0.5*R(x)", sig), InputError);
  CHECK_THROWS_AS(sig.add({"d", SymbolKind::Relation, 2, 1}), SignatureError);
  CHECK_THROWS_AS(sig.add({"G", SymbolKind::Function, 1, -1}), SignatureError);
  try {
    parse_formula("R(x) +", sig);
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("conditions") {
  Signature sig = unit::small_signature();
  CHECK(parse_conditions("R(x) >= 1/2", sig) == std::vector{parse_condition("1/2 <= R(x)", sig)});
  auto eq = parse_conditions("R(c) = 0", sig);
  REQUIRE(eq.size() == 2);
  CHECK(eq[0] == parse_condition("R(c) <= 0", sig));
  CHECK(eq[1] == parse_condition("0 <= R(c)", sig));
  CHECK_THROWS_AS(parse_condition("R(c) = 0", sig), SyntaxError);
}

TEST_CASE("affine combinations") {
  Signature sig = unit::small_signature();
  Formula sigma = parse_formula("sup x. R(x)", sig);
  Formula eta = parse_formula("R(c)", sig);
  Formula zero = Formula::numeral(0);

  Condition a = affine_combination({{{zero, sigma}, 1}, {{sigma, zero}, 1}});
  CHECK(a.lhs == Formula::sum(zero, sigma));
  CHECK(a.rhs == Formula::sum(sigma, zero));

  Condition b = affine_combination({{{sigma, eta}, 2}});
  CHECK(b.lhs == Formula::scale(2, sigma));
  CHECK(b.rhs == Formula::scale(2, eta));

  Condition c = affine_combination({{{zero, sigma}, q(1, 2)}, {{zero, eta}, q(1, 2)}});
  CHECK(c.rhs == Formula::sum(Formula::scale(q(1, 2), sigma), Formula::scale(q(1, 2), eta)));

  Condition d = affine_combination({{{sigma, eta}, 0}, {{eta, sigma}, 1}});
  CHECK(d.lhs == eta);
  CHECK(d.rhs == sigma);
}

TEST_CASE("substitution") {
  Signature sig = unit::small_signature();
  Term c = parse_term("c", sig);
  CHECK(substitute(parse_formula("d(x,y)", sig), "x", c) == parse_formula("d(c,y)", sig));
  CHECK_THROWS_AS(substitute(parse_formula("sup y. d(x,y)", sig), "x", Term::variable("y")), CaptureError);
  CHECK(substitute(parse_formula("sup z. d(x,z)", sig), "x", parse_term("F(y)", sig)) ==
        parse_formula("sup z. d(F(y),z)", sig));
  // Bound occurrences are untouched.
  CHECK(substitute(parse_formula("sup x. R(x)", sig), "x", c) == parse_formula("sup x. R(x)", sig));
  // No free occurrence, so no capture either.
  CHECK(substitute(parse_formula("sup y. R(y)", sig), "x", Term::variable("y")) ==
        parse_formula("sup y. R(y)", sig));
}

TEST_CASE("alpha equivalence") {
  Signature sig = unit::small_signature();
  CHECK(alpha_equivalent(parse_formula("sup x. d(x,y)", sig), parse_formula("sup z. d(z,y)", sig)));
  CHECK_FALSE(alpha_equivalent(parse_formula("sup x. d(x,y)", sig), parse_formula("sup y. d(y,y)", sig)));
  CHECK_FALSE(alpha_equivalent(parse_formula("sup x. d(x,y)", sig), parse_formula("sup x. d(x,z)", sig)));
  CHECK(alpha_equivalent(parse_formula("sup x. sup x. R(x)", sig), parse_formula("sup y. sup z. R(z)", sig)));
}

TEST_CASE("negate folds scales") {
  Signature sig = unit::small_signature();
  Formula r = parse_formula("R(c)", sig);
  CHECK(negate(r) == Formula::scale(-1, r));
  CHECK(negate(Formula::scale(2, r)) == Formula::scale(-2, r));
}

}
