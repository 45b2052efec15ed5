#include "common.hpp"
#include "support/generators.hpp"

#include "acl/pra.hpp"

using namespace acl;
using unit::q;

namespace {

Formula f(const std::string& text) { return parse_formula(text, pra::signature()); }

pra::PraFormula qf(const std::string& text, const std::vector<std::string>& vars) {
  return pra::from_formula(f(text), vars);
}

pra::PraFormula normal(const std::string& text, const std::vector<std::string>& vars) {
  return pra::expand_inclusion_exclusion(qf(text, vars));
}

// Every event assignment of `vars` in every algebra of the grid.
template <class Fn>
void for_each_model(const std::vector<std::string>& vars, std::size_t max_atoms, const Rational& step, Fn&& fn) {
  for (const auto& a : pra::weight_grid(max_atoms, step))
    for_each_tuple(a.events(), vars.size(), [&](const std::vector<std::size_t>& events) {
      pra::EventAssignment asg;
      for (std::size_t i = 0; i < vars.size(); ++i) asg[vars[i]] = events[i];
      fn(a, asg);
    });
}

void check_against_oracle(const Formula& input, const pra::PraFormula& output, std::size_t max_atoms = 3) {
  std::vector<std::string> vars(output.variables());
  for_each_model(vars, max_atoms, q(1, 2), [&](const pra::FiniteAlgebra& a, const pra::EventAssignment& asg) {
    pra::EventAssignment free;
    for (const auto& v : input.free_variables()) free[v] = asg.at(v);
    REQUIRE(pra::evaluate(output, a, asg) == pra::oracle_eval(input, a, free));
  });
}

}  // namespace

TEST_SUITE("pra_qe") {

TEST_CASE("events") {
  std::vector<std::string> xy = {"x", "y"};
  CHECK(pra::event_of(parse_term("and(x,y)", pra::signature()), xy) == pra::event_conjunction(0b11, 2));
  CHECK(pra::event_of(parse_term("or(x,not(x))", pra::signature()), xy) == pra::event_one(2));
  CHECK(pra::event_of(parse_term("sym(x,x)", pra::signature()), xy) == pra::event_zero());
  CHECK(pra::as_conjunction(pra::event_variable(1, 2), 2) == std::uint64_t{0b10});
  CHECK_FALSE(pra::as_conjunction(pra::event_of(parse_term("or(x,y)", pra::signature()), xy), 2));
  for (auto e : {pra::event_zero(), pra::event_one(2), pra::event_conjunction(0b11, 2),
                 pra::event_of(parse_term("sym(x,y)", pra::signature()), xy)})
    CHECK(pra::event_of(pra::event_to_term(e, xy), xy) == e);
}

TEST_CASE("inclusion-exclusion") {
  std::vector<std::string> xy = {"x", "y"};
  CHECK(normal("mu(or(x,y))", xy) == normal("mu(x) + mu(y) - mu(and(x,y))", xy));
  CHECK(normal("mu(not(x))", xy) == normal("1 - mu(x)", xy));
  CHECK(normal("mu(sym(x,y))", xy) == normal("mu(x) + mu(y) - 2*mu(and(x,y))", xy));
  CHECK(normal("d(x,y)", xy) == normal("mu(sym(x,y))", xy));
  CHECK(pra::to_string(normal("mu(not(x))", xy)) == "1 - mu(x)");
  CHECK(pra::to_string(normal("mu(one)", xy)) == "1");
  CHECK(pra::to_string(normal("d(x,x)", xy)) == "0");
  CHECK_THROWS_AS(qf("sup y. mu(y)", xy), InputError);
}

TEST_CASE("splitting on a variable") {
  std::vector<std::string> xy = {"x", "y"};
  pra::PraFormula split = pra::split_on(qf("mu(x)", xy), "y");
  CHECK(pra::expand_inclusion_exclusion(split) == normal("mu(x)", xy));
  CHECK(pra::split_on(split, "y") == split);

  testgen::Rng rng(29);
  for (int i = 0; i < 30; ++i) {
    std::vector<std::string> vars = {"x", "y"};
    Term a = testgen::event(rng, vars), b = testgen::event(rng, vars);
    pra::PraFormula g = pra::from_formula(Formula::sum(Formula::rel(pra::signature(), "mu", {a}),
                                                       Formula::scale(-2, Formula::dist(a, b))),
                                          vars);
    pra::PraFormula s = pra::split_on(g, "y");
    for_each_model(vars, 3, q(1, 2), [&](const pra::FiniteAlgebra& alg, const pra::EventAssignment& asg) {
      REQUIRE(pra::evaluate(s, alg, asg) == pra::evaluate(g, alg, asg));
    });
  }
}

TEST_CASE("eliminating one quantifier") {
  std::vector<std::string> xy = {"x", "y"};
  CHECK(pra::eliminate_sup(qf("mu(and(x,y))", xy), "y") == normal("mu(x)", xy));
  CHECK(pra::eliminate_sup(qf("mu(and(x,y)) - mu(and(not(x),y))", xy), "y") == normal("mu(x)", xy));
  CHECK(pra::eliminate_sup(qf("mu(y)", xy), "y") == normal("1", xy));
  CHECK(pra::eliminate_inf(qf("mu(and(x,y))", xy), "y") == normal("0", xy));

  for (const char* text : {"sup y. mu(and(x,y))", "sup y. mu(and(x,y)) - mu(and(not(x),y))", "sup y. mu(y)"}) {
    Formula in = f(text);
    check_against_oracle(in, pra::qe(in));
  }
}

TEST_CASE("sentences") {
  CHECK(pra::qe(f("sup x. inf y. mu(sym(x,y))")) == pra::PraFormula({"x", "y"}, 0));
  CHECK(pra::qe(f("sup x. mu(x)")) == pra::PraFormula({"x"}, 1));
  CHECK(pra::qe(f("mu(one)")).constant() == 1);
  CHECK(pra::qe(f("sup x. d(x,x)")).constant() == 0);

  // The minimizing x is 1, which kills mu(y) - mu(x and y) for every y.
  Formula regression = f("inf x. sup y. mu(y) - mu(and(x,y))");
  pra::PraFormula r = pra::qe(regression);
  CHECK(r.is_constant());
  CHECK(r.constant() == 0);
  check_against_oracle(regression, r);
}

TEST_CASE("random formulas agree with the oracle") {
  testgen::Rng rng(31);
  for (int i = 0; i < 40; ++i) {
    Formula in = testgen::pra_formula(rng);
    pra::PraFormula out = pra::qe(in);
    for (const auto& v : out.mentioned_variables()) CHECK(in.is_free(v));
    check_against_oracle(in, out, 2);
    CHECK(pra::from_formula(pra::to_formula(out), out.variables()) == out);
  }
}

TEST_CASE("finite algebras") {
  pra::FiniteAlgebra a({q(1, 4), q(3, 4)});
  CHECK(a.events() == 4);
  CHECK(a.measure(0b10) == q(3, 4));
  CHECK(a.point_name(0b10) == "e01");
  FiniteStructure m = a.as_structure();
  CHECK(m.distance(0b01, 0b10) == 1);
  CHECK(m.distance(0b00, 0b10) == q(3, 4));
  CHECK_THROWS_AS(pra::FiniteAlgebra({q(1, 2)}), InputError);
  CHECK(pra::weight_grid(2, q(1, 2)).size() == 4);
}

}
