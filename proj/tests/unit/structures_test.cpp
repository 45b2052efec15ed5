#include "common.hpp"
#include "support/generators.hpp"

#include "acl/generators.hpp"
#include "acl/pra.hpp"

#include <algorithm>

using namespace acl;
using unit::q;

namespace {

// Exhaustive rendezvous values straight from the metric matrix.
std::pair<Rational, Rational> rendezvous_oracle(const FiniteStructure& m) {
  const std::size_t n = m.size();
  Rational lower = 0, upper = 2;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Rational lo = 2, hi = 0;
      for (std::size_t y = 0; y < n; ++y) {
        Rational v = (m.distance(a, y) + m.distance(b, y)) / 2;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      lower = std::max(lower, lo);
      upper = std::min(upper, hi);
    }
  return {lower, upper};
}

}  // namespace

TEST_SUITE("structures") {

TEST_CASE("validation") {
  CHECK(validate(generators::two_point()).valid());

  auto bad = validate(unit::two_point_r(1, 1, 0, q(1, 2)));
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].kind == "lipschitz");
  CHECK(bad.violations[0].amount == q(1, 2));

  Signature empty;
  FiniteStructure triangle(empty, {"a", "b", "c"}, {0, q(1, 4), 1, q(1, 4), 0, q(1, 4), 1, q(1, 4), 0});
  auto t = validate(triangle);
  REQUIRE_FALSE(t.valid());
  CHECK(std::any_of(t.violations.begin(), t.violations.end(),
                    [](const Violation& v) { return v.kind == "triangle" && v.amount == q(1, 2); }));

  FiniteStructure asym(empty, {"a", "b"}, {0, 1, q(1, 2), 0});
  CHECK_FALSE(validate(asym).valid());
  FiniteStructure wide(empty, {"a", "b"}, {0, 2, 2, 0});
  CHECK_FALSE(validate(wide).valid());

  CHECK(validate(pra::FiniteAlgebra({q(1, 2), q(1, 2)}).as_structure()).valid());
  CHECK(validate(pra::FiniteAlgebra::uniform(1).as_structure()).valid());

  testgen::Rng rng(11);
  for (int i = 0; i < 50; ++i) CHECK(validate(testgen::structure(rng, 1 + i % 4)).valid());
}

TEST_CASE("L^p triangle inequality through powers") {
  CHECK(root_triangle_holds(4, 1, 1, 2));
  CHECK_FALSE(root_triangle_holds(9, 1, 1, 2));
  CHECK(root_triangle_holds(8, 1, 1, 3));
  CHECK_FALSE(root_triangle_holds(q(81, 10), 1, 1, 3));
}

TEST_CASE("missing interpretations are input errors") {
  Signature sig;
  sig.add({"R", SymbolKind::Relation, 1, 1});
  FiniteStructure m(sig, {"a"}, {0});
  CHECK_THROWS_AS(validate(m), InputError);
}

TEST_CASE("quotient") {
  Signature empty;
  FiniteStructure m(empty, {"a", "b", "c"}, {0, 0, 1, 0, 0, 1, 1, 1, 0});
  auto r = quotient(m);
  CHECK(r.structure.size() == 2);
  CHECK(r.class_of == std::vector<std::size_t>{0, 0, 1});
  CHECK(r.structure.points() == std::vector<std::string>{"a", "c"});

  auto id = quotient(generators::interval(3));
  CHECK(id.structure.size() == 3);
  CHECK(id.class_of == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("evaluation") {
  FiniteStructure m = generators::interval(3);
  Signature empty;
  Formula f = parse_formula("sup y. d(x,y)", empty);
  std::vector<Rational> values = eval_all(m, f, {"x"});
  for (std::size_t x = 0; x < 3; ++x) CHECK(values[x] == q(1, 2) + m.distance(x, 1));

  CHECK(eval(m, parse_formula("inf x. sup y. d(x,y)", empty)) == q(1, 2));
  CHECK(eval(m, parse_formula("min(d(x,y), 1/4)", empty), {{"x", 0}, {"y", 2}}) == q(1, 4));
  CHECK(eval(m, parse_formula("d(x,y)", empty), {{"x", 0}, {"y", 1}}, 2) == q(1, 4));
  CHECK_THROWS_AS(eval(m, f), EvalError);

  FiniteStructure r = unit::two_point_r(1, 1, 0);
  CHECK(eval(r, parse_formula("sup x. R(x) - inf x. R(x)", r.signature())) == 1);
}

TEST_CASE("condition margins") {
  FiniteStructure m = generators::interval(3);
  Signature empty;
  auto refl = check_condition_universally(m, parse_condition("d(x,x) <= 0", empty));
  CHECK(refl.holds);
  CHECK(refl.margin == 0);

  auto bad = check_condition(m, parse_condition("1 <= 0", empty));
  CHECK_FALSE(bad.holds);
  CHECK(bad.margin == -1);

  FiniteStructure alg = pra::FiniteAlgebra::uniform(1).as_structure();
  for (const auto& c : parse_conditions("mu(and(x,y)) + mu(or(x,y)) = mu(x) + mu(y)", pra::signature())) {
    auto r = check_condition_universally(alg, c);
    CHECK(r.holds);
    CHECK(r.margin == 0);
  }
}

TEST_CASE("rendezvous values") {
  auto two = rendezvous_value(generators::two_point(), 2);
  CHECK(two.lower == q(1, 2));
  CHECK(two.upper == q(1, 2));

  FiniteStructure one(Signature{}, {"a"}, {0});
  for (unsigned n = 1; n <= 3; ++n) {
    auto v = rendezvous_value(one, n);
    CHECK(v.lower == 0);
    CHECK(v.upper == 0);
  }

  for (std::size_t size : {3, 5, 8}) {
    FiniteStructure m = size == 8 ? generators::circle_geodesic(8) : generators::interval(size);
    auto v = rendezvous_value(m, 2);
    auto oracle = rendezvous_oracle(m);
    CHECK(v.lower == oracle.first);
    CHECK(v.upper == oracle.second);
  }

  auto circle = rendezvous_value(generators::circle_geodesic(64), 2);
  CHECK(abs_value(circle.upper - circle.lower) <= q(1, 64));
  CHECK(circle.lower == q(1, 2));
  CHECK(circle.upper == q(1, 2));
}

TEST_CASE("generators") {
  for (const auto& m : {generators::interval(5), generators::circle_geodesic(12), generators::cantor(3),
                        generators::circle_chordal(16), generators::sphere_chordal(20),
                        generators::sphere_geodesic(20)}) {
    CHECK(validate(m).valid());
    Rational diameter = *std::max_element(m.metric().begin(), m.metric().end());
    CHECK(diameter <= 1);
  }
  CHECK(generators::cantor(2).size() == 5);
  CHECK(generators::circle_geodesic(4).distance(0, 2) == 1);
  CHECK(generators::circle_geodesic(4).distance(0, 1) == q(1, 2));
}

}
