#include "acl/proofcheck.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <variant>

namespace acl {

std::size_t ProofNode::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

std::size_t ProofNode::depth() const {
  std::size_t d = 0;
  for (const auto& p : premises) d = std::max(d, p.depth());
  return 1 + d;
}

std::string path_to_string(const std::vector<std::size_t>& path) {
  std::string out = "root";
  for (auto i : path) out += "/" + std::to_string(i);
  return out;
}

namespace {

// Variable names and function/relation symbols bind as strings.
using Binding = std::variant<Rational, Formula, Term, std::string>;
using Bindings = std::map<std::string, Binding>;

struct Fail {
  std::string reason;
};

using Match = std::variant<Bindings, Fail>;

bool failed(const Match& m) { return std::holds_alternative<Fail>(m); }

Match fail(std::string reason) { return Fail{std::move(reason)}; }

std::string show(const Formula& f) { return "'" + to_string(f) + "'"; }

std::optional<Rational> num(const Formula& f) { return f.numeral_value(); }

bool is_zero_numeral(const Formula& f) {
  auto v = num(f);
  return v && *v == 0;
}

Formula neg(const Formula& f) { return Formula::scale(-1, f); }

Formula tuple_distance_formula(const std::vector<Term>& a, const std::vector<Term>& b) {
  Formula out = Formula::dist(a.at(0), b.at(0));
  for (std::size_t i = 1; i < a.size(); ++i) out = Formula::sum(out, Formula::dist(a[i], b[i]));
  return out;
}

// Equality schema l = r, tried in both orientations.
using EqualitySchema = std::function<Match(const Formula& l, const Formula& r)>;

Match either_way(const Condition& c, const EqualitySchema& schema) {
  Match m = schema(c.lhs, c.rhs);
  if (!failed(m)) return m;
  Match flipped = schema(c.rhs, c.lhs);
  if (!failed(flipped)) return flipped;
  return m;
}

Match expect(const Formula& expected, const Formula& actual, Bindings b) {
  if (!alpha_equivalent(expected, actual)) return fail("expected " + show(expected) + ", found " + show(actual));
  return b;
}

std::optional<Term> term_candidate(const Term& pattern, const Term& actual, const std::string& x) {
  if (pattern.kind() == Term::Kind::Variable) {
    if (pattern.name() == x) return actual;
    return std::nullopt;
  }
  if (pattern.kind() != Term::Kind::Apply || actual.kind() != Term::Kind::Apply ||
      pattern.args().size() != actual.args().size())
    return std::nullopt;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (auto t = term_candidate(pattern.args()[i], actual.args()[i], x)) return t;
  return std::nullopt;
}

// The term standing where the first free x of `pattern` stands in `actual`.
std::optional<Term> substitution_candidate(const Formula& pattern, const Formula& actual, const std::string& x) {
  if (pattern.kind() != actual.kind()) return std::nullopt;
  switch (pattern.kind()) {
    case Formula::Kind::One: return std::nullopt;
    case Formula::Kind::Dist:
    case Formula::Kind::Rel:
      if (pattern.terms().size() != actual.terms().size()) return std::nullopt;
      for (std::size_t i = 0; i < pattern.terms().size(); ++i)
        if (auto t = term_candidate(pattern.terms()[i], actual.terms()[i], x)) return t;
      return std::nullopt;
    case Formula::Kind::Sum:
    case Formula::Kind::Min:
    case Formula::Kind::Max:
      if (auto t = substitution_candidate(pattern.left(), actual.left(), x)) return t;
      return substitution_candidate(pattern.right(), actual.right(), x);
    case Formula::Kind::Scale: return substitution_candidate(pattern.body(), actual.body(), x);
    case Formula::Kind::Sup:
    case Formula::Kind::Inf:
      if (pattern.variable() == x) return std::nullopt;
      return substitution_candidate(pattern.body(), actual.body(), x);
  }
  return std::nullopt;
}

bool is_atom(const Formula& f) { return f.kind() == Formula::Kind::Rel || f.kind() == Formula::Kind::Dist; }

Match match_axiom(int n, const Condition& c, const std::map<std::string, std::string>& inst, const Signature& sig) {
  using K = Formula::Kind;
  switch (n) {
    case 1:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Sum) return fail("A1 needs a sum of numerals");
        auto a = num(l.left()), b = num(l.right()), s = num(r);
        if (!a || !b || !s) return fail("A1 relates numerals only");
        if (*a + *b != *s) return fail("A1: " + to_string(*a) + " + " + to_string(*b) + " is not " + to_string(*s));
        return Bindings{{"r1", *a}, {"r2", *b}, {"r", *s}};
      });
    case 2:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Scale) return fail("A2 needs a scaled numeral");
        auto b = num(l.body()), s = num(r);
        if (!b || !s) return fail("A2 relates numerals only");
        if (l.scalar() * *b != *s)
          return fail("A2: " + to_string(l.scalar()) + " * " + to_string(*b) + " is not " + to_string(*s));
        return Bindings{{"r1", l.scalar()}, {"r2", *b}, {"r", *s}};
      });
    case 3: {
      auto a = num(c.lhs), b = num(c.rhs);
      if (!a || !b) return fail("A3 compares numerals only");
      if (*a > *b) return fail("A3: " + to_string(*a) + " <= " + to_string(*b) + " is false");
      return Bindings{{"r", *a}, {"s", *b}};
    }
    case 4:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Sum || l.right().kind() != K::Sum) return fail("A4 needs phi + (psi + theta)");
        const auto &phi = l.left(), &psi = l.right().left(), &theta = l.right().right();
        return expect(Formula::sum(Formula::sum(phi, psi), theta), r, {{"phi", phi}, {"psi", psi}, {"theta", theta}});
      });
    case 5:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Sum) return fail("A5 needs a sum");
        return expect(Formula::sum(l.right(), l.left()), r, {{"phi", l.left()}, {"psi", l.right()}});
      });
    case 6:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Sum || !is_zero_numeral(l.left())) return fail("A6 needs 0 + phi");
        return expect(l.right(), r, {{"phi", l.right()}});
      });
    case 7:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Scale || l.body().kind() != K::Sum) return fail("A7 needs r(phi + psi)");
        const auto &phi = l.body().left(), &psi = l.body().right();
        return expect(Formula::sum(Formula::scale(l.scalar(), phi), Formula::scale(l.scalar(), psi)), r,
                      {{"r", l.scalar()}, {"phi", phi}, {"psi", psi}});
      });
    case 8:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Scale) return fail("A8 needs (r+s)phi");
        if (r.kind() != K::Sum || r.left().kind() != K::Scale || r.right().kind() != K::Scale)
          return fail("A8 needs r phi + s phi");
        const Rational &a = r.left().scalar(), &b = r.right().scalar();
        if (a + b != l.scalar())
          return fail("A8: " + to_string(a) + " + " + to_string(b) + " is not " + to_string(l.scalar()));
        const auto& phi = l.body();
        return expect(Formula::sum(Formula::scale(a, phi), Formula::scale(b, phi)), r,
                      {{"r", a}, {"s", b}, {"phi", phi}});
      });
    case 9:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Scale || l.body().kind() != K::Scale) return fail("A9 needs r(s phi)");
        const Rational &a = l.scalar(), &b = l.body().scalar();
        const auto& phi = l.body().body();
        return expect(Formula::scale(a * b, phi), r, {{"r", a}, {"s", b}, {"phi", phi}});
      });
    case 10:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Scale || l.scalar() != 1) return fail("A10 needs 1 phi");
        return expect(l.body(), r, {{"phi", l.body()}});
      });
    case 11:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Scale || l.scalar() != 0) return fail("A11 needs 0 phi");
        if (!is_zero_numeral(r)) return fail("A11: expected the numeral 0, found " + show(r));
        return Bindings{{"phi", l.body()}};
      });
    case 12: {
      if (c.rhs.kind() != K::Sup) return fail("A12 needs sup_x phi on the right");
      const std::string& x = c.rhs.variable();
      const Formula& phi = c.rhs.body();
      std::optional<Term> t;
      if (auto it = inst.find("t"); it != inst.end()) {
        try {
          t = parse_term(it->second, sig);
        } catch (const InputError& e) {
          return fail("malformed instantiation of 't': " + std::string(e.what()));
        }
      } else if (phi.is_free(x)) {
        t = substitution_candidate(phi, c.lhs, x);
        if (!t) return fail("A12: " + show(c.lhs) + " is not an instance of " + show(phi));
      } else {
        t = Term::variable(x);
      }
      try {
        return expect(substitute(phi, x, *t), c.lhs, {{"x", x}, {"phi", phi}, {"t", *t}});
      } catch (const CaptureError&) {
        return fail("A12: substituting " + to_string(*t) + " for " + x + " in " + show(phi) + " is not correct");
      }
    }
    case 13:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Sup || l.body().kind() != K::Sum) return fail("A13 needs sup_x(phi + psi)");
        const auto& x = l.variable();
        const auto &phi = l.body().left(), &psi = l.body().right();
        if (psi.is_free(x)) return fail("A13: " + x + " is free in " + show(psi));
        return expect(Formula::sum(Formula::sup(x, phi), psi), r, {{"x", x}, {"phi", phi}, {"psi", psi}});
      });
    case 14: {
      const auto& l = c.lhs;
      if (l.kind() != K::Sup || l.body().kind() != K::Sum) return fail("A14 needs sup_x(phi + psi) on the left");
      const auto& x = l.variable();
      const auto &phi = l.body().left(), &psi = l.body().right();
      return expect(Formula::sum(Formula::sup(x, phi), Formula::sup(x, psi)), c.rhs,
                    {{"x", x}, {"phi", phi}, {"psi", psi}});
    }
    case 15:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Sup || l.body().kind() != K::Scale) return fail("A15 needs sup_x(r phi)");
        const auto& x = l.variable();
        const Rational& s = l.body().scalar();
        if (s < 0) return fail("A15 needs r >= 0, found " + to_string(s));
        const auto& phi = l.body().body();
        return expect(Formula::scale(s, Formula::sup(x, phi)), r, {{"x", x}, {"r", s}, {"phi", phi}});
      });
    case 16:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Sup) return fail("A16 needs sup_x phi");
        const auto& x = l.variable();
        const auto& phi = l.body();
        Bindings b{{"x", x}, {"phi", phi}};
        Match plain = expect(neg(Formula::inf(x, neg(phi))), r, b);
        if (!failed(plain)) return plain;
        return expect(neg(Formula::inf(x, negate(phi))), r, b);
      });
    case 17:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Dist || !(l.terms()[0] == l.terms()[1])) return fail("A17 needs d(t,t)");
        if (!is_zero_numeral(r)) return fail("A17: expected the numeral 0, found " + show(r));
        return Bindings{{"t", l.terms()[0]}};
      });
    case 18:
      return either_way(c, [](const Formula& l, const Formula& r) -> Match {
        if (l.kind() != K::Dist) return fail("A18 needs d(s,t)");
        return expect(Formula::dist(l.terms()[1], l.terms()[0]), r, {{"s", l.terms()[0]}, {"t", l.terms()[1]}});
      });
    case 19: {
      if (c.lhs.kind() != K::Dist || c.rhs.kind() != K::Sum || c.rhs.left().kind() != K::Dist)
        return fail("A19 needs d(s,u) <= d(s,t) + d(t,u)");
      const Term &s = c.lhs.terms()[0], &u = c.lhs.terms()[1], &t = c.rhs.left().terms()[1];
      return expect(Formula::sum(Formula::dist(s, t), Formula::dist(t, u)), c.rhs, {{"s", s}, {"t", t}, {"u", u}});
    }
    case 20: {
      const auto& l = c.lhs;
      if (l.kind() != K::Dist || l.terms()[0].kind() != Term::Kind::Apply || l.terms()[1].kind() != Term::Kind::Apply ||
          l.terms()[0].name() != l.terms()[1].name() || l.terms()[0].args().size() != l.terms()[1].args().size())
        return fail("A20 needs d(F(s...), F(t...))");
      const Term &a = l.terms()[0], &b = l.terms()[1];
      return expect(Formula::scale(a.symbol_lipschitz(), tuple_distance_formula(a.args(), b.args())), c.rhs,
                    {{"F", a.name()}});
    }
    case 21: {
      const auto& l = c.lhs;
      if (l.kind() != K::Sum || l.right().kind() != K::Scale || l.right().scalar() != -1)
        return fail("A21 needs R(s...) - R(t...)");
      const auto &a = l.left(), &b = l.right().body();
      if (!is_atom(a) || a.kind() != b.kind() || (a.kind() == K::Rel && a.symbol() != b.symbol()))
        return fail("A21 needs the same relation on both sides");
      const Rational lambda = a.kind() == K::Dist ? Rational(1) : a.symbol_lipschitz();
      return expect(Formula::scale(lambda, tuple_distance_formula(a.terms(), b.terms())), c.rhs,
                    {{"R", a.kind() == K::Dist ? std::string("d") : a.symbol()}});
    }
    case 22: {
      if (is_zero_numeral(c.lhs) && is_atom(c.rhs)) return Bindings{};
      if (is_atom(c.lhs)) {
        auto one = num(c.rhs);
        if (one && *one == 1) return Bindings{};
      }
      return fail("A22 needs 0 <= R(t...) or R(t...) <= 1");
    }
    default: return fail("unknown axiom A" + std::to_string(n));
  }
}

std::optional<std::string> verify_inst(const Bindings& b, const std::map<std::string, std::string>& inst,
                                       const Signature& sig) {
  for (const auto& [key, text] : inst) {
    auto it = b.find(key);
    if (it == b.end()) return "unknown metavariable '" + key + "'";
    try {
      bool ok = std::visit(
          [&](const auto& v) -> bool {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Rational>) return parse_rational(text) == v;
            if constexpr (std::is_same_v<V, Formula>) return alpha_equivalent(parse_formula(text, sig), v);
            if constexpr (std::is_same_v<V, Term>) return parse_term(text, sig) == v;
            if constexpr (std::is_same_v<V, std::string>) return text == v;
          },
          it->second);
      if (!ok) return "instantiation of '" + key + "' does not match the conclusion";
    } catch (const InputError& e) {
      return "malformed instantiation of '" + key + "': " + e.what();
    }
  }
  return std::nullopt;
}

Match match_rule(int n, const ProofNode& node, const Theory& gamma) {
  const auto& c = node.conclusion;
  const auto& ps = node.premises;
  const std::size_t want = n == 1 || n == 3 ? 2 : 1;
  if (ps.size() != want)
    return fail("R" + std::to_string(n) + " takes " + std::to_string(want) + " premise(s), got " +
                std::to_string(ps.size()));
  switch (n) {
    case 1: {
      const auto &a = ps[0].conclusion, &b = ps[1].conclusion;
      if (!alpha_equivalent(a.rhs, b.lhs))
        return fail("R1: premise right side " + show(a.rhs) + " differs from " + show(b.lhs));
      if (!alpha_equivalent(Condition{a.lhs, b.rhs}, c))
        return fail("R1: expected conclusion '" + to_string(Condition{a.lhs, b.rhs}) + "'");
      return Bindings{};
    }
    case 2: {
      const auto& p = ps[0].conclusion;
      if (c.lhs.kind() != Formula::Kind::Sum) return fail("R2 concludes phi + theta <= psi + theta");
      const Formula& theta = c.lhs.right();
      const Condition expected{Formula::sum(p.lhs, theta), Formula::sum(p.rhs, theta)};
      if (!alpha_equivalent(expected, c)) return fail("R2: expected conclusion '" + to_string(expected) + "'");
      return Bindings{{"theta", theta}};
    }
    case 3: {
      const auto &sign = ps[0].conclusion, &p = ps[1].conclusion;
      auto zero = num(sign.lhs), r = num(sign.rhs);
      if (!zero || *zero != 0 || !r) return fail("R3: first premise must be 0 <= r for a numeral r");
      const Condition expected{Formula::scale(*r, p.lhs), Formula::scale(*r, p.rhs)};
      if (!alpha_equivalent(expected, c)) return fail("R3: expected conclusion '" + to_string(expected) + "'");
      return Bindings{{"r", *r}};
    }
    case 4: {
      if (c.lhs.kind() != Formula::Kind::Sup || c.rhs.kind() != Formula::Kind::Sup)
        return fail("R4 concludes sup_x phi <= sup_x psi");
      const auto& x = c.lhs.variable();
      const auto& p = ps[0].conclusion;
      const Condition expected{Formula::sup(x, p.lhs), Formula::sup(x, p.rhs)};
      if (!alpha_equivalent(expected, c)) return fail("R4: expected conclusion '" + to_string(expected) + "'");
      if (gamma.free_variables().count(x)) return fail("R4: " + x + " is free in the hypotheses");
      return Bindings{{"x", x}};
    }
    default: return fail("unknown rule R" + std::to_string(n));
  }
}

std::optional<int> tag_number(const std::string& by, char prefix) {
  if (by.size() < 2 || by[0] != prefix) return std::nullopt;
  int n = 0;
  for (std::size_t i = 1; i < by.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(by[i])) || i > 3) return std::nullopt;
    n = n * 10 + (by[i] - '0');
  }
  return n;
}

std::optional<std::string> check_one(const ProofNode& node, const Theory& gamma, const Signature& sig) {
  Match m = fail("unknown justification '" + node.by + "'");
  if (node.by.rfind("hyp:", 0) == 0) {
    if (!node.premises.empty()) return "a hypothesis has no premises";
    std::size_t i = 0;
    try {
      std::size_t used = 0;
      i = std::stoul(node.by.substr(4), &used);
      if (used != node.by.size() - 4) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      return "malformed hypothesis reference '" + node.by + "'";
    }
    if (i >= gamma.conditions.size()) return "hypothesis " + std::to_string(i) + " does not exist";
    if (!alpha_equivalent(gamma.conditions[i], node.conclusion))
      return "conclusion differs from hypothesis " + std::to_string(i) + " '" + to_string(gamma.conditions[i]) + "'";
    return std::nullopt;
  }
  if (auto a = tag_number(node.by, 'A'); a && *a >= 1 && *a <= 22) {
    if (!node.premises.empty()) return "axiom A" + std::to_string(*a) + " has no premises";
    m = match_axiom(*a, node.conclusion, node.inst, sig);
  } else if (auto r = tag_number(node.by, 'R'); r && *r >= 1 && *r <= 4) {
    m = match_rule(*r, node, gamma);
  }
  if (auto* f = std::get_if<Fail>(&m)) return f->reason;
  return verify_inst(std::get<Bindings>(m), node.inst, sig);
}

void check_tree(const ProofNode& node, const Theory& gamma, const Signature& sig, std::vector<std::size_t>& path,
                CheckResult& out) {
  if (auto why = check_one(node, gamma, sig)) {
    out = CheckResult{false, path, *why};
    return;
  }
  for (std::size_t i = 0; i < node.premises.size() && out.valid; ++i) {
    path.push_back(i);
    check_tree(node.premises[i], gamma, sig, path, out);
    path.pop_back();
  }
}

void collect_conclusions(const ProofNode& node, std::vector<const Condition*>& out) {
  out.push_back(&node.conclusion);
  for (const auto& p : node.premises) collect_conclusions(p, out);
}

}  // namespace

CheckResult check(const ProofNode& proof, const Theory& gamma, const Signature& sig) {
  CheckResult out;
  std::vector<std::size_t> path;
  check_tree(proof, gamma, sig, path, out);
  return out;
}

ProbeReport soundness_probe(const ProofNode& proof, const Theory& gamma, const std::vector<FiniteStructure>& family) {
  std::vector<const Condition*> conclusions;
  collect_conclusions(proof, conclusions);
  ProbeReport report;
  for (const auto& m : family) {
    ++report.structures;
    bool model = std::all_of(gamma.conditions.begin(), gamma.conditions.end(),
                             [&](const Condition& c) { return check_condition_universally(m, c).holds; });
    if (!model) continue;
    ++report.models;
    for (const Condition* c : conclusions) {
      const auto result = check_condition_universally(m, *c);
      if (!result.holds)
        throw SoundnessViolation("derived condition '" + to_string(*c) + "' fails with margin " +
                                 to_string(result.margin) + " in a model of the hypotheses");
      if (c == &proof.conclusion && (!report.min_margin || result.margin < *report.min_margin))
        report.min_margin = result.margin;
    }
  }
  return report;
}

Formula normalize_zero_scalings(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::One:
    case Formula::Kind::Dist:
    case Formula::Kind::Rel: return f;
    case Formula::Kind::Sum: return Formula::sum(normalize_zero_scalings(f.left()), normalize_zero_scalings(f.right()));
    case Formula::Kind::Min: return Formula::min(normalize_zero_scalings(f.left()), normalize_zero_scalings(f.right()));
    case Formula::Kind::Max: return Formula::max(normalize_zero_scalings(f.left()), normalize_zero_scalings(f.right()));
    case Formula::Kind::Scale:
      if (f.scalar() == 0) return Formula::numeral(0);
      return Formula::scale(f.scalar(), normalize_zero_scalings(f.body()));
    case Formula::Kind::Sup: return Formula::sup(f.variable(), normalize_zero_scalings(f.body()));
    case Formula::Kind::Inf: return Formula::inf(f.variable(), normalize_zero_scalings(f.body()));
  }
  return f;
}

namespace {

ProofNode step(Formula lhs, Formula rhs, std::string by, std::vector<ProofNode> premises = {}) {
  return ProofNode{Condition{std::move(lhs), std::move(rhs)}, std::move(by), std::move(premises), {}};
}

// R1 folded over a chain a <= b, b <= c, ...
ProofNode chain(std::vector<ProofNode> links) {
  ProofNode acc = std::move(links.at(0));
  for (std::size_t i = 1; i < links.size(); ++i) {
    Condition c{acc.conclusion.lhs, links[i].conclusion.rhs};
    acc = ProofNode{std::move(c), "R1", {std::move(acc), std::move(links[i])}, {}};
  }
  return acc;
}

}  // namespace

Derivation zero_scalar_derivation(const Rational& r, const Formula& phi) {
  if (!is_atom(phi)) throw InputError("the derivation needs an atomic formula");
  const auto n = [](const Rational& v) { return Formula::numeral(v); };
  const Formula zero = n(0), one = Formula::one();
  const Formula rphi = Formula::scale(r, phi);
  const Formula minus_phi = Formula::scale(-1, phi);
  const Rational half(1, 2);

  Theory gamma{{Condition{n(r), zero}, Condition{zero, n(r)}}};
  ProofNode h0 = step(n(r), zero, "hyp:0");
  ProofNode h1 = step(zero, n(r), "hyp:1");

  // r phi <= r, from 0 <= r and phi <= 1.
  ProofNode upper = step(rphi, n(r), "R3", {h1, step(phi, one, "A22")});

  // 0 <= -r, from r <= 0.
  ProofNode neg_r = chain({
      step(zero, Formula::sum(n(r), n(-r)), "A1"),
      step(Formula::sum(n(r), n(-r)), Formula::sum(zero, n(-r)), "R2", {h0}),
      step(Formula::sum(zero, n(-r)), n(-r), "A6"),
  });

  // -phi <= 1, from 0 <= phi.
  ProofNode minus_phi_bound = chain({
      step(minus_phi, Formula::sum(zero, minus_phi), "A6"),
      step(Formula::sum(zero, minus_phi), Formula::sum(phi, minus_phi), "R2", {step(zero, phi, "A22")}),
      step(Formula::sum(phi, minus_phi), Formula::sum(Formula::scale(1, phi), minus_phi), "R2",
           {step(phi, Formula::scale(1, phi), "A10")}),
      step(Formula::sum(Formula::scale(1, phi), minus_phi), Formula::scale(0, phi), "A8"),
      step(Formula::scale(0, phi), zero, "A11"),
      step(zero, one, "A3"),
  });

  // r phi <= -r, from (-r)(-phi) <= (-r) 1.
  ProofNode lower = chain({
      step(rphi, Formula::scale(-r, minus_phi), "A9"),
      step(Formula::scale(-r, minus_phi), n(-r), "R3", {neg_r, minus_phi_bound}),
  });

  // r phi + r phi <= 0.
  ProofNode doubled = chain({
      step(Formula::sum(rphi, rphi), Formula::sum(n(r), rphi), "R2", {upper}),
      step(Formula::sum(n(r), rphi), Formula::sum(rphi, n(r)), "A5"),
      step(Formula::sum(rphi, n(r)), Formula::sum(n(-r), n(r)), "R2", {lower}),
      step(Formula::sum(n(-r), n(r)), zero, "A1"),
  });

  const Formula half_rphi = Formula::scale(half, rphi);
  ProofNode proof = chain({
      step(rphi, Formula::scale(1, rphi), "A10"),
      step(Formula::scale(1, rphi), Formula::sum(half_rphi, half_rphi), "A8"),
      step(Formula::sum(half_rphi, half_rphi), Formula::scale(half, Formula::sum(rphi, rphi)), "A7"),
      step(Formula::scale(half, Formula::sum(rphi, rphi)), Formula::scale(half, zero), "R3",
           {step(zero, n(half), "A3"), doubled}),
      step(Formula::scale(half, zero), zero, "A9"),
  });
  return Derivation{std::move(gamma), std::move(proof)};
}

}  // namespace acl
