#include "acl/pra.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <tuple>

namespace acl::pra {

Signature signature() {
  Signature sig;
  sig.add({"zero", SymbolKind::Constant, 0, Rational(0)});
  sig.add({"one", SymbolKind::Constant, 0, Rational(0)});
  sig.add({"and", SymbolKind::Function, 2, Rational(1)});
  sig.add({"or", SymbolKind::Function, 2, Rational(1)});
  sig.add({"sym", SymbolKind::Function, 2, Rational(1)});
  sig.add({"not", SymbolKind::Function, 1, Rational(1)});
  sig.add({"mu", SymbolKind::Relation, 1, Rational(1)});
  return sig;
}

namespace {

void check_width(std::size_t n) {
  if (n > max_variables)
    throw InputError("events over " + std::to_string(n) + " variables exceed the limit of " +
                     std::to_string(max_variables));
}

std::size_t index_of(const std::vector<std::string>& vars, const std::string& v) {
  auto it = std::find(vars.begin(), vars.end(), v);
  if (it == vars.end()) throw InputError("variable '" + v + "' is not in the ambient variable list");
  return static_cast<std::size_t>(it - vars.begin());
}

bool has_minterm(const EventTerm& e, std::size_t m) { return (e.minterms >> m) & 1u; }

}  // namespace

EventTerm event_zero() { return EventTerm{0}; }

EventTerm event_one(std::size_t n) {
  check_width(n);
  const std::size_t count = minterm_count(n);
  return EventTerm{count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1};
}

EventTerm event_variable(std::size_t index, std::size_t n) {
  check_width(n);
  EventTerm e;
  for (std::size_t m = 0; m < minterm_count(n); ++m)
    if ((m >> index) & 1u) e.minterms |= std::uint64_t{1} << m;
  return e;
}

EventTerm event_conjunction(std::uint64_t subset, std::size_t n) {
  check_width(n);
  EventTerm e;
  for (std::size_t m = 0; m < minterm_count(n); ++m)
    if ((m & subset) == subset) e.minterms |= std::uint64_t{1} << m;
  return e;
}

std::optional<std::uint64_t> as_conjunction(const EventTerm& e, std::size_t n) {
  for (std::uint64_t s = 0; s < minterm_count(n); ++s)
    if (event_conjunction(s, n) == e) return s;
  return std::nullopt;
}

EventTerm event_of(const Term& t, const std::vector<std::string>& vars) {
  const std::size_t n = vars.size();
  switch (t.kind()) {
    case Term::Kind::Variable: return event_variable(index_of(vars, t.name()), n);
    case Term::Kind::Constant:
      if (t.name() == "zero") return event_zero();
      if (t.name() == "one") return event_one(n);
      throw InputError("unknown probability-algebra constant '" + t.name() + "'");
    case Term::Kind::Apply: {
      const auto& args = t.args();
      if (t.name() == "not" && args.size() == 1)
        return EventTerm{~event_of(args[0], vars).minterms & event_one(n).minterms};
      if (args.size() != 2) break;
      const auto a = event_of(args[0], vars).minterms, b = event_of(args[1], vars).minterms;
      if (t.name() == "and") return EventTerm{a & b};
      if (t.name() == "or") return EventTerm{a | b};
      if (t.name() == "sym") return EventTerm{a ^ b};
      break;
    }
  }
  throw InputError("'" + to_string(t) + "' is not a probability-algebra term");
}

namespace {

Term conjunction_term(std::uint64_t subset, const std::vector<std::string>& vars, const Signature& sig) {
  std::optional<Term> out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!((subset >> i) & 1u)) continue;
    Term v = Term::variable(vars[i]);
    out = out ? Term::apply(sig, "and", {*out, v}) : v;
  }
  return *out;
}

}  // namespace

Term event_to_term(const EventTerm& e, const std::vector<std::string>& vars) {
  static const Signature sig = signature();
  const std::size_t n = vars.size();
  const EventTerm full = event_one(n);
  if (e.minterms == 0) return Term::constant("zero");
  if (e == full) return Term::constant("one");
  if (auto s = as_conjunction(e, n)) return conjunction_term(*s, vars, sig);
  if (auto s = as_conjunction(EventTerm{~e.minterms & full.minterms}, n))
    return Term::apply(sig, "not", {conjunction_term(*s, vars, sig)});
  std::optional<Term> out;
  for (std::size_t m = 0; m < minterm_count(n); ++m) {
    if (!has_minterm(e, m)) continue;
    std::optional<Term> conj;
    for (std::size_t i = 0; i < n; ++i) {
      Term lit = Term::variable(vars[i]);
      if (!((m >> i) & 1u)) lit = Term::apply(sig, "not", {lit});
      conj = conj ? Term::apply(sig, "and", {*conj, lit}) : lit;
    }
    out = out ? Term::apply(sig, "or", {*out, *conj}) : *conj;
  }
  return *out;
}

PraFormula::PraFormula(std::vector<std::string> vars, Rational constant)
    : vars_(std::move(vars)), constant_(std::move(constant)) {
  check_width(vars_.size());
}

void PraFormula::add_atom(const EventTerm& e, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = atoms_.emplace(e, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) atoms_.erase(it);
  }
}

PraFormula& PraFormula::operator+=(const PraFormula& other) {
  if (other.vars_ != vars_) throw InputError("probability-algebra formulas over different variable lists");
  constant_ += other.constant_;
  for (const auto& [e, c] : other.atoms_) add_atom(e, c);
  return *this;
}

PraFormula PraFormula::scaled(const Rational& r) const {
  PraFormula out(vars_, constant_ * r);
  for (const auto& [e, c] : atoms_) out.add_atom(e, c * r);
  return out;
}

std::set<std::string> PraFormula::mentioned_variables() const {
  std::set<std::string> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (const auto& [e, c] : atoms_) {
      bool depends = false;
      for (std::size_t m = 0; m < minterm_count(vars_.size()) && !depends; ++m)
        depends = has_minterm(e, m) != has_minterm(e, m ^ bit);
      if (depends) {
        out.insert(vars_[i]);
        break;
      }
    }
  }
  return out;
}

PraFormula from_formula(const Formula& f, const std::vector<std::string>& vars) {
  PraFormula out(vars);
  switch (f.kind()) {
    case Formula::Kind::One: out.add_constant(1); return out;
    case Formula::Kind::Dist:
      out.add_atom(EventTerm{event_of(f.terms()[0], vars).minterms ^ event_of(f.terms()[1], vars).minterms}, 1);
      return out;
    case Formula::Kind::Rel:
      if (f.symbol() != "mu" || f.terms().size() != 1)
        throw InputError("'" + f.symbol() + "' is not a probability-algebra relation");
      out.add_atom(event_of(f.terms()[0], vars), 1);
      return out;
    case Formula::Kind::Sum:
      out = from_formula(f.left(), vars);
      out += from_formula(f.right(), vars);
      return out;
    case Formula::Kind::Scale: return from_formula(f.body(), vars).scaled(f.scalar());
    default: throw InputError("'" + to_string(f) + "' is not quantifier-free and affine");
  }
}

PraFormula expand_inclusion_exclusion(const PraFormula& f) {
  const std::size_t n = f.variables().size();
  const std::uint64_t all = minterm_count(n) - 1;
  PraFormula out(f.variables(), f.constant());
  for (const auto& [e, c] : f.atoms()) {
    for (std::uint64_t m = 0; m < minterm_count(n); ++m) {
      if (!has_minterm(e, m)) continue;
      // mu(P and not N) = sum over T subset of N of (-1)^|T| mu(and(P u T)).
      const std::uint64_t negative = all & ~m;
      for (std::uint64_t t = negative;; t = (t - 1) & negative) {
        const Rational coeff = std::popcount(t) % 2 ? Rational(-c) : c;
        const std::uint64_t subset = m | t;
        if (subset == 0) {
          out.add_constant(coeff);
        } else {
          out.add_atom(event_conjunction(subset, n), coeff);
        }
        if (t == 0) break;
      }
    }
  }
  return out;
}

namespace {

// Coefficient of each minterm when every atom is spread over its minterms.
std::vector<Rational> minterm_coefficients(const PraFormula& f) {
  std::vector<Rational> a(minterm_count(f.variables().size()), Rational(0));
  for (const auto& [e, c] : f.atoms())
    for (std::size_t m = 0; m < a.size(); ++m)
      if (has_minterm(e, m)) a[m] += c;
  return a;
}

}  // namespace

PraFormula split_on(const PraFormula& f, const std::string& y) {
  const auto& vars = f.variables();
  if (std::find(vars.begin(), vars.end(), y) == vars.end()) return f;
  const std::size_t bit = std::size_t{1} << index_of(vars, y);
  const auto a = minterm_coefficients(f);
  PraFormula out(vars, f.constant());
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (m & bit) continue;
    const std::uint64_t with_y = std::uint64_t{1} << (m | bit);
    out.add_atom(EventTerm{(std::uint64_t{1} << m) | with_y}, a[m]);
    out.add_atom(EventTerm{with_y}, a[m | bit] - a[m]);
  }
  return out;
}

PraFormula eliminate_sup(const PraFormula& f, const std::string& y) {
  const auto& vars = f.variables();
  if (std::find(vars.begin(), vars.end(), y) == vars.end()) return expand_inclusion_exclusion(f);
  const std::size_t bit = std::size_t{1} << index_of(vars, y);
  const auto split = split_on(f, y);
  PraFormula out(vars, split.constant());
  for (const auto& [e, c] : split.atoms()) {
    // Residue atoms are unions of whole y-pairs; the rest are single minterms
    // s and y, and y is chosen to contain s exactly when c is positive.
    std::uint64_t flipped = 0;
    for (std::size_t m = 0; m < minterm_count(vars.size()); ++m)
      if (has_minterm(e, m)) flipped |= std::uint64_t{1} << (m ^ bit);
    if (flipped == e.minterms) {
      out.add_atom(e, c);
    } else if (c > 0) {
      out.add_atom(EventTerm{e.minterms | flipped}, c);
    }
  }
  return expand_inclusion_exclusion(out);
}

PraFormula eliminate_inf(const PraFormula& f, const std::string& y) {
  return eliminate_sup(f.scaled(-1), y).scaled(-1);
}

namespace {

void collect_term_variables(const Term& t, std::vector<std::string>& out) {
  if (t.kind() == Term::Kind::Variable) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_term_variables(a, out);
}

void collect_variables(const Formula& f, std::vector<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::One: return;
    case Formula::Kind::Dist:
    case Formula::Kind::Rel:
      for (const auto& t : f.terms()) collect_term_variables(t, out);
      return;
    case Formula::Kind::Sum:
    case Formula::Kind::Min:
    case Formula::Kind::Max:
      collect_variables(f.left(), out);
      collect_variables(f.right(), out);
      return;
    case Formula::Kind::Scale: collect_variables(f.body(), out); return;
    case Formula::Kind::Sup:
    case Formula::Kind::Inf:
      if (std::find(out.begin(), out.end(), f.variable()) == out.end()) out.push_back(f.variable());
      collect_variables(f.body(), out);
      return;
  }
}

PraFormula eliminate(const Formula& f, const std::vector<std::string>& vars) {
  switch (f.kind()) {
    case Formula::Kind::One:
    case Formula::Kind::Dist:
    case Formula::Kind::Rel: return expand_inclusion_exclusion(from_formula(f, vars));
    case Formula::Kind::Sum: {
      auto out = eliminate(f.left(), vars);
      out += eliminate(f.right(), vars);
      return out;
    }
    case Formula::Kind::Scale: return eliminate(f.body(), vars).scaled(f.scalar());
    case Formula::Kind::Sup: return eliminate_sup(eliminate(f.body(), vars), f.variable());
    case Formula::Kind::Inf: return eliminate_inf(eliminate(f.body(), vars), f.variable());
    case Formula::Kind::Min:
    case Formula::Kind::Max: break;
  }
  throw InputError("quantifier elimination handles affine formulas only");
}

}  // namespace

PraFormula qe(const Formula& f) {
  if (!f.is_affine()) throw InputError("quantifier elimination handles affine formulas only");
  std::vector<std::string> vars;
  collect_variables(f, vars);
  check_width(vars.size());
  return expand_inclusion_exclusion(eliminate(f, vars));
}

namespace {

// Conjunctions first, by size then by variable order; other events after.
std::vector<std::pair<EventTerm, Rational>> print_order(const PraFormula& f) {
  const std::size_t n = f.variables().size();
  std::vector<std::pair<EventTerm, Rational>> atoms(f.atoms().begin(), f.atoms().end());
  auto key = [n](const EventTerm& e) {
    if (auto s = as_conjunction(e, n)) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < n; ++i)
        if ((*s >> i) & 1u) idx.push_back(i);
      return std::make_tuple(0, idx.size(), idx, e.minterms);
    }
    return std::make_tuple(1, std::size_t{0}, std::vector<std::size_t>{}, e.minterms);
  };
  std::stable_sort(atoms.begin(), atoms.end(), [&](const auto& a, const auto& b) { return key(a.first) < key(b.first); });
  return atoms;
}

}  // namespace

Formula to_formula(const PraFormula& f) {
  static const Signature sig = signature();
  std::optional<Formula> out;
  if (f.constant() != 0 || f.atoms().empty())
    out = f.constant() == 1 ? Formula::one() : Formula::numeral(f.constant());
  for (const auto& [e, c] : print_order(f)) {
    Formula atom = Formula::rel(sig, "mu", {event_to_term(e, f.variables())});
    Formula term = c == 1 ? atom : Formula::scale(c, atom);
    out = out ? Formula::sum(*out, term) : term;
  }
  return *out;
}

std::string to_string(const PraFormula& f) {
  std::string out;
  if (f.constant() != 0 || f.atoms().empty()) out = acl::to_string(f.constant());
  for (const auto& [e, c] : print_order(f)) {
    const std::string atom = "mu(" + to_string(event_to_term(e, f.variables())) + ")";
    const Rational magnitude = abs_value(c);
    const std::string body = magnitude == 1 ? atom : acl::to_string(magnitude) + "*" + atom;
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + body;
    } else {
      out += (c < 0 ? " - " : " + ") + body;
    }
  }
  return out;
}

FiniteAlgebra::FiniteAlgebra(std::vector<Rational> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InputError("an algebra needs at least one atom");
  if (weights_.size() > 16) throw InputError("algebras are limited to 16 atoms");
  Rational total = 0;
  for (const auto& w : weights_) {
    if (w < 0) throw InputError("negative atom weight");
    total += w;
  }
  if (total != 1) throw InputError("atom weights sum to " + acl::to_string(total) + ", not 1");
}

FiniteAlgebra FiniteAlgebra::uniform(std::size_t atoms) {
  std::vector<Rational> w(atoms, Rational(1, static_cast<unsigned long>(atoms)));
  for (auto& x : w) x.canonicalize();
  return FiniteAlgebra(std::move(w));
}

Rational FiniteAlgebra::measure(std::uint64_t event) const {
  Rational out = 0;
  for (std::size_t j = 0; j < atoms(); ++j)
    if ((event >> j) & 1u) out += weights_[j];
  return out;
}

std::string FiniteAlgebra::point_name(std::uint64_t event) const {
  std::string out = "e";
  for (std::size_t j = 0; j < atoms(); ++j) out += ((event >> j) & 1u) ? '1' : '0';
  return out;
}

FiniteStructure FiniteAlgebra::as_structure() const {
  const std::size_t n = events();
  std::vector<std::string> names;
  for (std::size_t e = 0; e < n; ++e) names.push_back(point_name(e));
  std::vector<Rational> atom_measure(n);
  for (std::size_t e = 0; e < n; ++e) atom_measure[e] = measure(e);
  std::vector<Rational> metric(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) metric[a * n + b] = atom_measure[a ^ b];
  FiniteStructure s(signature(), std::move(names), std::move(metric));
  s.set_constant("zero", 0);
  s.set_constant("one", n - 1);
  FunctionTable conj{2, {}}, disj{2, {}}, diff{2, {}}, neg{1, {}};
  for (std::size_t a = 0; a < n; ++a) {
    neg.values.push_back(~a & (n - 1));
    for (std::size_t b = 0; b < n; ++b) {
      conj.values.push_back(a & b);
      disj.values.push_back(a | b);
      diff.values.push_back(a ^ b);
    }
  }
  s.set_function("and", std::move(conj));
  s.set_function("or", std::move(disj));
  s.set_function("sym", std::move(diff));
  s.set_function("not", std::move(neg));
  s.set_relation("mu", RelationTable{1, std::move(atom_measure)});
  return s;
}

std::vector<FiniteAlgebra> weight_grid(std::size_t max_atoms, const Rational& step) {
  const Rational inverse = step > 0 ? Rational(1 / step) : Rational(0);
  if (step <= 0 || inverse.get_den() != 1) throw InputError("grid step must be 1/N");
  const unsigned long parts = inverse.get_num().get_ui();
  std::vector<FiniteAlgebra> out;
  for (std::size_t k = 1; k <= max_atoms; ++k) {
    std::vector<unsigned long> c(k, 0);
    // Enumerate compositions of `parts` into k nonnegative parts.
    std::function<void(std::size_t, unsigned long)> rec = [&](std::size_t i, unsigned long left) {
      if (i + 1 == k) {
        c[i] = left;
        std::vector<Rational> w;
        for (auto x : c) w.push_back(step * Rational(static_cast<long>(x)));
        out.emplace_back(std::move(w));
        return;
      }
      for (unsigned long x = 0; x <= left; ++x) {
        c[i] = x;
        rec(i + 1, left - x);
      }
    };
    rec(0, parts);
  }
  return out;
}

Rational oracle_eval(const Formula& f, const FiniteAlgebra& a, const EventAssignment& asg) {
  Assignment points;
  for (const auto& [v, e] : asg) {
    if (e >= a.events()) throw InputError("event out of range for variable '" + v + "'");
    points[v] = e;
  }
  return eval(a.as_structure(), f, points);
}

Rational evaluate(const PraFormula& f, const FiniteAlgebra& a, const EventAssignment& asg) {
  const auto& vars = f.variables();
  const auto mentioned = f.mentioned_variables();
  // minterm_of[j] is the minterm containing atom j.
  std::vector<std::size_t> minterm_of(a.atoms(), 0);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = asg.find(vars[i]);
    if (it == asg.end()) {
      if (mentioned.count(vars[i])) throw EvalError("no event assigned to '" + vars[i] + "'");
      continue;
    }
    for (std::size_t j = 0; j < a.atoms(); ++j)
      if ((it->second >> j) & 1u) minterm_of[j] |= std::size_t{1} << i;
  }
  Rational out = f.constant();
  for (const auto& [e, c] : f.atoms())
    for (std::size_t j = 0; j < a.atoms(); ++j)
      if (has_minterm(e, minterm_of[j])) out += c * a.weights()[j];
  return out;
}

}  // namespace acl::pra
