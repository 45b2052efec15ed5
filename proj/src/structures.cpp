#include "acl/structures.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace acl {

// ---------------------------------------------------------------------------
// FiniteStructure

FiniteStructure::FiniteStructure(Signature sig, std::vector<std::string> points, std::vector<Rational> metric,
                                 unsigned power)
    : sig_(std::move(sig)), points_(std::move(points)), metric_(std::move(metric)), power_(power) {
  if (power_ == 0) throw InputError("metric power must be a positive integer");
  if (metric_.size() != points_.size() * points_.size())
    throw InputError("metric has " + std::to_string(metric_.size()) + " entries, expected " +
                     std::to_string(points_.size() * points_.size()));
  std::set<std::string> seen;
  for (const auto& p : points_)
    if (!seen.insert(p).second) throw InputError("duplicate point '" + p + "'");
}

std::size_t FiniteStructure::point_index(std::string_view name) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i] == name) return i;
  throw InputError("unknown point '" + std::string(name) + "'");
}

const Rational& FiniteStructure::distance(std::size_t a, std::size_t b) const {
  if (power_ != 1) throw EvalError("distance() requires an ordinary (power 1) metric");
  return metric_power(a, b);
}

void FiniteStructure::set_constant(const std::string& name, std::size_t point) {
  if (point >= size()) throw InputError("constant '" + name + "' interpreted outside the universe");
  constants_[name] = point;
}

void FiniteStructure::set_function(const std::string& name, FunctionTable table) {
  std::size_t expected = 1;
  for (std::size_t i = 0; i < table.arity; ++i) expected *= size();
  if (table.values.size() != expected)
    throw InputError("function table '" + name + "' has " + std::to_string(table.values.size()) + " entries, expected " +
                     std::to_string(expected));
  for (auto v : table.values)
    if (v >= size()) throw InputError("function '" + name + "' maps outside the universe");
  functions_[name] = std::move(table);
}

void FiniteStructure::set_relation(const std::string& name, RelationTable table) {
  std::size_t expected = 1;
  for (std::size_t i = 0; i < table.arity; ++i) expected *= size();
  if (table.values.size() != expected)
    throw InputError("relation table '" + name + "' has " + std::to_string(table.values.size()) + " entries, expected " +
                     std::to_string(expected));
  relations_[name] = std::move(table);
}

std::size_t FiniteStructure::constant(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) throw InputError("no interpretation for constant '" + name + "'");
  return it->second;
}

const FunctionTable& FiniteStructure::function(const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end()) throw InputError("no interpretation for function '" + name + "'");
  return it->second;
}

const RelationTable& FiniteStructure::relation(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw InputError("no interpretation for relation '" + name + "'");
  return it->second;
}

std::size_t FiniteStructure::tuple_index(const std::vector<std::size_t>& tuple) const {
  std::size_t idx = 0;
  for (auto v : tuple) idx = idx * size() + v;
  return idx;
}

std::size_t FiniteStructure::apply(const std::string& function, const std::vector<std::size_t>& args) const {
  return this->function(function).values.at(tuple_index(args));
}

const Rational& FiniteStructure::relation_value(const std::string& relation, const std::vector<std::size_t>& args) const {
  return this->relation(relation).values.at(tuple_index(args));
}

Rational tuple_distance(const FiniteStructure& m, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  Rational total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += m.distance(a[i], b[i]);
  return total;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

// floor(x^(1/p)) for x >= 0.
mpz_class floor_root(const mpz_class& x, unsigned p) {
  mpz_class r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), p);
  return r;
}

std::optional<Rational> exact_root(const Rational& x, unsigned p) {
  mpz_class n = floor_root(x.get_num(), p);
  mpz_class d = floor_root(x.get_den(), p);
  mpz_class np, dp;
  mpz_pow_ui(np.get_mpz_t(), n.get_mpz_t(), p);
  mpz_pow_ui(dp.get_mpz_t(), d.get_mpz_t(), p);
  if (np != x.get_num() || dp != x.get_den()) return std::nullopt;
  return Rational(n, d);
}

// Bracket x^(1/p) within 2^-bits.
std::pair<Rational, Rational> root_bracket(const Rational& x, unsigned p, unsigned bits) {
  if (auto r = exact_root(x, p)) return {*r, *r};
  mpz_class scale = 1;
  scale <<= bits * p;
  mpz_class scaled = (x.get_num() * scale) / x.get_den();
  mpz_class lo = floor_root(scaled, p);
  mpz_class den = 1;
  den <<= bits;
  Rational low(lo, den), high(lo + 1, den);
  low.canonicalize();
  high.canonicalize();
  return {low, high};
}

std::string tuple_text(const FiniteStructure& m, const std::vector<std::size_t>& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += m.points()[t[i]];
  }
  return out + ")";
}

// Lipschitz test through p-th powers: lhs <= lambda * (sum_i D_i)^(1/p),
// where lhs may be negative (then it holds trivially).
bool lipschitz_holds(const Rational& lhs, const Rational& lambda, const Rational& tuple_power_sum, unsigned p,
                     Rational& excess) {
  if (lhs <= 0) return true;
  if (p == 1) {
    excess = lhs - lambda * tuple_power_sum;
    return excess <= 0;
  }
  const Rational lhs_p = power(lhs, p);
  const Rational rhs_p = power(lambda, p) * tuple_power_sum;
  excess = lhs_p - rhs_p;
  return excess <= 0;
}

}  // namespace

bool root_triangle_holds(const Rational& a, const Rational& b, const Rational& c, unsigned p) {
  if (p == 1) return a <= b + c;
  if (p == 2) {
    const Rational s = a - b - c;
    if (s <= 0) return true;
    return s * s <= 4 * b * c;
  }
  auto ra = exact_root(a, p), rb = exact_root(b, p), rc = exact_root(c, p);
  if (ra && rb && rc) return *ra <= *rb + *rc;
  // Bracket the roots; a residual tie within 3*2^-200 is accepted.
  constexpr unsigned bits = 200;
  auto [alo, ahi] = root_bracket(a, p, bits);
  auto [blo, bhi] = root_bracket(b, p, bits);
  auto [clo, chi] = root_bracket(c, p, bits);
  if (ahi <= blo + clo) return true;
  if (alo > bhi + chi) return false;
  return true;
}

void check_signature(const FiniteStructure& m, const Signature& sig) {
  for (const auto& s : sig.symbols()) {
    switch (s.kind) {
      case SymbolKind::Constant: m.constant(s.name); break;
      case SymbolKind::Function:
        if (m.function(s.name).arity != s.arity) throw InputError("function '" + s.name + "' has wrong arity");
        break;
      case SymbolKind::Relation:
        if (m.relation(s.name).arity != s.arity) throw InputError("relation '" + s.name + "' has wrong arity");
        break;
    }
  }
  for (const auto& [name, _] : m.constants())
    if (!sig.find(name)) throw SignatureError("structure interprets undeclared constant '" + name + "'");
  for (const auto& [name, _] : m.functions())
    if (!sig.find(name)) throw SignatureError("structure interprets undeclared function '" + name + "'");
  for (const auto& [name, _] : m.relations())
    if (!sig.find(name)) throw SignatureError("structure interprets undeclared relation '" + name + "'");
}

ValidationReport validate(const FiniteStructure& m) {
  check_signature(m, m.signature());
  ValidationReport report;
  const std::size_t n = m.size();
  const unsigned p = m.power();
  auto add = [&](std::string kind, std::string what, Rational amount) {
    report.violations.push_back(Violation{std::move(kind), std::move(what), std::move(amount)});
  };
  const auto& pts = m.points();

  for (std::size_t a = 0; a < n; ++a) {
    if (m.metric_power(a, a) != 0) add("metric", "d(" + pts[a] + "," + pts[a] + ") != 0", m.metric_power(a, a));
    for (std::size_t b = 0; b < n; ++b) {
      const Rational& dab = m.metric_power(a, b);
      if (dab < 0) add("metric", "d(" + pts[a] + "," + pts[b] + ") < 0", -dab);
      if (dab > 1) add("diameter", "d(" + pts[a] + "," + pts[b] + ") > 1", dab - 1);
      if (b > a && dab != m.metric_power(b, a))
        add("symmetry", "d(" + pts[a] + "," + pts[b] + ") != d(" + pts[b] + "," + pts[a] + ")",
            abs_value(dab - m.metric_power(b, a)));
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const Rational& ac = m.metric_power(a, c);
        const Rational& ab = m.metric_power(a, b);
        const Rational& bc = m.metric_power(b, c);
        if (!root_triangle_holds(ac, ab, bc, p))
          add("triangle", "d(" + pts[a] + "," + pts[c] + ") > d(" + pts[a] + "," + pts[b] + ") + d(" + pts[b] + "," +
                              pts[c] + ")",
              p == 1 ? Rational(ac - ab - bc) : Rational(ac - ab - bc));
      }

  auto tuple_power_sum = [&](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += m.metric_power(x[i], y[i]);
    return s;
  };

  for (const auto& [name, table] : m.functions()) {
    const Rational& lambda = m.signature().at(name).lipschitz;
    for_each_tuple(n, table.arity, [&](const std::vector<std::size_t>& x) {
      const std::size_t fx = table.values[m.tuple_index(x)];
      for_each_tuple(n, table.arity, [&](const std::vector<std::size_t>& y) {
        const std::size_t fy = table.values[m.tuple_index(y)];
        // Compare d(Fx,Fy)^p with lambda^p * sum_i d(x_i,y_i)^p; in power-1 mode
        // this is the plain sum metric.
        const Rational lhs_p = m.metric_power(fx, fy);
        const Rational tps = tuple_power_sum(x, y);
        const Rational rhs_p = p == 1 ? Rational(lambda * tps) : Rational(power(lambda, p) * tps);
        if (lhs_p > rhs_p)
          add("lipschitz", name + tuple_text(m, x) + " vs " + name + tuple_text(m, y), lhs_p - rhs_p);
      });
    });
  }

  for (const auto& [name, table] : m.relations()) {
    const Rational& lambda = m.signature().at(name).lipschitz;
    for (std::size_t i = 0; i < table.values.size(); ++i) {
      const Rational& v = table.values[i];
      if (v < 0 || v > 1)
        add("range", name + " value " + to_string(v) + " outside [0,1]", v < 0 ? Rational(-v) : Rational(v - 1));
    }
    for_each_tuple(n, table.arity, [&](const std::vector<std::size_t>& x) {
      const Rational& rx = table.values[m.tuple_index(x)];
      for_each_tuple(n, table.arity, [&](const std::vector<std::size_t>& y) {
        const Rational diff = rx - table.values[m.tuple_index(y)];
        Rational excess;
        if (!lipschitz_holds(diff, lambda, tuple_power_sum(x, y), p, excess))
          add("lipschitz", name + tuple_text(m, x) + " - " + name + tuple_text(m, y), excess);
      });
    });
  }
  return report;
}

// ---------------------------------------------------------------------------
// Quotient

QuotientResult quotient(const FiniteStructure& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> class_of(n, n);
  std::vector<std::size_t> reps;
  for (std::size_t a = 0; a < n; ++a) {
    if (class_of[a] != n) continue;
    class_of[a] = reps.size();
    for (std::size_t b = a + 1; b < n; ++b)
      if (class_of[b] == n && m.metric_power(a, b) == 0) class_of[b] = reps.size();
    reps.push_back(a);
  }
  const std::size_t k = reps.size();
  std::vector<std::string> names;
  names.reserve(k);
  for (auto r : reps) names.push_back(m.points()[r]);
  std::vector<Rational> metric(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) metric[i * k + j] = m.metric_power(reps[i], reps[j]);
  FiniteStructure q(m.signature(), std::move(names), std::move(metric), m.power());
  for (const auto& [name, pt] : m.constants()) q.set_constant(name, class_of[pt]);
  for (const auto& [name, table] : m.functions()) {
    FunctionTable t{table.arity, {}};
    for_each_tuple(k, table.arity, [&](const std::vector<std::size_t>& x) {
      std::vector<std::size_t> orig(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) orig[i] = reps[x[i]];
      t.values.push_back(class_of[table.values[m.tuple_index(orig)]]);
    });
    q.set_function(name, std::move(t));
  }
  for (const auto& [name, table] : m.relations()) {
    RelationTable t{table.arity, {}};
    for_each_tuple(k, table.arity, [&](const std::vector<std::size_t>& x) {
      std::vector<std::size_t> orig(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) orig[i] = reps[x[i]];
      t.values.push_back(table.values[m.tuple_index(orig)]);
    });
    q.set_relation(name, std::move(t));
  }
  return QuotientResult{std::move(q), std::move(class_of)};
}

// ---------------------------------------------------------------------------
// Evaluation
//
// Formulas are compiled once against the structure: variables become slots of
// an environment vector and symbols become table pointers.

namespace {

struct CTerm {
  enum Kind { Slot, Point, Apply } kind;
  std::size_t index = 0;  // slot or point
  const FunctionTable* table = nullptr;
  std::vector<CTerm> args;
};

struct CFormula {
  Formula::Kind kind = Formula::Kind::One;
  Rational scalar;
  const RelationTable* table = nullptr;
  std::vector<CTerm> terms;
  std::vector<CFormula> children;
  std::size_t slot = 0;
};

class Compiler {
 public:
  Compiler(const FiniteStructure& m, const std::vector<std::string>& free) : m_(m) {
    for (const auto& v : free) scope_.push_back(v);
    slots_ = scope_.size();
  }

  std::size_t slot_count() const { return slots_; }

  CTerm term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Variable: {
        for (std::size_t i = scope_.size(); i-- > 0;)
          if (scope_[i] == t.name()) return CTerm{CTerm::Slot, slot_of_[i], nullptr, {}};
        throw EvalError("no value assigned to free variable '" + t.name() + "'");
      }
      case Term::Kind::Constant: return CTerm{CTerm::Point, m_.constant(t.name()), nullptr, {}};
      case Term::Kind::Apply: {
        CTerm out{CTerm::Apply, 0, &m_.function(t.name()), {}};
        for (const auto& a : t.args()) out.args.push_back(term(a));
        return out;
      }
    }
    throw EvalError("bad term");
  }

  CFormula formula(const Formula& f) {
    CFormula out;
    out.kind = f.kind();
    switch (f.kind()) {
      case Formula::Kind::One: break;
      case Formula::Kind::Rel: out.table = &m_.relation(f.symbol()); [[fallthrough]];
      case Formula::Kind::Dist:
        for (const auto& t : f.terms()) out.terms.push_back(term(t));
        break;
      case Formula::Kind::Sum:
      case Formula::Kind::Min:
      case Formula::Kind::Max:
        out.children.push_back(formula(f.left()));
        out.children.push_back(formula(f.right()));
        break;
      case Formula::Kind::Scale:
        out.scalar = f.scalar();
        out.children.push_back(formula(f.body()));
        break;
      case Formula::Kind::Inf:
      case Formula::Kind::Sup: {
        out.slot = slots_++;
        scope_.push_back(f.variable());
        slot_of_.push_back(out.slot);
        out.children.push_back(formula(f.body()));
        scope_.pop_back();
        slot_of_.pop_back();
        break;
      }
    }
    return out;
  }

  void init_free_slots() {
    slot_of_.resize(scope_.size());
    std::iota(slot_of_.begin(), slot_of_.end(), 0);
  }

 private:
  const FiniteStructure& m_;
  std::vector<std::string> scope_;
  std::vector<std::size_t> slot_of_;
  std::size_t slots_ = 0;
};

class Machine {
 public:
  Machine(const FiniteStructure& m, unsigned p) : m_(m), p_(p) {
    if (p == 0) throw EvalError("L^p exponent must be a positive integer");
    if (m.power() != p && m.power() != 1)
      throw EvalError("structure stores d^" + std::to_string(m.power()) + " and cannot be read in L^" +
                      std::to_string(p) + " mode");
  }

  std::size_t term(const CTerm& t, std::vector<std::size_t>& env) const {
    switch (t.kind) {
      case CTerm::Slot: return env[t.index];
      case CTerm::Point: return t.index;
      case CTerm::Apply: {
        std::size_t idx = 0;
        for (const auto& a : t.args) idx = idx * m_.size() + term(a, env);
        return t.table->values[idx];
      }
    }
    return 0;
  }

  Rational eval(const CFormula& f, std::vector<std::size_t>& env) const {
    switch (f.kind) {
      case Formula::Kind::One: return 1;
      case Formula::Kind::Dist: {
        const Rational& stored = m_.metric_power(term(f.terms[0], env), term(f.terms[1], env));
        if (m_.power() == p_) return stored;
        return power(stored, p_);
      }
      case Formula::Kind::Rel: {
        std::size_t idx = 0;
        for (const auto& t : f.terms) idx = idx * m_.size() + term(t, env);
        return f.table->values[idx];
      }
      case Formula::Kind::Sum: return eval(f.children[0], env) + eval(f.children[1], env);
      case Formula::Kind::Scale:
        if (f.scalar == 0) return 0;
        return f.scalar * eval(f.children[0], env);
      case Formula::Kind::Min: return std::min(eval(f.children[0], env), eval(f.children[1], env));
      case Formula::Kind::Max: return std::max(eval(f.children[0], env), eval(f.children[1], env));
      case Formula::Kind::Inf:
      case Formula::Kind::Sup: {
        const bool is_sup = f.kind == Formula::Kind::Sup;
        Rational best;
        for (std::size_t a = 0; a < m_.size(); ++a) {
          env[f.slot] = a;
          Rational v = eval(f.children[0], env);
          if (a == 0 || (is_sup ? v > best : v < best)) best = std::move(v);
        }
        return best;
      }
    }
    return 0;
  }

 private:
  const FiniteStructure& m_;
  unsigned p_;
};

struct Program {
  CFormula root;
  std::size_t slots;
};

Program compile(const FiniteStructure& m, const Formula& f, const std::vector<std::string>& free) {
  if (m.size() == 0) throw EvalError("cannot evaluate over an empty universe");
  Compiler c(m, free);
  c.init_free_slots();
  CFormula root = c.formula(f);
  return Program{std::move(root), c.slot_count()};
}

}  // namespace

Rational eval(const FiniteStructure& m, const Formula& f, const Assignment& asg, unsigned p) {
  std::vector<std::string> free(f.free_variables().begin(), f.free_variables().end());
  for (const auto& v : free)
    if (!asg.count(v)) throw EvalError("no value assigned to free variable '" + v + "'");
  Program prog = compile(m, f, free);
  Machine machine(m, p);
  std::vector<std::size_t> env(prog.slots, 0);
  for (std::size_t i = 0; i < free.size(); ++i) {
    const std::size_t pt = asg.at(free[i]);
    if (pt >= m.size()) throw EvalError("assignment of '" + free[i] + "' is outside the universe");
    env[i] = pt;
  }
  return machine.eval(prog.root, env);
}

std::vector<Rational> eval_all(const FiniteStructure& m, const Formula& f, const std::vector<std::string>& vars,
                               unsigned p) {
  for (const auto& v : f.free_variables())
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw EvalError("free variable '" + v + "' is not among the tuple variables");
  Program prog = compile(m, f, vars);
  Machine machine(m, p);
  std::vector<std::size_t> env(prog.slots, 0);
  std::vector<Rational> out;
  for_each_tuple(m.size(), vars.size(), [&](const std::vector<std::size_t>& tuple) {
    std::copy(tuple.begin(), tuple.end(), env.begin());
    out.push_back(machine.eval(prog.root, env));
  });
  return out;
}

ConditionCheck check_condition(const FiniteStructure& m, const Condition& c, const Assignment& asg, unsigned p) {
  Rational margin = eval(m, c.rhs, asg, p) - eval(m, c.lhs, asg, p);
  const bool holds = margin >= 0;
  return ConditionCheck{holds, std::move(margin)};
}

ConditionCheck check_condition_universally(const FiniteStructure& m, const Condition& c, unsigned p) {
  const auto fv = c.free_variables();
  std::vector<std::string> vars(fv.begin(), fv.end());
  const auto lhs = eval_all(m, c.lhs, vars, p);
  const auto rhs = eval_all(m, c.rhs, vars, p);
  Rational worst = rhs[0] - lhs[0];
  for (std::size_t i = 1; i < lhs.size(); ++i) worst = std::min(worst, Rational(rhs[i] - lhs[i]));
  const bool holds = worst >= 0;
  return ConditionCheck{holds, worst};
}

// ---------------------------------------------------------------------------
// Rendezvous

Formula rendezvous_sentence(unsigned n, bool upper) {
  if (n == 0) throw InputError("rendezvous arity must be positive");
  const Rational w(1, n);
  const Term y = Term::variable("y");
  std::optional<Formula> avg;
  for (unsigned i = 1; i <= n; ++i) {
    Formula atom = Formula::scale(w, Formula::dist(Term::variable("x" + std::to_string(i)), y));
    avg = avg ? Formula::sum(*avg, atom) : atom;
  }
  Formula f = upper ? Formula::sup("y", *avg) : Formula::inf("y", *avg);
  for (unsigned i = n; i >= 1; --i) {
    const std::string x = "x" + std::to_string(i);
    f = upper ? Formula::inf(x, f) : Formula::sup(x, f);
  }
  return f;
}

namespace {

// Integer fast path: scale the metric to a common denominator when it fits
// comfortably in 64 bits, then run the exhaustive search on integers.
std::optional<std::pair<std::vector<std::int64_t>, mpz_class>> integer_metric(const FiniteStructure& m, unsigned n) {
  mpz_class lcm = 1;
  for (const auto& v : m.metric()) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    if (mpz_sizeinbase(lcm.get_mpz_t(), 2) > 40) return std::nullopt;
  }
  // entries are <= 1, so scaled values are <= lcm and sums of n of them fit.
  if (mpz_sizeinbase(lcm.get_mpz_t(), 2) + 8 + n > 62) return std::nullopt;
  std::vector<std::int64_t> out;
  out.reserve(m.metric().size());
  for (const auto& v : m.metric()) {
    mpz_class scaled = v.get_num() * (lcm / v.get_den());
    out.push_back(scaled.get_si());
  }
  return std::make_pair(std::move(out), lcm);
}

}  // namespace

RendezvousValue rendezvous_value(const FiniteStructure& m, unsigned n) {
  if (n == 0) throw InputError("rendezvous arity must be positive");
  if (m.power() != 1) throw EvalError("rendezvous values need an ordinary metric");
  const std::size_t N = m.size();
  auto im = integer_metric(m, n);
  if (!im) {
    return RendezvousValue{eval(m, rendezvous_sentence(n, false)), eval(m, rendezvous_sentence(n, true))};
  }
  const auto& D = im->first;
  std::int64_t lower = std::numeric_limits<std::int64_t>::min();
  std::int64_t upper = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> partial(N);
  for_each_tuple(N, n, [&](const std::vector<std::size_t>& xs) {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (std::size_t y = 0; y < N; ++y) {
      std::int64_t s = 0;
      for (auto x : xs) s += D[x * N + y];
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    lower = std::max(lower, lo);
    upper = std::min(upper, hi);
  });
  const mpz_class den = im->second * n;
  Rational lo(mpz_class(lower), den), hi(mpz_class(upper), den);
  lo.canonicalize();
  hi.canonicalize();
  return RendezvousValue{lo, hi};
}

}  // namespace acl
