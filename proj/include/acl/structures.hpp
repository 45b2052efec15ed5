#pragma once

// Finite metric L-structures and exact evaluation of formulas over them.

#include "acl/rational.hpp"
#include "acl/syntax.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace acl {

/// Evaluation failures: missing assignments, unsupported exponents.
class EvalError : public Error {
 public:
  explicit EvalError(const std::string& what) : Error(what) {}
};

/// Interpretation of a function symbol: full table over point indices,
/// row-major in the argument tuple.
struct FunctionTable {
  std::size_t arity = 0;
  std::vector<std::size_t> values;
};

/// Interpretation of a relation symbol, row-major in the argument tuple.
struct RelationTable {
  std::size_t arity = 0;
  std::vector<Rational> values;
};

/// A finite prestructure. The metric matrix stores d^power; power is 1 for
/// ordinary structures and p for structures built in L^p mode.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  FiniteStructure(Signature sig, std::vector<std::string> points, std::vector<Rational> metric, unsigned power = 1);

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  std::size_t point_index(std::string_view name) const;
  unsigned power() const { return power_; }

  /// Stored metric entry, i.e. d(a,b)^power().
  const Rational& metric_power(std::size_t a, std::size_t b) const { return metric_[a * size() + b]; }
  /// d(a,b); only defined for power() == 1.
  const Rational& distance(std::size_t a, std::size_t b) const;
  const std::vector<Rational>& metric() const { return metric_; }

  void set_constant(const std::string& name, std::size_t point);
  void set_function(const std::string& name, FunctionTable table);
  void set_relation(const std::string& name, RelationTable table);

  const std::map<std::string, std::size_t>& constants() const { return constants_; }
  const std::map<std::string, FunctionTable>& functions() const { return functions_; }
  const std::map<std::string, RelationTable>& relations() const { return relations_; }

  std::size_t constant(const std::string& name) const;
  const FunctionTable& function(const std::string& name) const;
  const RelationTable& relation(const std::string& name) const;

  /// Row-major index of a tuple of points.
  std::size_t tuple_index(const std::vector<std::size_t>& tuple) const;
  std::size_t apply(const std::string& function, const std::vector<std::size_t>& args) const;
  const Rational& relation_value(const std::string& relation, const std::vector<std::size_t>& args) const;

 private:
  Signature sig_;
  std::vector<std::string> points_;
  std::vector<Rational> metric_;
  unsigned power_ = 1;
  std::map<std::string, std::size_t> constants_;
  std::map<std::string, FunctionTable> functions_;
  std::map<std::string, RelationTable> relations_;
};

/// Variable name -> point index.
using Assignment = std::map<std::string, std::size_t>;

struct Violation {
  std::string kind;         // e.g. "triangle", "lipschitz", "range"
  std::string description;  // which instance
  Rational amount;          // by how much the inequality fails
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

/// Checks metric axioms, diameter, ranges and Lipschitz conditions. Tuple
/// distances are sum_i d(a_i,b_i) for power 1 and (sum_i d^p)^(1/p) in L^p
/// mode; the latter is compared through p-th powers. Throws InputError when a
/// declared symbol has no interpretation.
ValidationReport validate(const FiniteStructure& m);

/// Checks that `m` interprets exactly the symbols of `sig`.
void check_signature(const FiniteStructure& m, const Signature& sig);

/// True when a^(1/p) <= b^(1/p) + c^(1/p) for nonnegative rationals.
bool root_triangle_holds(const Rational& a, const Rational& b, const Rational& c, unsigned p);

struct QuotientResult {
  FiniteStructure structure;
  std::vector<std::size_t> class_of;  // original point -> quotient point
};

/// Identifies points at distance zero. Each class is represented by its first
/// member, whose name is kept.
QuotientResult quotient(const FiniteStructure& m);

/// Value of a formula. `p` selects the L^p reading of distance atoms
/// (d(t1,t2)^p); p must be a positive integer.
Rational eval(const FiniteStructure& m, const Formula& f, const Assignment& asg = {}, unsigned p = 1);

/// Values of `f` at every tuple over `vars` (row-major in the tuple).
std::vector<Rational> eval_all(const FiniteStructure& m, const Formula& f, const std::vector<std::string>& vars,
                               unsigned p = 1);

struct ConditionCheck {
  bool holds;
  Rational margin;  // rhs - lhs
};

ConditionCheck check_condition(const FiniteStructure& m, const Condition& c, const Assignment& asg = {},
                               unsigned p = 1);

/// Checks the condition under every assignment of its free variables and
/// reports the smallest margin.
ConditionCheck check_condition_universally(const FiniteStructure& m, const Condition& c, unsigned p = 1);

/// sup_{x1..xn} inf_y (1/n) sum_i d(x_i,y) and inf_{x1..xn} sup_y (...).
Formula rendezvous_sentence(unsigned n, bool upper);

struct RendezvousValue {
  Rational lower;
  Rational upper;
};

RendezvousValue rendezvous_value(const FiniteStructure& m, unsigned n);

/// Sum of coordinate distances between two tuples (power 1 only).
Rational tuple_distance(const FiniteStructure& m, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

/// Calls fn(tuple) for every tuple in {0..n-1}^k in row-major order.
template <class Fn>
void for_each_tuple(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> tuple(k, 0);
  if (k > 0 && n == 0) return;
  while (true) {
    fn(static_cast<const std::vector<std::size_t>&>(tuple));
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++tuple[i] < n) break;
      tuple[i] = 0;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

}  // namespace acl
