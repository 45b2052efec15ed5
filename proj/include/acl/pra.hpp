#pragma once

// Quantifier elimination for the affine theory of probability algebras, and
// finite atomic algebras as a brute-force oracle.
//
// Formulas use the ordinary grammar over the signature returned by
// pra::signature(): constants zero/one, functions and/or/sym (binary) and not
// (unary), and the relation mu, all with Lipschitz constant 1.

#include "acl/structures.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace acl::pra {

/// Largest number of variables an event may range over.
inline constexpr std::size_t max_variables = 6;

Signature signature();

/// A Boolean combination of variables, canonically the set of minterms it
/// contains. Minterm m assigns variable i the truth value of bit i of m.
struct EventTerm {
  std::uint64_t minterms = 0;

  bool operator==(const EventTerm&) const = default;
  auto operator<=>(const EventTerm&) const = default;
};

/// Number of minterms over n variables.
inline std::size_t minterm_count(std::size_t n) { return std::size_t{1} << n; }
EventTerm event_zero();
EventTerm event_one(std::size_t n);
EventTerm event_variable(std::size_t index, std::size_t n);
/// The conjunction of the variables in `subset` (a bitmask); the empty
/// conjunction is `one`.
EventTerm event_conjunction(std::uint64_t subset, std::size_t n);
/// The subset whose conjunction this event is, if it is one.
std::optional<std::uint64_t> as_conjunction(const EventTerm& e, std::size_t n);

/// Canonical event of a term built from variables in `vars`.
EventTerm event_of(const Term& t, const std::vector<std::string>& vars);

/// A term denoting the event: zero, one, a left-nested conjunction of
/// variables, or a disjunction of minterms.
Term event_to_term(const EventTerm& e, const std::vector<std::string>& vars);

/// constant + sum of coefficient * mu(event), over an ambient variable list.
/// Zero coefficients are never stored.
class PraFormula {
 public:
  PraFormula() = default;
  explicit PraFormula(std::vector<std::string> vars, Rational constant = 0);

  const std::vector<std::string>& variables() const { return vars_; }
  const Rational& constant() const { return constant_; }
  const std::map<EventTerm, Rational>& atoms() const { return atoms_; }

  void add_constant(const Rational& r) { constant_ += r; }
  void add_atom(const EventTerm& e, const Rational& coeff);

  PraFormula& operator+=(const PraFormula& other);
  PraFormula scaled(const Rational& r) const;

  bool is_constant() const { return atoms_.empty(); }
  /// Variables some atom actually depends on.
  std::set<std::string> mentioned_variables() const;

  bool operator==(const PraFormula&) const = default;

 private:
  std::vector<std::string> vars_;
  Rational constant_;
  std::map<EventTerm, Rational> atoms_;
};

/// Quantifier-free translation: d(s,t) becomes mu(s sym t). Throws InputError
/// on quantifiers, min/max, or symbols outside the signature.
PraFormula from_formula(const Formula& f, const std::vector<std::string>& vars);

/// Rewrites every atom as a combination of mu of conjunctions of variables
/// (the empty conjunction folded into the constant). This is a normal form.
PraFormula expand_inclusion_exclusion(const PraFormula& f);

/// Rewrites f as R + sum_s c_s mu(s and y) where R and each s avoid y; the
/// minterms s range over the other variables.
PraFormula split_on(const PraFormula& f, const std::string& y);

/// sup over y of f, in inclusion-exclusion normal form.
PraFormula eliminate_sup(const PraFormula& f, const std::string& y);

/// inf over y of f, as -sup_y -f.
PraFormula eliminate_inf(const PraFormula& f, const std::string& y);

/// Quantifier elimination. The ambient variable list is every variable of
/// the formula in order of first occurrence; sentences come out constant.
PraFormula qe(const Formula& f);

/// Back to the formula language.
Formula to_formula(const PraFormula& f);

/// e.g. "1 - mu(x)", "mu(x) + mu(y) - 2*mu(and(x,y))", "0".
std::string to_string(const PraFormula& f);

/// k atoms with nonnegative weights summing to 1; events are bitmasks over
/// the atoms.
class FiniteAlgebra {
 public:
  explicit FiniteAlgebra(std::vector<Rational> weights);
  static FiniteAlgebra uniform(std::size_t atoms);

  std::size_t atoms() const { return weights_.size(); }
  std::size_t events() const { return std::size_t{1} << atoms(); }
  const std::vector<Rational>& weights() const { return weights_; }
  Rational measure(std::uint64_t event) const;

  /// Point names are "e" followed by one 0/1 digit per atom.
  std::string point_name(std::uint64_t event) const;
  /// The algebra as a structure over pra::signature(), metric mu(a sym b).
  /// Point i is event i.
  FiniteStructure as_structure() const;

 private:
  std::vector<Rational> weights_;
};

/// Every algebra with 1..max_atoms atoms whose weights are multiples of
/// `step` (zero weights included).
std::vector<FiniteAlgebra> weight_grid(std::size_t max_atoms, const Rational& step);

/// Variable name -> event bitmask.
using EventAssignment = std::map<std::string, std::uint64_t>;

/// Exhaustive evaluation of f in the algebra; quantifiers range over all
/// events.
Rational oracle_eval(const Formula& f, const FiniteAlgebra& a, const EventAssignment& asg = {});

/// Direct evaluation of a quantifier-free PraFormula.
Rational evaluate(const PraFormula& f, const FiniteAlgebra& a, const EventAssignment& asg);

}  // namespace acl::pra
