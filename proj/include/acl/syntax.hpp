#pragma once

// Lipschitz signatures, terms, formulas and conditions of affine continuous
// logic. Terms and formulas are immutable, reference-counted trees; every
// node carries its derived Lipschitz constant, bound and free variables.

#include "acl/rational.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace acl {

class SyntaxError : public InputError {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Unknown symbols, arity mismatches and malformed signatures.
class SignatureError : public InputError {
 public:
  explicit SignatureError(const std::string& what) : InputError(what) {}
};

/// Substitution would capture a free variable of the substituted term.
class CaptureError : public Error {
 public:
  explicit CaptureError(const std::string& what) : Error(what) {}
};

enum class SymbolKind { Constant, Function, Relation };

std::string_view to_string(SymbolKind kind);
SymbolKind parse_symbol_kind(std::string_view text);

struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::Constant;
  std::size_t arity = 0;
  Rational lipschitz = 0;

  bool operator==(const Symbol&) const = default;
};

/// A Lipschitz language. The metric symbol `d` (binary, Lipschitz constant 1)
/// is implicit and may not be redeclared.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  void add(Symbol symbol);
  const Symbol* find(std::string_view name) const;
  const Symbol& at(std::string_view name) const;
  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::vector<const Symbol*> of_kind(SymbolKind kind) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

bool is_reserved_word(std::string_view name);

class Term {
 public:
  enum class Kind { Variable, Constant, Apply };

  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term apply(std::string function, Rational function_lipschitz, std::vector<Term> args);
  /// Looks the function up in `sig` and checks the arity.
  static Term apply(const Signature& sig, const std::string& function, std::vector<Term> args);

  Kind kind() const;
  const std::string& name() const;
  const std::vector<Term>& args() const;
  const Rational& lipschitz() const;
  /// Lipschitz constant of the function symbol itself (Apply only).
  const Rational& symbol_lipschitz() const;

  std::set<std::string> variables() const;
  bool mentions(const std::string& var) const;

  bool operator==(const Term& other) const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class Formula {
 public:
  enum class Kind { One, Dist, Rel, Sum, Scale, Inf, Sup, Min, Max };

  static Formula one();
  static Formula dist(Term a, Term b);
  static Formula rel(std::string relation, Rational relation_lipschitz, std::vector<Term> args);
  static Formula rel(const Signature& sig, const std::string& relation, std::vector<Term> args);
  static Formula sum(Formula a, Formula b);
  static Formula scale(Rational r, Formula f);
  static Formula sup(std::string var, Formula body);
  static Formula inf(std::string var, Formula body);
  static Formula min(Formula a, Formula b);
  static Formula max(Formula a, Formula b);
  /// The real constant r, represented as r*1.
  static Formula numeral(Rational r);

  Kind kind() const;
  bool is_quantifier() const { return kind() == Kind::Sup || kind() == Kind::Inf; }

  const std::string& symbol() const;        // Rel
  const std::vector<Term>& terms() const;   // Dist, Rel
  const Rational& symbol_lipschitz() const; // Rel
  const Formula& left() const;              // Sum, Min, Max
  const Formula& right() const;             // Sum, Min, Max
  const Formula& body() const;              // Scale, Inf, Sup
  const Rational& scalar() const;           // Scale
  const std::string& variable() const;      // Inf, Sup

  const Rational& lipschitz() const;
  const Rational& bound() const;
  const std::set<std::string>& free_variables() const;
  bool is_free(const std::string& var) const;
  bool is_affine() const;
  bool is_sentence() const { return free_variables().empty(); }
  std::size_t size() const;
  unsigned quantifier_depth() const;

  /// Value of `1` or `r*1`; empty for anything else.
  std::optional<Rational> numeral_value() const;

  /// Structural equality (bound variable names must agree).
  bool operator==(const Formula& other) const;

  struct Node;  // implementation detail

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// lhs <= rhs.
struct Condition {
  Formula lhs;
  Formula rhs;

  std::set<std::string> free_variables() const;
  bool is_closed() const { return free_variables().empty(); }
  bool operator==(const Condition&) const = default;
};

struct Theory {
  std::vector<Condition> conditions;

  std::set<std::string> free_variables() const;
};

std::string to_string(const Term& t);
std::string to_string(const Formula& f);
std::string to_string(const Condition& c);

Term parse_term(std::string_view text, const Signature& sig);
Formula parse_formula(std::string_view text, const Signature& sig);
/// Exactly one `<=` condition.
Condition parse_condition(std::string_view text, const Signature& sig);
/// Accepts `a <= b`, `a >= b` and `a = b` (which yields both directions).
std::vector<Condition> parse_conditions(std::string_view text, const Signature& sig);

/// Equality up to renaming of bound variables.
bool alpha_equivalent(const Formula& a, const Formula& b);
bool alpha_equivalent(const Condition& a, const Condition& b);

Term substitute(const Term& in, const std::string& var, const Term& t);
/// Capture-avoiding substitution of t for the free occurrences of var.
/// Throws CaptureError when a free variable of t would become bound.
Formula substitute(const Formula& in, const std::string& var, const Term& t);

/// sum_i w_i*lhs_i <= sum_i w_i*rhs_i. Weight-one terms are left unscaled and
/// zero-weight terms are dropped.
Condition affine_combination(const std::vector<std::pair<Condition, Rational>>& weighted);

/// -1 * f, folding into an existing scale node.
Formula negate(const Formula& f);

}  // namespace acl
