#pragma once

// Types restricted to a finite formula basis: realized type vectors, their
// convex hulls, and the logic and norm distances between them.

#include "acl/structures.hpp"

#include <string>
#include <utility>
#include <vector>

namespace acl {

struct FormulaBasis {
  std::vector<std::string> variables;
  std::vector<Formula> formulas;
  /// Sup-norm of each formula over the family the basis was built against.
  std::vector<Rational> norms;
};

/// Checks free variables against `variables` and computes the norms as the
/// largest |value| over every tuple of every family member.
FormulaBasis make_basis(std::vector<std::string> variables, std::vector<Formula> formulas,
                        const std::vector<FiniteStructure>& family);

/// A tuple of family member `structure` realizing a type.
struct Witness {
  std::size_t structure = 0;
  std::vector<std::size_t> tuple;
};

struct TypeVector {
  std::vector<Rational> values;
  /// Realizing tuples, for realized types.
  std::vector<Witness> realized_at;
  /// (values, weight) parts, for types formed as convex combinations.
  std::vector<std::pair<std::vector<Rational>, Rational>> combination;
};

/// One vector per distinct value tuple, in order of first realization.
/// Witnesses are tagged with `structure_index`.
std::vector<TypeVector> realized_types(const FiniteStructure& m, const FormulaBasis& basis,
                                       std::size_t structure_index = 0);

/// Weights must be nonnegative and sum to 1.
TypeVector convex_combination(const std::vector<std::pair<TypeVector, Rational>>& parts);

struct TypePolytope {
  std::vector<TypeVector> generators;
  /// Indices into generators of the points that are not convex combinations
  /// of the other generators.
  std::vector<std::size_t> vertices;
};

TypePolytope type_polytope(const std::vector<FiniteStructure>& family, const FormulaBasis& basis);

/// True when `point` is a convex combination of `generators`.
bool in_convex_hull(const std::vector<Rational>& point, const std::vector<std::vector<Rational>>& generators);

/// Coordinates of `p` at the formulas of `sub` (matched up to renaming of
/// bound variables). Throws InputError when `sub` is not a sub-basis.
TypeVector restrict_type(const TypeVector& p, const FormulaBasis& basis, const FormulaBasis& sub);

/// Least tuple distance between realizations of p and q in m. Throws
/// InputError when either is not realized in m.
Rational logic_distance(const TypeVector& p, const TypeVector& q, const FiniteStructure& m, const FormulaBasis& basis);

/// max_k |p_k - q_k| / norm_k over formulas of nonzero norm.
Rational norm_distance(const TypeVector& p, const TypeVector& q, const FormulaBasis& basis);

}  // namespace acl
