#pragma once

// Affine satisfiability of finite theories relative to a finite family of
// structures, decided by exact linear programming.

#include "acl/structures.hpp"
#include "acl/ultramean.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace acl {

/// values[i][j] is the value of sentence j in family member i.
struct ValueMatrix {
  std::vector<Formula> sentences;
  std::vector<std::vector<Rational>> values;
};

/// Throws InputError when a sentence has free variables.
ValueMatrix value_matrix(const std::vector<FiniteStructure>& family, const std::vector<Formula>& sentences);

struct Sat {
  Charge charge;
};

/// sum_j coeff_j (lhs_j - rhs_j) >= margin in every family member.
struct Unsat {
  std::vector<std::pair<std::size_t, Rational>> certificate;
  Rational margin;
};

using SatVerdict = std::variant<Sat, Unsat>;

/// Decides whether some charge w over the family satisfies every condition of
/// T in the weighted mean. Charge ids default to "0", "1", ...
SatVerdict sat_over_family(const Theory& t, const std::vector<FiniteStructure>& family,
                           const std::vector<std::string>& ids = {});

/// The certificate's affine combination as a single condition.
Condition certificate_condition(const Theory& t, const Unsat& u);

/// Raised by consequence_margin when the theory itself is unsatisfiable.
class UnsatisfiableTheory : public Error {
 public:
  explicit UnsatisfiableTheory(Unsat verdict)
      : Error("theory is not satisfiable over the family"), verdict_(std::move(verdict)) {}
  const Unsat& verdict() const { return verdict_; }

 private:
  Unsat verdict_;
};

struct ConsequenceMargin {
  /// min over satisfying charges w of (rhs - lhs) of the target in the mean.
  Rational value;
  /// A charge attaining the minimum.
  Charge minimizer;
  /// Dual witness: in every member,
  /// (rhs - lhs)(target) - sum_j multipliers_j (rhs_j - lhs_j) >= offset,
  /// and offset equals value.
  std::vector<Rational> multipliers;
  Rational offset;
};

ConsequenceMargin consequence_margin(const Theory& t, const Condition& target, const std::vector<FiniteStructure>& family,
                                     const std::vector<std::string>& ids = {});

struct Separation {
  /// sigma = sum_k coeffs_k basis_k with sigma <= r on A and sigma >= s on B.
  std::vector<Rational> coeffs;
  Rational r;
  Rational s;
};

struct NotSeparable {};

using SeparationResult = std::variant<Separation, NotSeparable>;

/// Maximizes s - r over coefficients in [-1,1]. NotSeparable exactly when the
/// convex hulls of the value vectors of A and B meet.
SeparationResult separate(const std::vector<FiniteStructure>& a, const std::vector<FiniteStructure>& b,
                          const std::vector<Formula>& basis);

/// sum_k coeffs_k f_k, skipping zero coefficients and leaving unit ones
/// unscaled; the zero combination is the numeral 0.
Formula linear_combination(const std::vector<Formula>& formulas, const std::vector<Rational>& coeffs);

}  // namespace acl
