#pragma once

// Checker for finite proof trees in the deduction system of affine logic:
// axioms A1-A22 and rules R1-R4.
//
// Real constants are numerals: `1` or `r*1`. The numeral 0 is `0*1`. An
// equality axiom justifies either of its two inequalities.

#include "acl/structures.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace acl {

struct ProofNode {
  Condition conclusion;
  /// "A1".."A22", "hyp:i" (index into the hypotheses) or "R1".."R4".
  std::string by;
  std::vector<ProofNode> premises;
  /// Optional metavariable bindings, as formula, term, rational or variable
  /// text. Each is checked against the match.
  std::map<std::string, std::string> inst;

  std::size_t size() const;
  std::size_t depth() const;
};

struct CheckResult {
  bool valid = true;
  /// Premise indices from the root to the offending node.
  std::vector<std::size_t> path;
  std::string reason;
};

/// `sig` is used to read `inst` bindings.
CheckResult check(const ProofNode& proof, const Theory& gamma, const Signature& sig);

/// "root", or e.g. "root/1/0".
std::string path_to_string(const std::vector<std::size_t>& path);

/// A valid proof whose conclusion fails in a structure satisfying the
/// hypotheses. Any instance is a checker bug.
class SoundnessViolation : public Error {
 public:
  explicit SoundnessViolation(const std::string& what) : Error(what) {}
};

struct ProbeReport {
  std::size_t structures = 0;
  /// Members satisfying every hypothesis under every assignment.
  std::size_t models = 0;
  /// Least margin of the root conclusion over the models.
  std::optional<Rational> min_margin;
};

/// In every family member satisfying gamma universally, checks that the
/// conclusion of every node holds under every assignment. Throws
/// SoundnessViolation otherwise.
ProbeReport soundness_probe(const ProofNode& proof, const Theory& gamma, const std::vector<FiniteStructure>& family);

/// Replaces every subformula 0*f by the numeral 0. The checker never applies
/// this; it is offered for users comparing conditions up to A11.
Formula normalize_zero_scalings(const Formula& f);

struct Derivation {
  Theory gamma;
  ProofNode proof;
};

/// From the hypotheses r*1 <= 0*1 and 0*1 <= r*1, a derivation of
/// r*phi <= 0*1 for an atomic phi (a relation or distance atom).
Derivation zero_scalar_derivation(const Rational& r, const Formula& phi);

}  // namespace acl
