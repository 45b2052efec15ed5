#pragma once

// JSON file formats. Every document carries "format_version"; rationals are
// written as "p/q" strings and read from strings or integers.

#include "acl/proofcheck.hpp"
#include "acl/satisfiability.hpp"
#include "acl/types.hpp"
#include "acl/ultramean.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace acl::io {

using Json = nlohmann::ordered_json;

inline constexpr int format_version = 1;

/// Reads and parses a JSON file; InputError on I/O or syntax failure.
Json load_json(const std::filesystem::path& path);
/// Rejects documents whose format_version is missing or unsupported.
void require_version(const Json& j, const std::string& what);

Rational rational_from_json(const Json& j);
Json to_json(const Rational& r);

Signature signature_from_json(const Json& j);
Json to_json(const Signature& sig);

/// { format_version, signature, points, metric (rows), power?, constants,
///   functions, relations }. Tables are flat and row-major; function tables
/// hold point names. A mean-structure document is read as its structure.
FiniteStructure structure_from_json(const Json& j);
Json to_json(const FiniteStructure& m);

/// { format_version, weights: { id: weight, ... } } in index order.
Charge charge_from_json(const Json& j);
Json to_json(const Charge& c);

/// { format_version, signature?, conditions: [ "a <= b" | "a >= b" | "a = b" ] }.
/// The embedded signature, when present, replaces `fallback`.
Theory theory_from_json(const Json& j, const Signature& fallback);
/// The embedded signature of a theory file, if any.
std::optional<Signature> theory_signature(const Json& j);

struct BasisSpec {
  std::vector<std::string> variables;
  std::vector<Formula> formulas;
};

/// { format_version, variables: [...], formulas: [...] }.
BasisSpec basis_from_json(const Json& j, const Signature& sig);

/// Proof node: { concl, by, premises?, inst? }. A proof file is
/// { format_version, proof: node }.
ProofNode proof_node_from_json(const Json& j, const Signature& sig);
ProofNode proof_from_json(const Json& j, const Signature& sig);
Json to_json(const ProofNode& p);

/// Structure files named on the command line; a directory stands for its
/// *.json files in name order.
std::vector<std::filesystem::path> expand_family(const std::vector<std::filesystem::path>& paths);

}  // namespace acl::io
