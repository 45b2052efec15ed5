#pragma once

// Ultrameans and powermeans of finite structures under finitely supported
// probability charges.

#include "acl/structures.hpp"

#include <string>
#include <vector>

namespace acl {

/// Product construction would exceed the configured universe cap.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& what) : Error(what) {}
};

/// Finitely supported probability weights over a list of index ids.
class Charge {
 public:
  Charge() = default;
  /// Throws InputError unless weights are nonnegative and sum to 1.
  Charge(std::vector<std::string> ids, std::vector<Rational> weights);

  static Charge point_mass(std::size_t size, std::size_t at);
  static Charge uniform(std::size_t size);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(std::size_t i) const { return weights_[i]; }
  std::size_t index_of(std::string_view id) const;

  bool operator==(const Charge&) const = default;

 private:
  std::vector<std::string> ids_;
  std::vector<Rational> weights_;
};

/// Product charge on I x J, indexed "(i,j)" in row-major order.
Charge fubini(const Charge& mu, const Charge& nu);

inline constexpr std::size_t default_universe_cap = 4096;

struct MeanStructure {
  FiniteStructure structure;
  Charge charge;
  std::size_t family_size = 0;
  /// Universe size of each family member.
  std::vector<std::size_t> radix;
  /// All choice tuples (one coordinate per family member), lexicographic.
  std::vector<std::vector<std::size_t>> tuples;
  /// tuple -> point of `structure`.
  std::vector<std::size_t> class_of;

  /// Point of `structure` holding the class of the given tuple.
  std::size_t class_of_tuple(const std::vector<std::size_t>& tuple) const;
};

/// prod_mu M_i. Distances are sum_i w_i d_i(a_i,b_i)^p (stored as p-th powers
/// when p > 1), relations are weighted means, functions act componentwise,
/// and tuples at distance zero are identified.
MeanStructure ultramean(const std::vector<FiniteStructure>& family, const Charge& mu, unsigned p = 1,
                        std::size_t cap = default_universe_cap);

/// M^mu, the ultramean of the constant family.
MeanStructure powermean(const FiniteStructure& m, const Charge& mu, unsigned p = 1,
                        std::size_t cap = default_universe_cap);

/// Image of a point under the diagonal embedding a -> [a,...,a].
std::size_t diagonal(const MeanStructure& mean, std::size_t point);

}  // namespace acl
