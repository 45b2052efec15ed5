#pragma once

// Dense exact-rational simplex (two phases, Bland's rule).

#include "acl/rational.hpp"

#include <vector>

namespace acl::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };
enum class Status { Optimal, Infeasible, Unbounded };

struct Constraint {
  std::vector<Rational> coeffs;
  Sense sense;
  Rational rhs;
};

/// maximize objective . x subject to the constraints; variables flagged free
/// range over all rationals, the rest are nonnegative.
class Problem {
 public:
  explicit Problem(std::size_t variables);

  std::size_t variables() const { return free_.size(); }
  void set_free(std::size_t var, bool is_free = true) { free_.at(var) = is_free; }
  void set_objective(std::vector<Rational> objective);
  void add(std::vector<Rational> coeffs, Sense sense, Rational rhs);

  const std::vector<Constraint>& constraints() const { return rows_; }
  const std::vector<Rational>& objective() const { return objective_; }
  bool is_free(std::size_t var) const { return free_[var]; }

 private:
  std::vector<bool> free_;
  std::vector<Rational> objective_;
  std::vector<Constraint> rows_;
};

struct Solution {
  Status status = Status::Infeasible;
  std::vector<Rational> x;
  Rational value;
};

Solution solve(const Problem& problem);

}  // namespace acl::lp
