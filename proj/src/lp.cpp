#include "acl/lp.hpp"

#include <limits>
#include <optional>

namespace acl::lp {

Problem::Problem(std::size_t variables) : free_(variables, false), objective_(variables, Rational(0)) {}

void Problem::set_objective(std::vector<Rational> objective) {
  if (objective.size() != variables()) throw InputError("objective length does not match the variable count");
  objective_ = std::move(objective);
}

void Problem::add(std::vector<Rational> coeffs, Sense sense, Rational rhs) {
  if (coeffs.size() != variables()) throw InputError("constraint length does not match the variable count");
  rows_.push_back(Constraint{std::move(coeffs), sense, std::move(rhs)});
}

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), t_(rows, std::vector<Rational>(cols + 1)) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Rational& rhs(std::size_t r) { return t_[r][cols_]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::vector<std::size_t> basis;
  std::vector<bool> allowed;

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = t_[r][c];
    for (auto& v : t_[r]) v /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      const Rational f = t_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    basis[r] = c;
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

  // Maximizes cost . x over the allowed columns with Bland's rule.
  Status optimize(const std::vector<Rational>& cost) {
    while (true) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < cols_ && !entering; ++j) {
        if (!allowed[j]) continue;
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < rows_; ++i)
          if (t_[i][j] != 0) reduced -= cost[basis[i]] * t_[i][j];
        if (reduced > 0) entering = j;
      }
      if (!entering) return Status::Optimal;
      const std::size_t c = *entering;
      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (t_[i][c] <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][c];
        if (!leaving || ratio < best || (ratio == best && basis[i] < basis[*leaving])) {
          leaving = i;
          best = std::move(ratio);
        }
      }
      if (!leaving) return Status::Unbounded;
      pivot(*leaving, c);
    }
  }

  Rational value(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < rows_; ++i) v += cost[basis[i]] * t_[i][cols_];
    return v;
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(cols_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) x[basis[i]] = t_[i][cols_];
    return x;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<std::vector<Rational>> t_;
};

}  // namespace

Solution solve(const Problem& problem) {
  const std::size_t n = problem.variables();
  // Column layout: structural columns (two per free variable), then one
  // slack/surplus per inequality, then artificials.
  std::vector<std::size_t> pos_col(n), neg_col(n, std::numeric_limits<std::size_t>::max());
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (problem.is_free(j)) neg_col[j] = cols++;
  }
  const auto& rows = problem.constraints();
  const std::size_t m = rows.size();
  std::size_t slack_count = 0, artificial_count = 0;
  std::vector<Sense> sense(m);
  std::vector<bool> flip(m);
  for (std::size_t i = 0; i < m; ++i) {
    flip[i] = rows[i].rhs < 0;
    sense[i] = rows[i].sense;
    if (flip[i] && sense[i] != Sense::Equal)
      sense[i] = sense[i] == Sense::LessEqual ? Sense::GreaterEqual : Sense::LessEqual;
    if (sense[i] != Sense::Equal) ++slack_count;
    if (sense[i] != Sense::LessEqual) ++artificial_count;
  }
  const std::size_t structural = cols;
  const std::size_t first_artificial = structural + slack_count;
  const std::size_t total_cols = first_artificial + artificial_count;

  Tableau tab(m, total_cols);
  tab.basis.assign(m, 0);
  tab.allowed.assign(total_cols, true);
  std::size_t next_slack = structural, next_art = first_artificial;
  for (std::size_t i = 0; i < m; ++i) {
    const Rational sign = flip[i] ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i].coeffs[j] == 0) continue;
      tab.at(i, pos_col[j]) = sign * rows[i].coeffs[j];
      if (problem.is_free(j)) tab.at(i, neg_col[j]) = -sign * rows[i].coeffs[j];
    }
    tab.rhs(i) = sign * rows[i].rhs;
    switch (sense[i]) {
      case Sense::LessEqual:
        tab.at(i, next_slack) = 1;
        tab.basis[i] = next_slack++;
        break;
      case Sense::GreaterEqual:
        tab.at(i, next_slack++) = -1;
        tab.at(i, next_art) = 1;
        tab.basis[i] = next_art++;
        break;
      case Sense::Equal:
        tab.at(i, next_art) = 1;
        tab.basis[i] = next_art++;
        break;
    }
  }

  Solution sol;
  if (artificial_count > 0) {
    std::vector<Rational> phase1(total_cols, Rational(0));
    for (std::size_t j = first_artificial; j < total_cols; ++j) phase1[j] = -1;
    tab.optimize(phase1);
    if (tab.value(phase1) < 0) {
      sol.status = Status::Infeasible;
      return sol;
    }
    // Drive zero-valued artificials out of the basis, dropping redundant rows.
    for (std::size_t i = 0; i < tab.rows();) {
      if (tab.basis[i] < first_artificial) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < first_artificial && !col; ++j)
        if (tab.at(i, j) != 0) col = j;
      if (col) {
        tab.pivot(i, *col);
        ++i;
      } else {
        tab.drop_row(i);
      }
    }
    for (std::size_t j = first_artificial; j < total_cols; ++j) tab.allowed[j] = false;
  }

  std::vector<Rational> cost(total_cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos_col[j]] = problem.objective()[j];
    if (problem.is_free(j)) cost[neg_col[j]] = -problem.objective()[j];
  }
  sol.status = tab.optimize(cost);
  if (sol.status != Status::Optimal) return sol;
  const auto columns = tab.primal();
  sol.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    sol.x[j] = columns[pos_col[j]];
    if (problem.is_free(j)) sol.x[j] -= columns[neg_col[j]];
  }
  sol.value = tab.value(cost);
  return sol;
}

}  // namespace acl::lp
