#include "acl/satisfiability.hpp"

#include "acl/lp.hpp"

#include <optional>

namespace acl {

ValueMatrix value_matrix(const std::vector<FiniteStructure>& family, const std::vector<Formula>& sentences) {
  ValueMatrix out;
  out.sentences = sentences;
  for (const auto& s : sentences)
    if (!s.is_sentence()) throw InputError("'" + to_string(s) + "' has free variables");
  for (const auto& m : family) {
    std::vector<Rational> row;
    row.reserve(sentences.size());
    for (const auto& s : sentences) row.push_back(eval(m, s));
    out.values.push_back(std::move(row));
  }
  return out;
}

namespace {

std::vector<std::string> charge_ids(std::size_t n, const std::vector<std::string>& ids) {
  if (ids.empty()) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
  }
  if (ids.size() != n) throw InputError("family and id list differ in length");
  return ids;
}

// a[i][j] = (lhs_j - rhs_j) in member i; a condition holds in a mean iff the
// weighted column sum is <= 0.
std::vector<std::vector<Rational>> excess_matrix(const Theory& t, const std::vector<FiniteStructure>& family) {
  std::vector<Formula> sentences;
  for (const auto& c : t.conditions) {
    if (!c.is_closed()) throw InputError("condition '" + to_string(c) + "' is not closed");
    sentences.push_back(c.lhs);
    sentences.push_back(c.rhs);
  }
  const auto vm = value_matrix(family, sentences);
  std::vector<std::vector<Rational>> a(family.size(), std::vector<Rational>(t.conditions.size()));
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < t.conditions.size(); ++j) a[i][j] = vm.values[i][2 * j] - vm.values[i][2 * j + 1];
  return a;
}

Charge make_charge(const std::vector<std::string>& ids, std::vector<Rational> w) {
  return Charge(ids, std::move(w));
}

// Solves min t s.t. sum_i w_i a_ij <= t, sum w = 1, w >= 0.
lp::Solution game_primal(const std::vector<std::vector<Rational>>& a, std::size_t m) {
  const std::size_t n = a.size();
  lp::Problem p(n + 1);
  p.set_free(n);
  std::vector<Rational> obj(n + 1, Rational(0));
  obj[n] = -1;
  p.set_objective(obj);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Rational> row(n + 1);
    for (std::size_t i = 0; i < n; ++i) row[i] = a[i][j];
    row[n] = -1;
    p.add(std::move(row), lp::Sense::LessEqual, 0);
  }
  std::vector<Rational> simplex(n + 1, Rational(1));
  simplex[n] = 0;
  p.add(std::move(simplex), lp::Sense::Equal, 1);
  return lp::solve(p);
}

// Solves max delta s.t. sum_j r_j a_ij >= delta for every i, sum r = 1, r >= 0.
lp::Solution game_dual(const std::vector<std::vector<Rational>>& a, std::size_t m) {
  lp::Problem p(m + 1);
  p.set_free(m);
  std::vector<Rational> obj(m + 1, Rational(0));
  obj[m] = 1;
  p.set_objective(obj);
  for (const auto& row_i : a) {
    std::vector<Rational> row(m + 1);
    for (std::size_t j = 0; j < m; ++j) row[j] = row_i[j];
    row[m] = -1;
    p.add(std::move(row), lp::Sense::GreaterEqual, 0);
  }
  std::vector<Rational> simplex(m + 1, Rational(1));
  simplex[m] = 0;
  p.add(std::move(simplex), lp::Sense::Equal, 1);
  return lp::solve(p);
}

}  // namespace

SatVerdict sat_over_family(const Theory& t, const std::vector<FiniteStructure>& family,
                           const std::vector<std::string>& ids) {
  if (family.empty()) throw InputError("satisfiability over an empty family");
  const auto names = charge_ids(family.size(), ids);
  const auto a = excess_matrix(t, family);
  const std::size_t m = t.conditions.size();
  if (m == 0) {
    std::vector<Rational> w(family.size(), Rational(0));
    w[0] = 1;
    return Sat{make_charge(names, std::move(w))};
  }
  const auto primal = game_primal(a, m);
  if (primal.status != lp::Status::Optimal) throw Error("satisfiability LP did not reach an optimum");
  const Rational value = -primal.value;
  if (value <= 0) return Sat{make_charge(names, std::vector<Rational>(primal.x.begin(), primal.x.end() - 1))};

  const auto dual = game_dual(a, m);
  if (dual.status != lp::Status::Optimal || dual.value != value)
    throw Error("satisfiability LP duality check failed");
  Unsat u;
  for (std::size_t j = 0; j < m; ++j)
    if (dual.x[j] > 0) u.certificate.emplace_back(j, dual.x[j]);
  u.margin = dual.value;
  return u;
}

Condition certificate_condition(const Theory& t, const Unsat& u) {
  std::vector<std::pair<Condition, Rational>> weighted;
  for (const auto& [j, r] : u.certificate) weighted.emplace_back(t.conditions.at(j), r);
  return affine_combination(weighted);
}

ConsequenceMargin consequence_margin(const Theory& t, const Condition& target, const std::vector<FiniteStructure>& family,
                                     const std::vector<std::string>& ids) {
  auto verdict = sat_over_family(t, family, ids);
  if (auto* u = std::get_if<Unsat>(&verdict)) throw UnsatisfiableTheory(*u);
  const auto names = charge_ids(family.size(), ids);
  const auto a = excess_matrix(t, family);
  Theory target_theory{{target}};
  const auto c_excess = excess_matrix(target_theory, family);
  const std::size_t n = family.size(), m = t.conditions.size();
  // c_i = rhs - lhs of the target in member i.
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = -c_excess[i][0];

  // Primal: min sum_i w_i c_i s.t. sum_i w_i a_ij <= 0, sum w = 1, w >= 0.
  lp::Problem primal(n);
  {
    std::vector<Rational> obj(n);
    for (std::size_t i = 0; i < n; ++i) obj[i] = -c[i];
    primal.set_objective(obj);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Rational> row(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = a[i][j];
      primal.add(std::move(row), lp::Sense::LessEqual, 0);
    }
    primal.add(std::vector<Rational>(n, Rational(1)), lp::Sense::Equal, 1);
  }
  const auto ps = lp::solve(primal);
  if (ps.status != lp::Status::Optimal) throw Error("consequence LP did not reach an optimum");

  // Dual: max t s.t. t - sum_j y_j a_ij <= c_i, y >= 0, t free.
  lp::Problem dual(m + 1);
  dual.set_free(m);
  {
    std::vector<Rational> obj(m + 1, Rational(0));
    obj[m] = 1;
    dual.set_objective(obj);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> row(m + 1);
      for (std::size_t j = 0; j < m; ++j) row[j] = -a[i][j];
      row[m] = 1;
      dual.add(std::move(row), lp::Sense::LessEqual, c[i]);
    }
  }
  const auto ds = lp::solve(dual);
  if (ds.status != lp::Status::Optimal || ds.value != -ps.value) throw Error("consequence LP duality check failed");

  ConsequenceMargin out;
  out.value = -ps.value;
  out.minimizer = make_charge(names, ps.x);
  out.multipliers.assign(ds.x.begin(), ds.x.end() - 1);
  out.offset = ds.x[m];
  return out;
}

SeparationResult separate(const std::vector<FiniteStructure>& a, const std::vector<FiniteStructure>& b,
                          const std::vector<Formula>& basis) {
  if (basis.empty()) throw InputError("separation needs a nonempty basis");
  if (a.empty() || b.empty()) throw InputError("separation needs two nonempty families");
  const auto va = value_matrix(a, basis);
  const auto vb = value_matrix(b, basis);
  const std::size_t k = basis.size();
  // Variables: c_0..c_{k-1}, r, s, all free; c bounded to [-1,1].
  lp::Problem p(k + 2);
  for (std::size_t i = 0; i < k + 2; ++i) p.set_free(i);
  std::vector<Rational> obj(k + 2, Rational(0));
  obj[k] = -1;
  obj[k + 1] = 1;
  p.set_objective(obj);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> row(k + 2);
    row[i] = 1;
    p.add(row, lp::Sense::LessEqual, 1);
    p.add(row, lp::Sense::GreaterEqual, -1);
  }
  for (const auto& v : va.values) {
    std::vector<Rational> row(v);
    row.push_back(-1);
    row.push_back(0);
    p.add(std::move(row), lp::Sense::LessEqual, 0);
  }
  for (const auto& v : vb.values) {
    std::vector<Rational> row(v);
    row.push_back(0);
    row.push_back(-1);
    p.add(std::move(row), lp::Sense::GreaterEqual, 0);
  }
  const auto sol = lp::solve(p);
  if (sol.status != lp::Status::Optimal) throw Error("separation LP did not reach an optimum");
  if (sol.value <= 0) return NotSeparable{};
  return Separation{std::vector<Rational>(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(k)), sol.x[k],
                    sol.x[k + 1]};
}

Formula linear_combination(const std::vector<Formula>& formulas, const std::vector<Rational>& coeffs) {
  if (formulas.size() != coeffs.size()) throw InputError("formula and coefficient lists differ in length");
  std::optional<Formula> out;
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    if (coeffs[i] == 0) continue;
    Formula term = coeffs[i] == 1 ? formulas[i] : Formula::scale(coeffs[i], formulas[i]);
    out = out ? Formula::sum(*out, term) : term;
  }
  return out ? *out : Formula::numeral(0);
}

}  // namespace acl
