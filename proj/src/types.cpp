#include "acl/types.hpp"

#include "acl/lp.hpp"

#include <map>
#include <optional>

namespace acl {

FormulaBasis make_basis(std::vector<std::string> variables, std::vector<Formula> formulas,
                        const std::vector<FiniteStructure>& family) {
  if (formulas.empty()) throw InputError("a formula basis needs at least one formula");
  std::set<std::string> declared(variables.begin(), variables.end());
  if (declared.size() != variables.size()) throw InputError("basis variables must be distinct");
  for (const auto& f : formulas)
    for (const auto& v : f.free_variables())
      if (!declared.count(v)) throw InputError("basis formula '" + to_string(f) + "' has undeclared variable " + v);
  FormulaBasis out{std::move(variables), std::move(formulas), {}};
  for (const auto& f : out.formulas) {
    Rational norm = 0;
    for (const auto& m : family)
      for (const auto& v : eval_all(m, f, out.variables))
        if (abs_value(v) > norm) norm = abs_value(v);
    out.norms.push_back(norm);
  }
  return out;
}

std::vector<TypeVector> realized_types(const FiniteStructure& m, const FormulaBasis& basis, std::size_t structure_index) {
  std::vector<std::vector<Rational>> columns;
  for (const auto& f : basis.formulas) columns.push_back(eval_all(m, f, basis.variables));
  std::vector<TypeVector> out;
  std::map<std::vector<Rational>, std::size_t> seen;
  std::size_t row = 0;
  for_each_tuple(m.size(), basis.variables.size(), [&](const std::vector<std::size_t>& tuple) {
    std::vector<Rational> v;
    v.reserve(columns.size());
    for (const auto& c : columns) v.push_back(c[row]);
    ++row;
    auto [it, inserted] = seen.emplace(v, out.size());
    if (inserted) out.push_back(TypeVector{std::move(v), {}, {}});
    out[it->second].realized_at.push_back(Witness{structure_index, tuple});
  });
  return out;
}

TypeVector convex_combination(const std::vector<std::pair<TypeVector, Rational>>& parts) {
  if (parts.empty()) throw InputError("empty convex combination");
  TypeVector out;
  out.values.assign(parts.front().first.values.size(), Rational(0));
  Rational total = 0;
  for (const auto& [t, w] : parts) {
    if (w < 0) throw InputError("negative weight in a convex combination");
    if (t.values.size() != out.values.size()) throw InputError("type vectors of different lengths");
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += w * t.values[k];
    out.combination.emplace_back(t.values, w);
    total += w;
  }
  if (total != 1) throw InputError("convex combination weights sum to " + to_string(total));
  return out;
}

bool in_convex_hull(const std::vector<Rational>& point, const std::vector<std::vector<Rational>>& generators) {
  if (generators.empty()) return false;
  lp::Problem p(generators.size());
  for (std::size_t k = 0; k < point.size(); ++k) {
    std::vector<Rational> row;
    row.reserve(generators.size());
    for (const auto& g : generators) row.push_back(g.at(k));
    p.add(std::move(row), lp::Sense::Equal, point[k]);
  }
  p.add(std::vector<Rational>(generators.size(), Rational(1)), lp::Sense::Equal, 1);
  return lp::solve(p).status == lp::Status::Optimal;
}

TypePolytope type_polytope(const std::vector<FiniteStructure>& family, const FormulaBasis& basis) {
  if (family.empty()) throw InputError("type polytope of an empty family");
  TypePolytope out;
  std::map<std::vector<Rational>, std::size_t> seen;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (auto& t : realized_types(family[i], basis, i)) {
      auto [it, inserted] = seen.emplace(t.values, out.generators.size());
      if (inserted) {
        out.generators.push_back(std::move(t));
      } else {
        auto& w = out.generators[it->second].realized_at;
        w.insert(w.end(), t.realized_at.begin(), t.realized_at.end());
      }
    }
  }
  for (std::size_t g = 0; g < out.generators.size(); ++g) {
    std::vector<std::vector<Rational>> others;
    for (std::size_t h = 0; h < out.generators.size(); ++h)
      if (h != g) others.push_back(out.generators[h].values);
    if (!in_convex_hull(out.generators[g].values, others)) out.vertices.push_back(g);
  }
  return out;
}

TypeVector restrict_type(const TypeVector& p, const FormulaBasis& basis, const FormulaBasis& sub) {
  if (p.values.size() != basis.formulas.size()) throw InputError("type vector does not match the basis");
  if (sub.variables != basis.variables) throw InputError("sub-basis has different variables");
  std::vector<std::size_t> index;
  for (const auto& f : sub.formulas) {
    std::optional<std::size_t> at;
    for (std::size_t k = 0; k < basis.formulas.size() && !at; ++k)
      if (alpha_equivalent(f, basis.formulas[k])) at = k;
    if (!at) throw InputError("'" + to_string(f) + "' is not in the basis");
    index.push_back(*at);
  }
  auto project = [&](const std::vector<Rational>& v) {
    std::vector<Rational> out;
    for (auto k : index) out.push_back(v[k]);
    return out;
  };
  TypeVector out{project(p.values), p.realized_at, {}};
  for (const auto& [v, w] : p.combination) out.combination.emplace_back(project(v), w);
  return out;
}

namespace {

std::vector<std::vector<std::size_t>> realizations(const TypeVector& p, const FiniteStructure& m,
                                                   const FormulaBasis& basis) {
  if (p.values.size() != basis.formulas.size()) throw InputError("type vector does not match the basis");
  std::vector<std::vector<Rational>> columns;
  for (const auto& f : basis.formulas) columns.push_back(eval_all(m, f, basis.variables));
  std::vector<std::vector<std::size_t>> out;
  std::size_t row = 0;
  for_each_tuple(m.size(), basis.variables.size(), [&](const std::vector<std::size_t>& tuple) {
    bool match = true;
    for (std::size_t k = 0; k < columns.size() && match; ++k) match = columns[k][row] == p.values[k];
    if (match) out.push_back(tuple);
    ++row;
  });
  return out;
}

}  // namespace

Rational logic_distance(const TypeVector& p, const TypeVector& q, const FiniteStructure& m, const FormulaBasis& basis) {
  const auto rp = realizations(p, m, basis);
  const auto rq = realizations(q, m, basis);
  if (rp.empty() || rq.empty()) throw InputError("type is not realized in the structure");
  std::optional<Rational> best;
  for (const auto& a : rp)
    for (const auto& b : rq) {
      Rational d = tuple_distance(m, a, b);
      if (!best || d < *best) best = std::move(d);
      if (*best == 0) return 0;
    }
  return *best;
}

Rational norm_distance(const TypeVector& p, const TypeVector& q, const FormulaBasis& basis) {
  if (p.values.size() != basis.formulas.size() || q.values.size() != basis.formulas.size())
    throw InputError("type vector does not match the basis");
  Rational out = 0;
  for (std::size_t k = 0; k < basis.formulas.size(); ++k) {
    if (basis.norms[k] == 0) continue;
    Rational d = abs_value(p.values[k] - q.values[k]) / basis.norms[k];
    if (d > out) out = d;
  }
  return out;
}

}  // namespace acl
