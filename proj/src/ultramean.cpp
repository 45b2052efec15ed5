#include "acl/ultramean.hpp"

#include <map>

namespace acl {

Charge::Charge(std::vector<std::string> ids, std::vector<Rational> weights)
    : ids_(std::move(ids)), weights_(std::move(weights)) {
  if (ids_.empty()) throw InputError("charge has an empty index set");
  if (ids_.size() != weights_.size()) throw InputError("charge ids and weights differ in length");
  Rational total = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] < 0) throw InputError("negative charge weight at '" + ids_[i] + "'");
    total += weights_[i];
  }
  if (total != 1) throw InputError("charge weights sum to " + to_string(total) + ", not 1");
  std::set<std::string> seen;
  for (const auto& id : ids_)
    if (!seen.insert(id).second) throw InputError("duplicate charge index '" + id + "'");
}

Charge Charge::point_mass(std::size_t size, std::size_t at) {
  std::vector<std::string> ids;
  std::vector<Rational> w(size, Rational(0));
  for (std::size_t i = 0; i < size; ++i) ids.push_back(std::to_string(i));
  w.at(at) = 1;
  return Charge(std::move(ids), std::move(w));
}

Charge Charge::uniform(std::size_t size) {
  std::vector<std::string> ids;
  std::vector<Rational> w;
  for (std::size_t i = 0; i < size; ++i) {
    ids.push_back(std::to_string(i));
    w.emplace_back(1, static_cast<unsigned long>(size));
  }
  for (auto& x : w) x.canonicalize();
  return Charge(std::move(ids), std::move(w));
}

std::size_t Charge::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (ids_[i] == id) return i;
  throw InputError("unknown charge index '" + std::string(id) + "'");
}

Charge fubini(const Charge& mu, const Charge& nu) {
  std::vector<std::string> ids;
  std::vector<Rational> w;
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j) {
      ids.push_back("(" + mu.ids()[i] + "," + nu.ids()[j] + ")");
      w.push_back(mu.weight(i) * nu.weight(j));
    }
  return Charge(std::move(ids), std::move(w));
}

std::size_t MeanStructure::class_of_tuple(const std::vector<std::size_t>& tuple) const {
  std::size_t idx = 0, stride = 1;
  // tuples are lexicographic, so the index is mixed-radix in the member sizes
  for (std::size_t i = tuple.size(); i-- > 0;) {
    idx += tuple[i] * stride;
    stride *= radix.at(i);
  }
  return class_of.at(idx);
}

namespace {

Rational member_distance_power(const FiniteStructure& m, std::size_t a, std::size_t b, unsigned p) {
  const Rational& stored = m.metric_power(a, b);
  if (m.power() == p) return stored;
  if (m.power() == 1) return power(stored, p);
  throw EvalError("cannot combine a d^" + std::to_string(m.power()) + " structure in L^" + std::to_string(p) +
                  " mode");
}

}  // namespace

MeanStructure ultramean(const std::vector<FiniteStructure>& family, const Charge& mu, unsigned p, std::size_t cap) {
  if (family.empty()) throw InputError("ultramean of an empty family");
  if (family.size() != mu.size())
    throw InputError("family has " + std::to_string(family.size()) + " members but the charge has " +
                     std::to_string(mu.size()) + " indices");
  if (p == 0) throw InputError("L^p exponent must be a positive integer");
  const Signature& sig = family.front().signature();
  for (const auto& m : family) {
    if (!(m.signature() == sig)) throw SignatureError("ultramean family members have different signatures");
    check_signature(m, sig);
  }

  const std::size_t k = family.size();
  std::size_t total = 1;
  for (const auto& m : family) {
    if (m.size() == 0) throw InputError("family member with empty universe");
    if (total > cap / m.size()) throw CapExceeded("product universe exceeds the cap of " + std::to_string(cap));
    total *= m.size();
  }

  MeanStructure out;
  out.charge = mu;
  out.family_size = k;
  out.radix.reserve(k);
  for (const auto& m : family) out.radix.push_back(m.size());
  out.tuples.reserve(total);
  {
    std::vector<std::size_t> t(k, 0);
    for (std::size_t n = 0; n < total; ++n) {
      out.tuples.push_back(t);
      for (std::size_t i = k; i-- > 0;) {
        if (++t[i] < family[i].size()) break;
        t[i] = 0;
      }
    }
  }

  auto tuple_dist = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (mu.weight(i) != 0 && a[i] != b[i]) s += mu.weight(i) * member_distance_power(family[i], a[i], b[i], p);
    return s;
  };

  // Tuples at distance zero are exactly those agreeing, up to zero-distance
  // points, on every coordinate of positive weight.
  std::vector<std::vector<std::size_t>> member_class(k);
  for (std::size_t i = 0; i < k; ++i) member_class[i] = quotient(family[i]).class_of;
  out.class_of.assign(total, total);
  std::vector<std::size_t> reps;
  std::map<std::vector<std::size_t>, std::size_t> by_key;
  std::vector<std::size_t> key(k);
  for (std::size_t a = 0; a < total; ++a) {
    for (std::size_t i = 0; i < k; ++i) key[i] = mu.weight(i) == 0 ? 0 : member_class[i][out.tuples[a][i]];
    auto [it, inserted] = by_key.emplace(key, reps.size());
    if (inserted) reps.push_back(a);
    out.class_of[a] = it->second;
  }

  const std::size_t n = reps.size();
  std::vector<std::string> names;
  names.reserve(n);
  for (auto r : reps) {
    std::string name = "[";
    for (std::size_t i = 0; i < k; ++i) {
      if (i) name += ",";
      name += family[i].points()[out.tuples[r][i]];
    }
    names.push_back(name + "]");
  }
  std::vector<Rational> metric(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      metric[i * n + j] = metric[j * n + i] = tuple_dist(out.tuples[reps[i]], out.tuples[reps[j]]);

  FiniteStructure s(sig, std::move(names), std::move(metric), p);

  for (const Symbol* c : sig.of_kind(SymbolKind::Constant)) {
    std::vector<std::size_t> t(k);
    for (std::size_t i = 0; i < k; ++i) t[i] = family[i].constant(c->name);
    s.set_constant(c->name, out.class_of_tuple(t));
  }
  for (const Symbol* f : sig.of_kind(SymbolKind::Function)) {
    FunctionTable table{f->arity, {}};
    std::vector<const FunctionTable*> member_tables;
    for (const auto& m : family) member_tables.push_back(&m.function(f->name));
    for_each_tuple(n, f->arity, [&](const std::vector<std::size_t>& args) {
      std::vector<std::size_t> image(k);
      for (std::size_t i = 0; i < k; ++i) {
        std::size_t idx = 0;
        for (auto a : args) idx = idx * family[i].size() + out.tuples[reps[a]][i];
        image[i] = member_tables[i]->values[idx];
      }
      table.values.push_back(out.class_of_tuple(image));
    });
    s.set_function(f->name, std::move(table));
  }
  for (const Symbol* r : sig.of_kind(SymbolKind::Relation)) {
    RelationTable table{r->arity, {}};
    std::vector<const RelationTable*> member_tables;
    for (const auto& m : family) member_tables.push_back(&m.relation(r->name));
    for_each_tuple(n, r->arity, [&](const std::vector<std::size_t>& args) {
      Rational v = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (mu.weight(i) == 0) continue;
        std::size_t idx = 0;
        for (auto a : args) idx = idx * family[i].size() + out.tuples[reps[a]][i];
        v += mu.weight(i) * member_tables[i]->values[idx];
      }
      table.values.push_back(std::move(v));
    });
    s.set_relation(r->name, std::move(table));
  }
  out.structure = std::move(s);
  return out;
}

MeanStructure powermean(const FiniteStructure& m, const Charge& mu, unsigned p, std::size_t cap) {
  return ultramean(std::vector<FiniteStructure>(mu.size(), m), mu, p, cap);
}

std::size_t diagonal(const MeanStructure& mean, std::size_t point) {
  return mean.class_of_tuple(std::vector<std::size_t>(mean.family_size, point));
}

}  // namespace acl
