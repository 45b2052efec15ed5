#include "acl/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace acl::io {

namespace {

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw InputError(what + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(what + " is missing \"" + key + "\"");
  return *it;
}

std::string string_of(const Json& j, const std::string& what) {
  if (!j.is_string()) throw InputError(what + " must be a string");
  return j.get<std::string>();
}

const Json& array_of(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array");
  return j;
}

std::vector<std::string> strings_of(const Json& j, const std::string& what) {
  std::vector<std::string> out;
  for (const auto& e : array_of(j, what)) out.push_back(string_of(e, what + " entry"));
  return out;
}

}  // namespace

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void require_version(const Json& j, const std::string& what) {
  const Json& v = field(j, "format_version", what);
  if (!v.is_number_integer() || v.get<long>() != format_version)
    throw InputError(what + " has unsupported format_version " + v.dump());
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected a rational as a \"p/q\" string or an integer, got " + j.dump());
}

Json to_json(const Rational& r) { return to_string(r); }

Signature signature_from_json(const Json& j) {
  Signature sig;
  for (const auto& s : array_of(field(j, "symbols", "signature"), "signature symbols")) {
    Symbol sym;
    sym.name = string_of(field(s, "name", "symbol"), "symbol name");
    sym.kind = parse_symbol_kind(string_of(field(s, "kind", "symbol " + sym.name), "symbol kind"));
    if (sym.kind != SymbolKind::Constant) {
      const Json& a = field(s, "arity", "symbol " + sym.name);
      if (!a.is_number_unsigned()) throw SignatureError("arity of '" + sym.name + "' must be a nonnegative integer");
      sym.arity = a.get<std::size_t>();
    }
    sym.lipschitz = s.contains("lipschitz") ? rational_from_json(s["lipschitz"]) : Rational(0);
    sig.add(std::move(sym));
  }
  return sig;
}

Json to_json(const Signature& sig) {
  Json symbols = Json::array();
  for (const auto& s : sig.symbols()) {
    Json e;
    e["name"] = s.name;
    e["kind"] = std::string(to_string(s.kind));
    if (s.kind != SymbolKind::Constant) e["arity"] = s.arity;
    e["lipschitz"] = to_json(s.lipschitz);
    symbols.push_back(std::move(e));
  }
  return Json{{"symbols", std::move(symbols)}};
}

FiniteStructure structure_from_json(const Json& j) {
  require_version(j, "structure");
  // A mean-structure document wraps its structure.
  if (j.contains("structure") && !j.contains("points")) return structure_from_json(j["structure"]);
  Signature sig = signature_from_json(field(j, "signature", "structure"));
  std::vector<std::string> points = strings_of(field(j, "points", "structure"), "points");
  std::vector<Rational> metric;
  for (const auto& row : array_of(field(j, "metric", "structure"), "metric")) {
    if (array_of(row, "metric row").size() != points.size())
      throw InputError("metric rows must have one entry per point");
    for (const auto& e : row) metric.push_back(rational_from_json(e));
  }
  if (metric.size() != points.size() * points.size()) throw InputError("metric must have one row per point");
  unsigned power = 1;
  if (j.contains("power")) {
    if (!j["power"].is_number_unsigned()) throw InputError("power must be a positive integer");
    power = j["power"].get<unsigned>();
  }
  FiniteStructure m(sig, points, std::move(metric), power);
  if (j.contains("constants"))
    for (const auto& [name, v] : field(j, "constants", "structure").items())
      m.set_constant(name, m.point_index(string_of(v, "constant '" + name + "'")));
  if (j.contains("functions"))
    for (const auto& [name, v] : field(j, "functions", "structure").items()) {
      const Symbol* s = sig.find(name);
      if (!s || s->kind != SymbolKind::Function) throw SignatureError("'" + name + "' is not a declared function");
      FunctionTable t{s->arity, {}};
      for (const auto& e : array_of(v, "function table '" + name + "'"))
        t.values.push_back(m.point_index(string_of(e, "function table entry")));
      m.set_function(name, std::move(t));
    }
  if (j.contains("relations"))
    for (const auto& [name, v] : field(j, "relations", "structure").items()) {
      const Symbol* s = sig.find(name);
      if (!s || s->kind != SymbolKind::Relation) throw SignatureError("'" + name + "' is not a declared relation");
      RelationTable t{s->arity, {}};
      for (const auto& e : array_of(v, "relation table '" + name + "'")) t.values.push_back(rational_from_json(e));
      m.set_relation(name, std::move(t));
    }
  check_signature(m, sig);
  return m;
}

Json to_json(const FiniteStructure& m) {
  Json j;
  j["format_version"] = format_version;
  j["signature"] = to_json(m.signature());
  j["points"] = m.points();
  Json metric = Json::array();
  for (std::size_t a = 0; a < m.size(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < m.size(); ++b) row.push_back(to_json(m.metric_power(a, b)));
    metric.push_back(std::move(row));
  }
  j["metric"] = std::move(metric);
  if (m.power() != 1) j["power"] = m.power();
  Json constants = Json::object();
  for (const auto& [name, pt] : m.constants()) constants[name] = m.points()[pt];
  j["constants"] = std::move(constants);
  Json functions = Json::object();
  for (const auto& [name, t] : m.functions()) {
    Json table = Json::array();
    for (auto v : t.values) table.push_back(m.points()[v]);
    functions[name] = std::move(table);
  }
  j["functions"] = std::move(functions);
  Json relations = Json::object();
  for (const auto& [name, t] : m.relations()) {
    Json table = Json::array();
    for (const auto& v : t.values) table.push_back(to_json(v));
    relations[name] = std::move(table);
  }
  j["relations"] = std::move(relations);
  return j;
}

Charge charge_from_json(const Json& j) {
  require_version(j, "charge");
  const Json& w = field(j, "weights", "charge");
  if (!w.is_object()) throw InputError("charge weights must be an object");
  std::vector<std::string> ids;
  std::vector<Rational> weights;
  for (const auto& [id, v] : w.items()) {
    ids.push_back(id);
    weights.push_back(rational_from_json(v));
  }
  return Charge(std::move(ids), std::move(weights));
}

Json to_json(const Charge& c) {
  Json weights = Json::object();
  for (std::size_t i = 0; i < c.size(); ++i) weights[c.ids()[i]] = to_json(c.weight(i));
  return Json{{"format_version", format_version}, {"weights", std::move(weights)}};
}

std::optional<Signature> theory_signature(const Json& j) {
  if (j.is_object() && j.contains("signature")) return signature_from_json(j["signature"]);
  return std::nullopt;
}

Theory theory_from_json(const Json& j, const Signature& fallback) {
  require_version(j, "theory");
  const auto embedded = theory_signature(j);
  const Signature& sig = embedded ? *embedded : fallback;
  Theory t;
  for (const auto& text : strings_of(field(j, "conditions", "theory"), "conditions"))
    for (auto& c : parse_conditions(text, sig)) t.conditions.push_back(std::move(c));
  return t;
}

BasisSpec basis_from_json(const Json& j, const Signature& sig) {
  require_version(j, "basis");
  BasisSpec out;
  out.variables = strings_of(field(j, "variables", "basis"), "basis variables");
  for (const auto& text : strings_of(field(j, "formulas", "basis"), "basis formulas"))
    out.formulas.push_back(parse_formula(text, sig));
  return out;
}

ProofNode proof_node_from_json(const Json& j, const Signature& sig) {
  ProofNode node{parse_condition(string_of(field(j, "concl", "proof node"), "concl"), sig),
                 string_of(field(j, "by", "proof node"), "by"),
                 {},
                 {}};
  if (j.contains("premises"))
    for (const auto& p : array_of(j["premises"], "premises")) node.premises.push_back(proof_node_from_json(p, sig));
  if (j.contains("inst")) {
    if (!j["inst"].is_object()) throw InputError("inst must be an object");
    for (const auto& [k, v] : j["inst"].items()) node.inst[k] = string_of(v, "inst binding '" + k + "'");
  }
  return node;
}

ProofNode proof_from_json(const Json& j, const Signature& sig) {
  require_version(j, "proof");
  return proof_node_from_json(field(j, "proof", "proof file"), sig);
}

Json to_json(const ProofNode& p) {
  Json j;
  j["concl"] = to_string(p.conclusion);
  j["by"] = p.by;
  if (!p.premises.empty()) {
    Json premises = Json::array();
    for (const auto& q : p.premises) premises.push_back(to_json(q));
    j["premises"] = std::move(premises);
  }
  if (!p.inst.empty()) {
    Json inst = Json::object();
    for (const auto& [k, v] : p.inst) inst[k] = v;
    j["inst"] = std::move(inst);
  }
  return j;
}

std::vector<std::filesystem::path> expand_family(const std::vector<std::filesystem::path>& paths) {
  std::vector<std::filesystem::path> out;
  for (const auto& p : paths) {
    if (std::filesystem::is_directory(p)) {
      std::vector<std::filesystem::path> files;
      for (const auto& e : std::filesystem::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
      if (files.empty()) throw InputError("directory " + p.string() + " holds no .json structures");
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace acl::io
