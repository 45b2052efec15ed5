// acl: command-line front end for finite affine continuous logic.

#include "acl/io.hpp"
#include "acl/pra.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using acl::Rational;
using acl::io::Json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_semantic = 1;
constexpr int exit_input = 2;

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

/// Per-run state: output options and the inputs read so far.
struct Run {
  bool decimal = false;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256
  std::vector<std::pair<std::string, std::string>> written;

  Json read(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw acl::InputError("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    inputs.emplace_back(path.string(), sha256_hex(text));
    try {
      return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw acl::InputError(path.string() + ": " + e.what());
    }
  }

  void write(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw acl::InputError("cannot write " + path.string());
    written.emplace_back(path.string(), sha256_hex(text));
  }

  /// Exact value, plus a "<key>_decimal" rendering under --decimal.
  void put(Json& obj, const std::string& key, const Rational& r) const {
    obj[key] = acl::to_string(r);
    if (decimal) obj[key + "_decimal"] = acl::to_decimal(r);
  }

  acl::FiniteStructure structure(const fs::path& path) { return acl::io::structure_from_json(read(path)); }

  std::vector<acl::FiniteStructure> family(const std::vector<fs::path>& paths, std::vector<std::string>& names) {
    std::vector<acl::FiniteStructure> out;
    for (const auto& p : acl::io::expand_family(paths)) {
      out.push_back(structure(p));
      names.push_back(p.string());
    }
    return out;
  }
};

/// A failure to report on stderr after any stdout report is printed.
struct Failure {
  std::string kind;
  std::string message;
};

struct Outcome {
  Json report;
  int code = exit_ok;
  std::optional<Failure> failure;
};

Json document() { return Json{{"format_version", acl::io::format_version}}; }

const acl::Signature& common_signature(const std::vector<acl::FiniteStructure>& family) {
  if (family.empty()) throw acl::InputError("no structures given");
  for (const auto& m : family)
    if (!(m.signature() == family.front().signature()))
      throw acl::SignatureError("structures in a family must share one signature");
  return family.front().signature();
}

Json tuple_names(const acl::FiniteStructure& m, const std::vector<std::size_t>& tuple) {
  Json out = Json::array();
  for (auto i : tuple) out.push_back(m.points()[i]);
  return out;
}

Outcome cmd_validate(Run& run, const fs::path& file) {
  const auto m = run.structure(file);
  const auto report = acl::validate(m);
  Outcome o{document(), exit_ok, std::nullopt};
  o.report["structure"] = file.string();
  o.report["valid"] = report.valid();
  Json vs = Json::array();
  for (const auto& v : report.violations) {
    Json e{{"kind", v.kind}, {"description", v.description}};
    run.put(e, "amount", v.amount);
    vs.push_back(std::move(e));
  }
  o.report["violations"] = std::move(vs);
  if (!report.valid()) {
    o.code = exit_semantic;
    o.failure = Failure{"invalid_structure", file.string() + " has " + std::to_string(report.violations.size()) +
                                                 " violations"};
  }
  return o;
}

Outcome cmd_eval(Run& run, const fs::path& file, const std::string& text, const std::vector<std::string>& assigns,
                 unsigned p) {
  const auto m = run.structure(file);
  const auto f = acl::parse_formula(text, m.signature());
  acl::Assignment asg;
  for (const auto& a : assigns) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw acl::InputError("--assign expects var=point, got '" + a + "'");
    asg[a.substr(0, eq)] = m.point_index(a.substr(eq + 1));
  }
  const Rational v = acl::eval(m, f, asg, p);
  Outcome o{document(), exit_ok, std::nullopt};
  o.report["formula"] = acl::to_string(f);
  if (p != 1) o.report["p"] = p;
  o.report["value"] = acl::to_string(v);
  o.report["decimal"] = acl::to_decimal(v);
  return o;
}

Outcome cmd_mean(Run& run, const fs::path& charge_file, const std::vector<fs::path>& files, unsigned p,
                 const std::string& check, const std::string& out_file) {
  const auto mu = acl::io::charge_from_json(run.read(charge_file));
  std::vector<std::string> names;
  const auto family = run.family(files, names);
  if (mu.size() != family.size())
    throw acl::InputError("charge has " + std::to_string(mu.size()) + " weights for " + std::to_string(family.size()) +
                          " structures");
  common_signature(family);
  const auto mean = acl::ultramean(family, mu, p);

  Json doc = document();
  doc["structure"] = acl::io::to_json(mean.structure);
  Json prov;
  prov["charge"] = acl::io::to_json(mu)["weights"];
  prov["family"] = names;
  if (p != 1) prov["p"] = p;
  Json classes = Json::array();
  for (std::size_t pt = 0; pt < mean.structure.size(); ++pt) {
    Json members = Json::array();
    for (std::size_t r = 0; r < mean.tuples.size(); ++r)
      if (mean.class_of[r] == pt) {
        Json t = Json::array();
        for (std::size_t i = 0; i < family.size(); ++i) t.push_back(family[i].points()[mean.tuples[r][i]]);
        members.push_back(std::move(t));
      }
    classes.push_back(Json{{"point", mean.structure.points()[pt]}, {"tuples", std::move(members)}});
  }
  prov["classes"] = std::move(classes);
  doc["provenance"] = std::move(prov);

  Outcome o;
  Json check_report;
  if (!check.empty()) {
    const auto f = acl::parse_formula(check, mean.structure.signature());
    const std::vector<std::string> vars(f.free_variables().begin(), f.free_variables().end());
    bool pass = true;
    std::size_t instances = 0;
    Json first_mismatch;
    // Every point of the mean is the class of its first tuple; compare at
    // every assignment of the free variables to mean points.
    std::vector<std::size_t> representative(mean.structure.size(), mean.tuples.size());
    for (std::size_t r = 0; r < mean.tuples.size(); ++r)
      if (representative[mean.class_of[r]] == mean.tuples.size()) representative[mean.class_of[r]] = r;
    Json terms = Json::array();
    Rational mean_value, weighted;
    acl::for_each_tuple(mean.structure.size(), vars.size(), [&](const std::vector<std::size_t>& pts) {
      acl::Assignment asg;
      for (std::size_t k = 0; k < vars.size(); ++k) asg[vars[k]] = pts[k];
      const Rational lhs = acl::eval(mean.structure, f, asg, p);
      Rational rhs = 0;
      Json these = Json::array();
      for (std::size_t i = 0; i < family.size(); ++i) {
        acl::Assignment ai;
        for (std::size_t k = 0; k < vars.size(); ++k) ai[vars[k]] = mean.tuples[representative[pts[k]]][i];
        const Rational v = acl::eval(family[i], f, ai, p);
        rhs += mu.weight(i) * v;
        Json t{{"structure", names[i]}};
        run.put(t, "weight", mu.weight(i));
        run.put(t, "value", v);
        these.push_back(std::move(t));
      }
      if (instances == 0) {
        terms = std::move(these);
        mean_value = lhs;
        weighted = rhs;
      }
      if (lhs != rhs && pass) {
        pass = false;
        first_mismatch = Json{{"assignment", Json::object()}};
        for (std::size_t k = 0; k < vars.size(); ++k)
          first_mismatch["assignment"][vars[k]] = mean.structure.points()[pts[k]];
        run.put(first_mismatch, "mean_value", lhs);
        run.put(first_mismatch, "weighted_sum", rhs);
      }
      ++instances;
    });
    check_report["formula"] = acl::to_string(f);
    check_report["assignments"] = instances;
    if (vars.empty()) {
      run.put(check_report, "mean_value", mean_value);
      check_report["terms"] = std::move(terms);
      run.put(check_report, "weighted_sum", weighted);
    }
    check_report["pass"] = pass;
    if (!pass) {
      check_report["mismatch"] = first_mismatch;
      o.code = exit_semantic;
      o.failure = Failure{"ultramean_mismatch", "ultramean identity fails for " + acl::to_string(f)};
    }
    doc["check"] = check_report;
  }

  if (out_file.empty()) {
    o.report = std::move(doc);
  } else {
    run.write(out_file, doc.dump(2) + "\n");
    o.report = document();
    o.report["written"] = out_file;
    o.report["points"] = mean.structure.size();
    if (!check.empty()) o.report["check"] = check_report;
  }
  return o;
}

Json charge_report(Run& run, const acl::Charge& c) {
  Json w = Json::object();
  for (std::size_t i = 0; i < c.size(); ++i) run.put(w, c.ids()[i], c.weight(i));
  return w;
}

Json unsat_report(Run& run, const acl::Theory& t, const acl::Unsat& u) {
  Json j{{"verdict", "unsat"}};
  Json cert = Json::array();
  for (const auto& [idx, coeff] : u.certificate) {
    Json e{{"condition", acl::to_string(t.conditions[idx])}};
    run.put(e, "coefficient", coeff);
    cert.push_back(std::move(e));
  }
  j["certificate"] = std::move(cert);
  j["combination"] = acl::to_string(acl::certificate_condition(t, u));
  run.put(j, "margin", u.margin);
  return j;
}

Outcome cmd_sat(Run& run, const fs::path& theory_file, const std::vector<fs::path>& files, const std::string& target) {
  const Json tj = run.read(theory_file);
  std::vector<std::string> names;
  const auto family = run.family(files, names);
  const auto& sig = common_signature(family);
  const auto theory = acl::io::theory_from_json(tj, sig);

  Outcome o{document(), exit_ok, std::nullopt};
  const auto verdict = acl::sat_over_family(theory, family, names);
  if (const auto* u = std::get_if<acl::Unsat>(&verdict)) {
    const Json report = unsat_report(run, theory, *u);
    for (const auto& [k, v] : report.items()) o.report[k] = v;
    o.code = exit_semantic;
    o.failure = Failure{"unsat", "theory is not affinely satisfiable over the family"};
    return o;
  }
  const auto& charge = std::get<acl::Sat>(verdict).charge;
  o.report["verdict"] = "sat";
  o.report["charge"] = charge_report(run, charge);
  Json margins = Json::array();
  for (const auto& c : theory.conditions) {
    Rational m = 0;
    for (std::size_t i = 0; i < family.size(); ++i) m += charge.weight(i) * acl::check_condition(family[i], c).margin;
    Json e{{"condition", acl::to_string(c)}};
    run.put(e, "margin", m);
    margins.push_back(std::move(e));
  }
  o.report["margins"] = std::move(margins);

  if (!target.empty()) {
    const auto parsed = acl::parse_conditions(target, sig);
    if (parsed.size() != 1) throw acl::InputError("--target must be a single inequality");
    const auto& goal = parsed.front();
    const auto cm = acl::consequence_margin(theory, goal, family, names);
    Json tr{{"condition", acl::to_string(goal)}};
    run.put(tr, "margin", cm.value);
    tr["consequence"] = cm.value >= 0;
    tr["minimizer"] = charge_report(run, cm.minimizer);
    Json mult = Json::array();
    for (const auto& y : cm.multipliers) mult.push_back(acl::to_string(y));
    tr["multipliers"] = std::move(mult);
    run.put(tr, "offset", cm.offset);
    o.report["target"] = std::move(tr);
    if (cm.value < 0) {
      o.code = exit_semantic;
      o.failure = Failure{"not_consequence", "target fails in some mean of models of the theory"};
    }
  }
  return o;
}

Outcome cmd_separate(Run& run, const fs::path& dir_a, const fs::path& dir_b, const fs::path& basis_file) {
  std::vector<std::string> names_a, names_b;
  const auto a = run.family({dir_a}, names_a);
  const auto b = run.family({dir_b}, names_b);
  auto all = a;
  all.insert(all.end(), b.begin(), b.end());
  const auto& sig = common_signature(all);
  const auto basis = acl::io::basis_from_json(run.read(basis_file), sig);
  if (!basis.variables.empty()) throw acl::InputError("separation needs a basis of sentences (no variables)");

  Outcome o{document(), exit_ok, std::nullopt};
  o.report["family_a"] = names_a;
  o.report["family_b"] = names_b;
  const auto result = acl::separate(a, b, basis.formulas);
  if (std::holds_alternative<acl::NotSeparable>(result)) {
    o.report["verdict"] = "not_separable";
    o.code = exit_semantic;
    o.failure = Failure{"not_separable", "the convex hulls of the two families meet"};
    return o;
  }
  const auto& s = std::get<acl::Separation>(result);
  const auto sigma = acl::linear_combination(basis.formulas, s.coeffs);
  o.report["verdict"] = "separated";
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs) coeffs.push_back(acl::to_string(c));
  o.report["coeffs"] = std::move(coeffs);
  o.report["sentence"] = acl::to_string(sigma);
  run.put(o.report, "r", s.r);
  run.put(o.report, "s", s.s);
  o.report["condition_a"] = acl::to_string(acl::Condition{sigma, acl::Formula::numeral(s.r)});
  o.report["condition_b"] = acl::to_string(acl::Condition{acl::Formula::numeral(s.s), sigma});
  return o;
}

Outcome cmd_types(Run& run, const fs::path& basis_file, const std::vector<fs::path>& files,
                  const std::vector<std::size_t>& metrics) {
  const Json bj = run.read(basis_file);
  std::vector<std::string> names;
  const auto family = run.family(files, names);
  const auto spec = acl::io::basis_from_json(bj, common_signature(family));
  const auto basis = acl::make_basis(spec.variables, spec.formulas, family);
  const auto poly = acl::type_polytope(family, basis);

  Outcome o{document(), exit_ok, std::nullopt};
  Json bjson{{"variables", basis.variables}};
  Json fs_ = Json::array();
  for (std::size_t k = 0; k < basis.formulas.size(); ++k) {
    Json e{{"formula", acl::to_string(basis.formulas[k])}};
    run.put(e, "norm", basis.norms[k]);
    fs_.push_back(std::move(e));
  }
  bjson["formulas"] = std::move(fs_);
  o.report["basis"] = std::move(bjson);
  Json gens = Json::array();
  for (const auto& g : poly.generators) {
    Json values = Json::array();
    for (const auto& v : g.values) values.push_back(acl::to_string(v));
    Json e{{"values", std::move(values)}};
    if (run.decimal) {
      Json dec = Json::array();
      for (const auto& v : g.values) dec.push_back(acl::to_decimal(v));
      e["values_decimal"] = std::move(dec);
    }
    const auto& w = g.realized_at.front();
    e["witness"] = Json{{"structure", names[w.structure]}, {"tuple", tuple_names(family[w.structure], w.tuple)}};
    e["realizations"] = g.realized_at.size();
    gens.push_back(std::move(e));
  }
  o.report["generators"] = std::move(gens);
  o.report["vertices"] = poly.vertices;

  if (!metrics.empty()) {
    if (metrics.size() != 2) throw acl::InputError("--metrics takes two generator indices");
    for (auto k : metrics)
      if (k >= poly.generators.size())
        throw acl::InputError("generator index " + std::to_string(k) + " out of range");
    const auto& p = poly.generators[metrics[0]];
    const auto& q = poly.generators[metrics[1]];
    Json mj{{"p", metrics[0]}, {"q", metrics[1]}};
    std::optional<Rational> logic;
    for (std::size_t i = 0; i < family.size(); ++i) {
      auto in = [&](const acl::TypeVector& t) {
        for (const auto& w : t.realized_at)
          if (w.structure == i) return true;
        return false;
      };
      if (!in(p) || !in(q)) continue;
      const Rational d = acl::logic_distance(p, q, family[i], basis);
      if (!logic || d < *logic) logic = d;
    }
    if (logic)
      run.put(mj, "logic_distance", *logic);
    else
      mj["logic_distance"] = nullptr;
    run.put(mj, "norm_distance", acl::norm_distance(p, q, basis));
    o.report["metrics"] = std::move(mj);
  }
  return o;
}

Outcome cmd_qe(Run& run, const std::string& text, std::optional<std::size_t> oracle, const std::string& step_text) {
  namespace pra = acl::pra;
  const auto sig = pra::signature();
  const auto f = acl::parse_formula(text, sig);
  const auto result = pra::qe(f);

  Outcome o{document(), exit_ok, std::nullopt};
  o.report["input"] = acl::to_string(f);
  o.report["result"] = pra::to_string(result);
  o.report["formula"] = acl::to_string(pra::to_formula(result));
  o.report["constant"] = result.is_constant();
  if (result.is_constant()) run.put(o.report, "value", result.constant());

  if (oracle) {
    const Rational step = acl::parse_rational(step_text);
    const std::vector<std::string> free(f.free_variables().begin(), f.free_variables().end());
    Json transcript = Json::array();
    bool agree = true;
    std::size_t checks = 0;
    for (const auto& alg : pra::weight_grid(*oracle, step)) {
      Json entry;
      Json w = Json::array();
      for (const auto& x : alg.weights()) w.push_back(acl::to_string(x));
      entry["weights"] = std::move(w);
      std::size_t count = 0;
      Json mismatches = Json::array();
      acl::for_each_tuple(alg.events(), free.size(), [&](const std::vector<std::size_t>& events) {
        pra::EventAssignment asg;
        for (std::size_t k = 0; k < free.size(); ++k) asg[free[k]] = events[k];
        const Rational expected = pra::oracle_eval(f, alg, asg);
        const Rational got = pra::evaluate(result, alg, asg);
        ++count;
        if (expected != got) {
          Json m{{"assignment", Json::object()}};
          for (std::size_t k = 0; k < free.size(); ++k) m["assignment"][free[k]] = alg.point_name(events[k]);
          m["oracle"] = acl::to_string(expected);
          m["qe"] = acl::to_string(got);
          mismatches.push_back(std::move(m));
        }
      });
      checks += count;
      entry["assignments"] = count;
      entry["agree"] = mismatches.empty();
      if (!mismatches.empty()) {
        agree = false;
        entry["mismatches"] = std::move(mismatches);
      }
      transcript.push_back(std::move(entry));
    }
    Json oj{{"max_atoms", *oracle}, {"step", acl::to_string(step)}, {"algebras", transcript.size()},
            {"checks", checks}, {"agree", agree}, {"transcript", std::move(transcript)}};
    o.report["oracle"] = std::move(oj);
    if (!agree) {
      o.code = exit_semantic;
      o.failure = Failure{"qe_mismatch", "quantifier elimination disagrees with the oracle"};
    }
  }
  return o;
}

Outcome cmd_check_proof(Run& run, const fs::path& proof_file, const fs::path& theory_file, const fs::path& probe) {
  const Json pj = run.read(proof_file);
  const Json tj = run.read(theory_file);
  std::vector<acl::FiniteStructure> family;
  std::vector<std::string> names;
  if (!probe.empty()) family = run.family({probe}, names);
  std::optional<acl::Signature> sig = acl::io::theory_signature(tj);
  if (!sig) {
    if (family.empty()) throw acl::InputError("theory file must embed a signature when no --probe family is given");
    sig = common_signature(family);
  }
  const auto gamma = acl::io::theory_from_json(tj, *sig);
  const auto proof = acl::io::proof_from_json(pj, *sig);
  const auto result = acl::check(proof, gamma, *sig);

  Outcome o{document(), exit_ok, std::nullopt};
  o.report["conclusion"] = acl::to_string(proof.conclusion);
  o.report["nodes"] = proof.size();
  o.report["depth"] = proof.depth();
  o.report["valid"] = result.valid;
  if (!result.valid) {
    o.report["path"] = acl::path_to_string(result.path);
    o.report["reason"] = result.reason;
    o.code = exit_semantic;
    o.failure = Failure{"invalid_proof", "at " + acl::path_to_string(result.path) + ": " + result.reason};
    return o;
  }
  if (!probe.empty()) {
    const auto report = acl::soundness_probe(proof, gamma, family);
    Json pr{{"family", names}, {"structures", report.structures}, {"models", report.models}};
    if (report.min_margin)
      run.put(pr, "min_margin", *report.min_margin);
    else
      pr["min_margin"] = nullptr;
    o.report["probe"] = std::move(pr);
  }
  return o;
}

Outcome cmd_rendezvous(Run& run, const fs::path& file, unsigned n) {
  const auto m = run.structure(file);
  const auto v = acl::rendezvous_value(m, n);
  Outcome o{document(), exit_ok, std::nullopt};
  o.report["structure"] = file.string();
  o.report["points"] = m.size();
  o.report["n"] = n;
  run.put(o.report, "lower", v.lower);
  run.put(o.report, "upper", v.upper);
  o.report["lower_sentence"] = acl::to_string(acl::rendezvous_sentence(n, false));
  o.report["upper_sentence"] = acl::to_string(acl::rendezvous_sentence(n, true));
  return o;
}

void print_error(const Failure& f) {
  Json e{{"error", {{"kind", f.kind}, {"message", f.message}}}};
  std::cerr << e.dump() << "\n";
}

void write_manifest(Run& run, const std::string& path, int argc, char** argv, const std::string& stdout_text, int code) {
  Json m = document();
  Json cmd = Json::array();
  for (int i = 0; i < argc; ++i) cmd.push_back(argv[i]);
  m["command"] = std::move(cmd);
  Json inputs = Json::array();
  std::string all;
  for (const auto& [p, h] : run.inputs) {
    inputs.push_back(Json{{"path", p}, {"sha256", h}});
    all += p + '\0' + h + '\n';
  }
  m["inputs"] = std::move(inputs);
  m["inputs_sha256"] = sha256_hex(all);
  Json outputs = Json::array();
  outputs.push_back(Json{{"stream", "stdout"}, {"sha256", sha256_hex(stdout_text)}});
  for (const auto& [p, h] : run.written) outputs.push_back(Json{{"path", p}, {"sha256", h}});
  m["outputs"] = std::move(outputs);
  m["exit_code"] = code;
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << m.dump(2) << "\n")) print_error({"input", "cannot write manifest " + path});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite affine continuous logic toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Run run;
  std::string manifest;
  app.add_flag("--decimal", run.decimal, "Add decimal renderings next to exact values");
  app.add_option("--manifest", manifest, "Write a run manifest (input and output SHA-256) to this file");

  std::function<Outcome()> action;

  fs::path file, file2, file3, probe;
  std::vector<fs::path> files;
  std::string text, check, out_file, target, step = "1/4";
  std::vector<std::string> assigns;
  std::vector<std::size_t> metrics;
  unsigned p = 1, n = 0;
  std::optional<std::size_t> oracle;

  auto* validate = app.add_subcommand("validate", "Check the metric, range and Lipschitz conditions of a structure");
  validate->add_option("structure", file)->required();
  validate->callback([&] { action = [&] { return cmd_validate(run, file); }; });

  auto* eval = app.add_subcommand("eval", "Evaluate a formula exactly in a structure");
  eval->add_option("structure", file)->required();
  eval->add_option("formula", text)->required();
  eval->add_option("--assign", assigns, "var=point");
  eval->add_option("--p", p, "L^p reading of distance atoms")->check(CLI::PositiveNumber);
  eval->callback([&] { action = [&] { return cmd_eval(run, file, text, assigns, p); }; });

  auto* mean = app.add_subcommand("mean", "Build the ultramean of structures under a charge");
  mean->add_option("charge", file)->required();
  mean->add_option("structures", files)->required();
  mean->add_option("--p", p, "L^p mode")->check(CLI::PositiveNumber);
  mean->add_option("--check-ultramean", check, "Replay the ultramean identity for this formula");
  mean->add_option("--out", out_file, "Write the mean structure here instead of stdout");
  mean->callback([&] { action = [&] { return cmd_mean(run, file, files, p, check, out_file); }; });

  auto* sat = app.add_subcommand("sat", "Decide affine satisfiability of a theory over a family");
  sat->add_option("theory", file)->required();
  sat->add_option("structures", files)->required();
  sat->add_option("--target", target, "Condition whose consequence margin to compute");
  sat->callback([&] { action = [&] { return cmd_sat(run, file, files, target); }; });

  auto* separate = app.add_subcommand("separate", "Separate two families by a basic condition");
  separate->add_option("family_a", file)->required();
  separate->add_option("family_b", file2)->required();
  separate->add_option("basis", file3)->required();
  separate->callback([&] { action = [&] { return cmd_separate(run, file, file2, file3); }; });

  auto* types = app.add_subcommand("types", "Report the realized-type polytope of a basis");
  types->add_option("basis", file)->required();
  types->add_option("structures", files)->required();
  types->add_option("--metrics", metrics, "Two generator indices")->expected(2);
  types->callback([&] { action = [&] { return cmd_types(run, file, files, metrics); }; });

  auto* qe = app.add_subcommand("qe", "Eliminate quantifiers from a probability-algebra formula");
  qe->add_option("formula", text)->required();
  qe->add_option("--oracle", oracle, "Check against every algebra with up to this many atoms");
  qe->add_option("--step", step, "Weight grid step for --oracle");
  qe->callback([&] { action = [&] { return cmd_qe(run, text, oracle, step); }; });

  auto* proof = app.add_subcommand("check-proof", "Check a proof tree against a theory");
  proof->add_option("proof", file)->required();
  proof->add_option("theory", file2)->required();
  proof->add_option("--probe", probe, "Directory of structures for a soundness probe");
  proof->callback([&] { action = [&] { return cmd_check_proof(run, file, file2, probe); }; });

  auto* rendezvous = app.add_subcommand("rendezvous", "Rendez-vous values of a structure");
  rendezvous->add_option("structure", file)->required();
  rendezvous->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  rendezvous->callback([&] { action = [&] { return cmd_rendezvous(run, file, n); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error({"usage", e.what()});
    return exit_input;
  }

  Outcome outcome;
  try {
    outcome = action();
  } catch (const acl::SyntaxError& e) {
    outcome = {{}, exit_input, Failure{"syntax", e.what()}};
  } catch (const acl::SignatureError& e) {
    outcome = {{}, exit_input, Failure{"signature", e.what()}};
  } catch (const acl::InputError& e) {
    outcome = {{}, exit_input, Failure{"input", e.what()}};
  } catch (const acl::EvalError& e) {
    outcome = {{}, exit_input, Failure{"eval", e.what()}};
  } catch (const acl::CapExceeded& e) {
    outcome = {{}, exit_input, Failure{"cap_exceeded", e.what()}};
  } catch (const acl::SoundnessViolation& e) {
    outcome = {{}, exit_semantic, Failure{"soundness_violation", e.what()}};
  } catch (const acl::UnsatisfiableTheory& e) {
    outcome = {{}, exit_semantic, Failure{"unsatisfiable_theory", e.what()}};
  } catch (const std::exception& e) {
    outcome = {{}, exit_input, Failure{"internal", e.what()}};
  }

  std::string out_text;
  if (!outcome.report.is_null()) out_text = outcome.report.dump(2) + "\n";
  std::cout << out_text << std::flush;
  if (outcome.failure) print_error(*outcome.failure);
  if (!manifest.empty()) write_manifest(run, manifest, argc, argv, out_text, outcome.code);
  return outcome.code;
}
