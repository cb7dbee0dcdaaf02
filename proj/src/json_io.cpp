#include "twistpde/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "twistpde/errors.hpp"

namespace twistpde {

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

double require_number(const json& j, const std::string& key,
                      const std::string& where) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(where + ": missing numeric field '" + key + "'");
  return j[key].get<double>();
}

SymMatrix matrix_from_json(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n * n)
    throw ConfigError(where + ": expected a row-major array of " +
                      std::to_string(n * n) + " numbers");
  std::vector<double> rows;
  rows.reserve(n * n);
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(where + ": non-numeric entry");
    rows.push_back(v.get<double>());
  }
  return SymMatrix::from_rows(n, rows);
}

json matrix_to_json(const SymMatrix& m) { return json(m.to_rows()); }

}  // namespace

json transform_to_json(const ScalarTransform& t) {
  json j;
  j["domain_lo"] = t.domain_lo();
  j["domain_hi"] = t.domain_hi();
  switch (t.kind()) {
    case TransformKind::PowerRoot:
      j["kind"] = "power_root";
      j["p"] = t.power();
      break;
    case TransformKind::Affine:
      j["kind"] = "affine";
      j["slope"] = t.slope();
      j["intercept"] = t.intercept();
      break;
    case TransformKind::Chain: {
      j["kind"] = "chain";
      json links = json::array();
      for (const auto& g : t.links()) links.push_back(transform_to_json(g));
      j["links"] = links;
      break;
    }
  }
  return j;
}

ScalarTransform transform_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("transform: expected an object with a 'kind' field");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "power_root") {
    reject_unknown_keys(j, {"kind", "p", "domain_lo", "domain_hi"},
                        "transform");
    return ScalarTransform::power_root(
        static_cast<int>(require_number(j, "p", "transform")),
        j.value("domain_lo", 1e-10), j.value("domain_hi", 1e6));
  }
  if (kind == "affine") {
    reject_unknown_keys(j, {"kind", "slope", "intercept", "domain_lo",
                            "domain_hi"},
                        "transform");
    return ScalarTransform::affine(require_number(j, "slope", "transform"),
                                   j.value("intercept", 0.0),
                                   j.value("domain_lo", -1e6),
                                   j.value("domain_hi", 1e6));
  }
  if (kind == "chain") {
    reject_unknown_keys(j, {"kind", "links", "domain_lo", "domain_hi"},
                        "transform");
    if (!j.contains("links") || !j["links"].is_array())
      throw ConfigError("transform chain: missing 'links' array");
    std::vector<ScalarTransform> links;
    for (const auto& l : j["links"]) links.push_back(transform_from_json(l));
    return ScalarTransform::chain(std::move(links),
                                  require_number(j, "domain_lo", "transform"),
                                  require_number(j, "domain_hi", "transform"));
  }
  throw ConfigError("transform: unknown kind '" + kind + "'");
}

json spec_to_json(const OperatorSpec& spec) {
  json j;
  j["n"] = spec.dim();
  if (spec.has_convex_part()) {
    j["convex"] = json{{"A", matrix_to_json(spec.convex_A())}};
  }
  json terms = json::array();
  for (const ConcaveTerm& t : spec.terms()) {
    terms.push_back(json{
        {"k", t.k}, {"weight", t.weight}, {"B", matrix_to_json(t.B)}});
  }
  j["terms"] = terms;
  j["transform"] = transform_to_json(spec.transform());
  return j;
}

OperatorSpec spec_from_json(const json& j) {
  reject_unknown_keys(j, {"n", "convex", "terms", "transform"},
                      "operator spec");
  int n = static_cast<int>(require_number(j, "n", "operator spec"));
  std::optional<SymMatrix> A;
  if (j.contains("convex")) {
    reject_unknown_keys(j["convex"], {"A"}, "operator spec convex part");
    A = matrix_from_json(j["convex"]["A"], n, "convex.A");
  }
  std::vector<ConcaveTerm> terms;
  if (j.contains("terms")) {
    if (!j["terms"].is_array())
      throw ConfigError("operator spec: 'terms' must be an array");
    for (const auto& t : j["terms"]) {
      reject_unknown_keys(t, {"k", "weight", "B"}, "operator term");
      ConcaveTerm term;
      term.k = static_cast<int>(require_number(t, "k", "operator term"));
      term.weight = t.value("weight", 1.0);
      term.B = matrix_from_json(t.at("B"), n, "term B");
      terms.push_back(std::move(term));
    }
  }
  if (!j.contains("transform"))
    throw ConfigError("operator spec: missing 'transform'");
  return OperatorSpec(n, std::move(A), std::move(terms),
                      transform_from_json(j["transform"]));
}

OperatorSpec load_operator_spec(const std::string& path) {
  json j = json::parse(read_text_file(path));
  return spec_from_json(j);
}

void save_operator_spec(const OperatorSpec& spec, const std::string& path) {
  write_text_file(path, dump_canonical(spec_to_json(spec)));
}

OperatorSpec RunConfig::make_spec() const {
  const json& j = operator_json;
  if (j.is_object() && j.contains("preset")) {
    reject_unknown_keys(j, {"preset", "n", "seed"}, "operator preset");
    return OperatorSpec::preset(j["preset"].get<std::string>(),
                                static_cast<int>(j.value("n", 2.0)),
                                j.value("seed", 0ull));
  }
  return spec_from_json(j);
}

ConvexDomain RunConfig::make_domain() const {
  if (domain_kind == "disk") return ConvexDomain::disk(domain_a);
  if (domain_kind == "ellipse") return ConvexDomain::ellipse(domain_a, domain_b);
  throw ConfigError("domain: unknown kind '" + domain_kind +
                    "' (expected disk or ellipse)");
}

RunConfig run_config_from_json(const json& j, const std::string& base_dir) {
  reject_unknown_keys(j,
                      {"operator", "domain", "f", "phi", "h",
                       "continuity_steps", "seed", "allow_low_rhs"},
                      "run config");
  RunConfig c;
  if (!j.contains("operator"))
    throw ConfigError("run config: missing 'operator'");
  if (j["operator"].is_string()) {
    std::filesystem::path p = j["operator"].get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    c.operator_json = json::parse(read_text_file(p.string()));
  } else {
    c.operator_json = j["operator"];
  }
  if (!j.contains("domain")) throw ConfigError("run config: missing 'domain'");
  const json& d = j["domain"];
  reject_unknown_keys(d, {"kind", "radius", "a", "b"}, "domain");
  c.domain_kind = d.value("kind", "disk");
  if (c.domain_kind == "disk") {
    c.domain_a = c.domain_b = d.value("radius", 1.0);
  } else {
    c.domain_a = require_number(d, "a", "domain");
    c.domain_b = require_number(d, "b", "domain");
  }
  c.f_expr = j.value("f", "3");
  c.phi_expr = j.value("phi", "0");
  c.h = j.value("h", 0.0625);
  if (!(c.h > 0.0)) throw ConfigError("run config: h must be positive");
  c.continuity_steps = static_cast<int>(j.value("continuity_steps", 10.0));
  c.seed = j.value("seed", 0ull);
  c.allow_low_rhs = j.value("allow_low_rhs", false);
  return c;
}

json run_config_to_json(const RunConfig& c) {
  json j;
  j["operator"] = c.operator_json;
  if (c.domain_kind == "disk") {
    j["domain"] = json{{"kind", "disk"}, {"radius", c.domain_a}};
  } else {
    j["domain"] =
        json{{"kind", "ellipse"}, {"a", c.domain_a}, {"b", c.domain_b}};
  }
  j["f"] = c.f_expr;
  j["phi"] = c.phi_expr;
  j["h"] = c.h;
  j["continuity_steps"] = c.continuity_steps;
  j["seed"] = c.seed;
  j["allow_low_rhs"] = c.allow_low_rhs;
  return j;
}

RunConfig load_run_config(const std::string& path) {
  json j = json::parse(read_text_file(path));
  std::string dir = std::filesystem::path(path).parent_path().string();
  return run_config_from_json(j, dir.empty() ? "." : dir);
}

json certificate_to_json(const Certificate& c) {
  json j;
  j["check"] = c.check;
  j["pass"] = c.pass;
  j["samples"] = c.samples_run;
  j["skipped"] = c.samples_skipped;
  j["seed"] = c.seed;
  j["max_violation"] = c.max_violation;
  j["violation_count"] = c.violations.size();
  j["constant_c"] = c.constant_c;
  j["epsilon_spd"] = c.epsilon_spd;
  json witnesses = json::array();
  for (size_t i = 0; i < c.violations.size() && i < 10; ++i) {
    const Violation& v = c.violations[i];
    witnesses.push_back(json{{"sample", v.sample},
                             {"value", v.value},
                             {"tolerance", v.tolerance}});
  }
  j["witnesses"] = witnesses;
  return j;
}

json sandwich_to_json(const SandwichResult& r) {
  return json{{"sum_G", r.lhs}, {"G_sum", r.mid}, {"lower", r.rhs},
              {"ok", r.ok}};
}

json solve_report_to_json(const SolveReport& r) {
  json j;
  j["h"] = r.h;
  j["nodes"] = r.nodes;
  j["initial_R"] = r.initial_R;
  j["converged"] = r.converged;
  if (!r.failure.empty()) j["failure"] = r.failure;
  j["final_residual"] = r.final_residual;
  j["min_cone_margin"] = r.min_cone_margin;
  j["min_eig_plus_one"] = r.min_eig_plus_one;
  j["wall_time_ms"] = r.wall_ms;
  json stages = json::array();
  for (const NewtonTrace& t : r.stages) {
    stages.push_back(json{{"t", t.t},
                          {"residuals", t.residuals},
                          {"cone_margins", t.cone_margins},
                          {"step_sizes", t.step_sizes},
                          {"converged", t.converged}});
  }
  j["stages"] = stages;
  return j;
}

json holder_report_to_json(const HolderReport& r) {
  json j;
  j["alpha"] = r.alpha;
  j["seminorm"] = r.seminorm;
  j["argmax_pair"] = json::array({r.arg_i, r.arg_j});
  j["exhaustive"] = r.exhaustive;
  j["pairs_evaluated"] = r.pairs_evaluated;
  j["seed"] = r.seed;
  j["region_ratio"] = r.region_ratio;
  j["h"] = r.h;
  return j;
}

json refinement_to_json(const std::vector<RefinementRow>& rows) {
  json arr = json::array();
  for (const RefinementRow& r : rows) {
    json j;
    j["h"] = r.h;
    j["alpha"] = r.alpha;
    j["solved"] = r.solved;
    if (r.solved) {
      j["seminorm"] = r.seminorm;
      j["hessian_inf"] = r.hess_inf;
      if (r.gamma) j["gamma"] = *r.gamma;
      if (r.Gamma) j["Gamma"] = *r.Gamma;
    }
    if (!r.note.empty()) j["note"] = r.note;
    arr.push_back(j);
  }
  return json{{"rows", arr}};
}

json root_report_to_json(const RootReport& r) {
  json j;
  j["coefficients"] = r.coefficients;
  j["positive_roots"] = r.positive_roots;
  j["cone_admissible_roots"] = r.cone_admissible_roots;
  j["existence"] = r.existence;
  j["tangent"] = r.tangent;
  return j;
}

json constants_to_json(const ConstantsReport& r) {
  json j;
  j["W"] = json::array({r.W_lo, r.W_hi});
  if (r.gamma)
    j["gamma"] = *r.gamma;
  else
    j["gamma"] = nullptr;
  if (r.Gamma)
    j["Gamma"] = *r.Gamma;
  else
    j["Gamma"] = nullptr;
  j["hessian_inf"] = r.hessian_inf;
  return j;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

json strip_walltime(json j) {
  if (j.is_object()) {
    j.erase("wall_time_ms");
    for (auto& [k, v] : j.items()) v = strip_walltime(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_walltime(v);
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace twistpde
