#pragma once

#include <json.hpp>
#include <string>

#include "twistpde/certify.hpp"
#include "twistpde/dirichlet.hpp"
#include "twistpde/domain.hpp"
#include "twistpde/holder.hpp"
#include "twistpde/operator_spec.hpp"
#include "twistpde/radial.hpp"

namespace twistpde {

using json = nlohmann::json;

// Operator specs and run configs round-trip losslessly (doubles are
// emitted in shortest round-trip form). Unknown keys are rejected.
json transform_to_json(const ScalarTransform& t);
ScalarTransform transform_from_json(const json& j);

json spec_to_json(const OperatorSpec& spec);
OperatorSpec spec_from_json(const json& j);

OperatorSpec load_operator_spec(const std::string& path);
void save_operator_spec(const OperatorSpec& spec, const std::string& path);

struct RunConfig {
  json operator_json;  // inline spec or {"preset": ..., "n": ..., "seed": ...}
  std::string domain_kind = "disk";
  double domain_a = 1.0, domain_b = 1.0;
  std::string f_expr = "3";
  std::string phi_expr = "0";
  double h = 0.0625;
  int continuity_steps = 10;
  std::uint64_t seed = 0;
  bool allow_low_rhs = false;

  OperatorSpec make_spec() const;
  ConvexDomain make_domain() const;
};

RunConfig run_config_from_json(const json& j, const std::string& base_dir);
json run_config_to_json(const RunConfig& c);
RunConfig load_run_config(const std::string& path);

json certificate_to_json(const Certificate& c);
json sandwich_to_json(const SandwichResult& r);
json solve_report_to_json(const SolveReport& r);
json holder_report_to_json(const HolderReport& r);
json refinement_to_json(const std::vector<RefinementRow>& rows);
json root_report_to_json(const RootReport& r);
json constants_to_json(const ConstantsReport& r);

// Canonical text form used for files and determinism comparisons.
std::string dump_canonical(const json& j);
// Deep-copy with every wall-time field removed (those are the only
// run-dependent outputs).
json strip_walltime(json j);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace twistpde
