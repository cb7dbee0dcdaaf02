// twistpde: solve, certify, probe and cross-check the twisted-type
// Hessian operator family from the library. Exit codes: 0 success/pass,
// 1 certificate failure, 2 usage or precondition error, 3 numerical
// failure. Every failure prints one machine-parsable "error: ..." line.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>

#include "twistpde/certify.hpp"
#include "twistpde/dirichlet.hpp"
#include "twistpde/errors.hpp"
#include "twistpde/expression.hpp"
#include "twistpde/holder.hpp"
#include "twistpde/json_io.hpp"
#include "twistpde/radial.hpp"
#include "twistpde/spectrum.hpp"

using namespace twistpde;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCertificateFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct GlobalOpts {
  std::string out_dir = "twistpde_out";
  int threads = 1;
  bool dry_run = false;
};

double parse_spacing(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    double num = std::stod(s.substr(0, slash));
    double den = std::stod(s.substr(slash + 1));
    if (den == 0.0) throw ConfigError("spacing: division by zero");
    return num / den;
  }
  return std::stod(s);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_spacing(item));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

void ensure_out_dir(const GlobalOpts& g) {
  fs::create_directories(g.out_dir);
}

void write_json(const GlobalOpts& g, const std::string& name, const json& j) {
  ensure_out_dir(g);
  write_text_file((fs::path(g.out_dir) / name).string(), dump_canonical(j));
}

int finish_certificate(const GlobalOpts& g, const std::string& name,
                       const Certificate& cert) {
  json j = certificate_to_json(cert);
  write_json(g, name, j);
  std::printf("%s: %s (%ld samples, %zu violations, max %.3e)\n",
              cert.check.c_str(), cert.pass ? "pass" : "FAIL",
              cert.samples_run, cert.violations.size(), cert.max_violation);
  return cert.pass ? kExitOk : kExitCertificateFail;
}

// ---- solve -----------------------------------------------------------------

struct SolveArgs {
  std::string config_path;
  std::string h_override;
};

int run_solve(const GlobalOpts& g, const SolveArgs& a) {
  RunConfig cfg = load_run_config(a.config_path);
  if (!a.h_override.empty()) cfg.h = parse_spacing(a.h_override);
  OperatorSpec spec = cfg.make_spec();
  ConvexDomain domain = cfg.make_domain();
  Expression f = Expression::parse(cfg.f_expr);
  Expression phi = Expression::parse(cfg.phi_expr);
  if (spec.dim() != 2)
    throw PreconditionError("solve: grids are two-dimensional; n must be 2");
  if (g.dry_run) {
    std::printf("config ok: %s, h = %.6g, operator n = %d\n",
                domain.describe().c_str(), cfg.h, spec.dim());
    return kExitOk;
  }

  SolveOptions opts;
  opts.continuity_steps = cfg.continuity_steps;
  opts.allow_low_rhs = cfg.allow_low_rhs;
  SpecOperator op(spec);
  SolveResult sol = solve_dirichlet(op, domain, f.fn(), phi.fn(), cfg.h, opts);

  // Columnar outputs plus the report.
  GridField rhs = GridField::from_function(sol.u.grid_ptr(), f.fn());
  GridField res = residual(op, sol.u, rhs);
  HessianField H = discrete_hessian_field(sol.u);

  ensure_out_dir(g);
  {
    std::string path = (fs::path(g.out_dir) / "solution.txt").string();
    std::string body = "# twistpde solution\n# columns: x y u residual "
                       "min_eig_D2u\n";
    char line[256];
    for (int p = 0; p < sol.u.size(); ++p) {
      const Grid::Node& nd = sol.u.grid().node(p);
      double mineig = min_eigenvalue(H.H[p]);
      std::snprintf(line, sizeof line, "%.17g %.17g %.17g %.17g %.17g\n",
                    nd.x, nd.y, sol.u.value(p), res.value(p), mineig);
      body += line;
    }
    write_text_file(path, body);
  }
  {
    std::string path = (fs::path(g.out_dir) / "hessian.txt").string();
    char line[256];
    std::snprintf(line, sizeof line,
                  "# twistpde hessian field\n# domain %s %.17g %.17g\n"
                  "# h %.17g\n# columns: x y h11 h12 h22\n",
                  domain.is_disk() ? "disk" : "ellipse", domain.semi_a(),
                  domain.semi_b(), cfg.h);
    std::string body = line;
    for (int p = 0; p < sol.u.size(); ++p) {
      const Grid::Node& nd = sol.u.grid().node(p);
      std::snprintf(line, sizeof line, "%.17g %.17g %.17g %.17g %.17g\n",
                    nd.x, nd.y, H.H[p](0, 0), H.H[p](0, 1), H.H[p](1, 1));
      body += line;
    }
    write_text_file(path, body);
  }
  json rep = solve_report_to_json(sol.report);
  rep["config"] = run_config_to_json(cfg);
  rep["constants"] = constants_to_json(estimate_constants(spec, H.H));
  write_json(g, "report.json", rep);

  std::printf("solve: %s, %d nodes, final residual %.3e, min cone margin "
              "%.3e\n",
              sol.report.converged ? "converged" : "FAILED", sol.report.nodes,
              sol.report.final_residual, sol.report.min_cone_margin);
  if (!sol.report.converged) {
    std::fprintf(stderr, "error: solve failed: %s\n",
                 sol.report.failure.c_str());
    return kExitNumerical;
  }
  return kExitOk;
}

// ---- certify ---------------------------------------------------------------

struct CertifyArgs {
  std::string mode;  // lemma31 | concavity | sandwich | chain
  std::string spec_path;
  std::string preset = "detlap";
  int n = 2;
  int term = -1;  // all terms
  long samples = 10000;
  std::uint64_t seed = 0;
  int p = 2;      // sandwich exponent
  int m_max = 5;  // sandwich tuple length
  double y_hi = 10.0;
  std::string chain_config;
};

OperatorSpec certify_spec(const CertifyArgs& a) {
  if (!a.spec_path.empty()) return load_operator_spec(a.spec_path);
  return OperatorSpec::preset(a.preset, a.n, a.seed);
}

int run_certify(const GlobalOpts& g, const CertifyArgs& a) {
  if (a.mode == "lemma31") {
    OperatorSpec spec = certify_spec(a);
    if (g.dry_run) return kExitOk;
    return finish_certificate(g, "certificate.json",
                              lemma31_sweep(spec, a.samples, a.seed));
  }
  if (a.mode == "concavity") {
    OperatorSpec spec = certify_spec(a);
    if (g.dry_run) return kExitOk;
    Certificate total;
    total.check = "transform-concavity";
    total.seed = a.seed;
    int lo = a.term >= 0 ? a.term : 0;
    int hi = a.term >= 0 ? a.term + 1 : spec.term_count();
    for (int t = lo; t < hi; ++t) {
      Certificate c = check_transform_concavity(spec, t, a.samples,
                                                a.seed + 1000 * t);
      total.samples_run += c.samples_run;
      total.samples_skipped += c.samples_skipped;
      total.pass = total.pass && c.pass;
      total.max_violation = std::max(total.max_violation, c.max_violation);
      for (const Violation& v : c.violations) total.violations.push_back(v);
    }
    return finish_certificate(g, "certificate.json", total);
  }
  if (a.mode == "sandwich") {
    if (g.dry_run) return kExitOk;
    Certificate cert = sandwich_sweep(
        a.samples, a.m_max, ScalarTransform::power_root(a.p), a.y_hi, a.seed);
    return finish_certificate(g, "certificate.json", cert);
  }
  if (a.mode == "chain") {
    if (a.chain_config.empty())
      throw ConfigError("certify chain: --config is required");
    json j = json::parse(read_text_file(a.chain_config));
    if (!j.is_object() || !j.contains("links") || !j.contains("set"))
      throw ConfigError("certify chain: config needs 'links', 'set', "
                        "'operator'");
    std::vector<ScalarTransform> links;
    for (const auto& l : j["links"]) links.push_back(transform_from_json(l));
    double lo = j["set"].at(0).get<double>();
    double hi = j["set"].at(1).get<double>();
    OperatorSpec spec = j.contains("operator")
                            ? spec_from_json(j["operator"])
                            : certify_spec(a);
    if (g.dry_run) return kExitOk;
    TransformChain chain;
    try {
      chain = build_chain(std::move(links), lo, hi);
    } catch (const ChainPremiseError& e) {
      json out = {{"check", "chain-premises"},
                  {"pass", false},
                  {"link", e.link_index},
                  {"witness_x", e.witness_x},
                  {"witness_value", e.witness_value},
                  {"reason", e.what()}};
      write_json(g, "certificate.json", out);
      std::fprintf(stderr, "error: %s\n", e.what());
      return kExitCertificateFail;
    }
    Certificate cert =
        chain_concavity_certificate(spec, chain, a.samples, a.seed);
    return finish_certificate(g, "certificate.json", cert);
  }
  throw ConfigError("certify: unknown mode '" + a.mode + "'");
}

// ---- oracle ----------------------------------------------------------------

int run_oracle_radial(const GlobalOpts& g, int n, double f, bool dry) {
  if (dry) return kExitOk;
  double A = radial_coefficient(n, f);
  json j = {{"n", n},
            {"f", f},
            {"A", A},
            {"polynomial_value", radial_polynomial(n, A)}};
  write_json(g, "oracle.json", j);
  std::printf("radial profile: u = A(r^2 - 1)/2 with A = %.15g (n = %d, "
              "f = %g)\n",
              A, n, f);
  return kExitOk;
}

int run_oracle_counterexample(const GlobalOpts& g, int n, double c, bool dry) {
  if (dry) return kExitOk;
  RootReport rep = counterexample_roots(n, c);
  write_json(g, "oracle.json", root_report_to_json(rep));
  std::printf("A^%d - %dA + %g: %zu positive roots, %zu cone-admissible; "
              "existence = %s%s\n",
              n, n, c, rep.positive_roots.size(),
              rep.cone_admissible_roots.size(),
              rep.existence ? "true" : "false",
              rep.tangent ? " (tangent)" : "");
  return kExitOk;
}

int run_oracle_transition(const GlobalOpts& g, int n, bool dry) {
  if (dry) return kExitOk;
  double c = existence_transition(n);
  json j = {{"n", n}, {"transition_c", c}, {"expected", n - 1.0}};
  write_json(g, "oracle.json", j);
  std::printf("existence transition for n = %d at c = %.12f\n", n, c);
  return kExitOk;
}

// ---- probe -----------------------------------------------------------------

struct FieldFile {
  MatrixField field;
  std::optional<ConvexDomain> domain;
  double h = 0.0;
};

FieldFile read_field_file(const std::string& path) {
  FieldFile out;
  std::stringstream in(read_text_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::stringstream hs(line.substr(1));
      std::string tag;
      hs >> tag;
      if (tag == "domain") {
        std::string kind;
        double va = 0, vb = 0;
        hs >> kind >> va >> vb;
        out.domain = kind == "disk" ? ConvexDomain::disk(va)
                                    : ConvexDomain::ellipse(va, vb);
      } else if (tag == "h") {
        hs >> out.h;
      }
      continue;
    }
    std::stringstream ls(line);
    double x, y, h11, h12, h22;
    if (!(ls >> x >> y >> h11 >> h12 >> h22))
      throw ConfigError("field file: bad row '" + line + "'");
    SymMatrix H(2);
    H.set(0, 0, h11);
    H.set(0, 1, h12);
    H.set(1, 1, h22);
    out.field.points.push_back({x, y});
    out.field.H.push_back(H);
  }
  if (out.field.size() == 0) throw ConfigError("field file: no data rows");
  return out;
}

int run_probe_holder(const GlobalOpts& g, const std::string& field_path,
                     double alpha, long pairs, std::uint64_t seed,
                     double ratio) {
  FieldFile ff = read_field_file(field_path);
  if (g.dry_run) return kExitOk;
  MatrixField field = ff.field;
  if (ff.domain && ratio < 1.0) {
    MatrixField filtered;
    for (int i = 0; i < field.size(); ++i) {
      auto [x, y] = field.points[i];
      if (ff.domain->rho(x / ratio, y / ratio) < 0.0) {
        filtered.points.push_back(field.points[i]);
        filtered.H.push_back(field.H[i]);
      }
    }
    field = std::move(filtered);
  }
  PairSampling sampling;
  sampling.count = pairs;
  sampling.seed = seed;
  HolderReport rep = holder_seminorm(field, alpha, sampling);
  rep.region_ratio = ratio;
  rep.h = ff.h;
  write_json(g, "holder.json", holder_report_to_json(rep));
  std::printf("holder seminorm alpha=%.3g: %.8e (%s, %ld pairs)\n", alpha,
              rep.seminorm, rep.exhaustive ? "exhaustive" : "random",
              rep.pairs_evaluated);
  return kExitOk;
}

int run_probe_refine(const GlobalOpts& g, const std::string& config_path,
                     const std::string& h_list, const std::string& alpha_list,
                     double ratio, std::uint64_t seed) {
  RunConfig cfg = load_run_config(config_path);
  OperatorSpec spec = cfg.make_spec();
  ConvexDomain domain = cfg.make_domain();
  Expression f = Expression::parse(cfg.f_expr);
  Expression phi = Expression::parse(cfg.phi_expr);
  std::vector<double> hs = parse_list(h_list);
  std::vector<double> alphas = parse_list(alpha_list);
  if (g.dry_run) return kExitOk;

  SolveOptions opts;
  opts.continuity_steps = cfg.continuity_steps;
  opts.allow_low_rhs = cfg.allow_low_rhs;
  auto rows = refinement_study(spec, domain, f.fn(), phi.fn(), alphas, hs,
                               opts, ratio, seed);
  write_json(g, "refine.json", refinement_to_json(rows));

  ensure_out_dir(g);
  std::string table = "# h alpha seminorm gamma Gamma hessian_inf solved\n";
  char line[256];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%.8g %.3g %.10e %.10e %.10e %.6e %d\n",
                  r.h, r.alpha, r.seminorm, r.gamma.value_or(-1.0),
                  r.Gamma.value_or(-1.0), r.hess_inf, int(r.solved));
    table += line;
    std::printf("h=%-9.6g alpha=%-5.3g seminorm=%-14.6e %s\n", r.h, r.alpha,
                r.seminorm, r.solved ? "" : ("[" + r.note + "]").c_str());
  }
  write_text_file((fs::path(g.out_dir) / "refine.txt").string(), table);
  bool any_fail = false;
  for (const auto& r : rows) any_fail = any_fail || !r.solved;
  return any_fail ? kExitNumerical : kExitOk;
}

// ---- identity ---------------------------------------------------------------

int run_identity(const GlobalOpts& g, int n, long samples, std::uint64_t seed,
                 double scale) {
  if (g.dry_run) return kExitOk;
  Sampler smp(seed);
  double worst = 0.0;
  for (long s = 0; s < samples; ++s) {
    std::vector<double> lam = smp.uniform_vec(n, -scale, scale);
    worst = std::max(worst, reduction_identity_check(lam));
  }
  double tol = std::max(1e-10, 1e-12 * (1.0 + std::pow(scale, n)));
  bool pass = worst <= tol;
  json j = {{"check", "reduction-identity"}, {"n", n},
            {"samples", samples},           {"seed", seed},
            {"scale", scale},               {"max_defect", worst},
            {"tolerance", tol},             {"pass", pass}};
  write_json(g, "identity.json", j);
  std::printf("reduction identity n=%d: max defect %.3e over %ld samples "
              "(tol %.1e) -> %s\n",
              n, worst, samples, tol, pass ? "pass" : "FAIL");
  return pass ? kExitOk : kExitCertificateFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twisted-type Hessian operators: solver, certificates, "
               "oracles and probes"};
  app.require_subcommand(1);
  // --h is a real option (grid spacing), so help is --help everywhere.
  app.set_help_flag("--help", "print help");

  GlobalOpts g;
  app.add_option("--out", g.out_dir, "output directory (all files go here)");
  app.add_option("--threads", g.threads,
                 "parallelism bound (execution is sequential and "
                 "deterministic; values > 1 are accepted as a bound)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--dry-run", g.dry_run,
               "validate configuration without computing");

  // solve
  SolveArgs sa;
  CLI::App* solve = app.add_subcommand("solve", "solve the Dirichlet problem");
  solve->set_help_flag("--help", "print help");
  solve->fallthrough();
  // global options may follow the subcommand
  solve->add_option("--config", sa.config_path, "run config (JSON)")
      ->required();
  solve->add_option("--h", sa.h_override, "grid spacing override (e.g. 1/64)");

  // certify
  CertifyArgs ca;
  CLI::App* certify =
      app.add_subcommand("certify", "sampled certificates of the structure");
  certify->set_help_flag("--help", "print help");
  certify->fallthrough();
  // global options may follow the subcommand
  certify->add_option("mode", ca.mode, "lemma31 | concavity | sandwich | chain")
      ->required();
  certify->add_option("--spec", ca.spec_path, "operator spec file");
  certify->add_option("--preset", ca.preset, "detlap | sksum | mixed");
  certify->add_option("--n", ca.n, "dimension")->check(CLI::Range(2, 8));
  certify->add_option("--term", ca.term, "term index (default: all)");
  certify->add_option("--samples", ca.samples, "sample count");
  certify->add_option("--seed", ca.seed, "RNG seed");
  certify->add_option("--p", ca.p, "sandwich power-root denominator");
  certify->add_option("--m-max", ca.m_max, "sandwich max tuple length");
  certify->add_option("--y-hi", ca.y_hi, "sandwich sample upper bound");
  certify->add_option("--config", ca.chain_config, "chain config (JSON)");

  // oracle
  CLI::App* oracle = app.add_subcommand("oracle", "closed-form oracles");
  oracle->set_help_flag("--help", "print help");
  oracle->fallthrough();
  // global options may follow the subcommand
  int on = 2;
  double of = 3.0, oc = 1.0;
  CLI::App* oradial = oracle->add_subcommand("radial", "radial coefficient");
  oradial->set_help_flag("--help", "print help");
  oradial->fallthrough();
  // global options may follow the subcommand
  oradial->add_option("--n", on)->check(CLI::Range(2, 8));
  oradial->add_option("--f", of, "constant right-hand side")->required();
  CLI::App* ocounter =
      oracle->add_subcommand("counterexample", "A^n - nA + c root report");
  ocounter->set_help_flag("--help", "print help");
  ocounter->fallthrough();
  // global options may follow the subcommand
  ocounter->add_option("--n", on)->check(CLI::Range(2, 8));
  ocounter->add_option("--c", oc, "constant")->required();
  CLI::App* otrans =
      oracle->add_subcommand("transition", "existence transition in c");
  otrans->set_help_flag("--help", "print help");
  otrans->fallthrough();
  // global options may follow the subcommand
  otrans->add_option("--n", on)->check(CLI::Range(2, 8));
  oracle->require_subcommand(1);

  // probe
  CLI::App* probe = app.add_subcommand("probe", "regularity diagnostics");
  probe->set_help_flag("--help", "print help");
  probe->fallthrough();
  // global options may follow the subcommand
  std::string pfield, pconfig, phs = "1/16,1/32,1/64",
                              palphas = "0.25,0.5,0.75";
  double palpha = 0.5, pratio = 0.5;
  long ppairs = 1000000;
  std::uint64_t pseed = 0;
  CLI::App* pholder =
      probe->add_subcommand("holder", "Holder seminorm of a Hessian field");
  pholder->set_help_flag("--help", "print help");
  pholder->fallthrough();
  // global options may follow the subcommand
  pholder->add_option("--field", pfield, "hessian field file")->required();
  pholder->add_option("--alpha", palpha, "exponent in (0,1)")->required();
  pholder->add_option("--pairs", ppairs, "random pair budget");
  pholder->add_option("--seed", pseed, "RNG seed");
  pholder->add_option("--ratio", pratio, "region scale (default 0.5)");
  CLI::App* prefine =
      probe->add_subcommand("refine", "seminorms under grid refinement");
  prefine->set_help_flag("--help", "print help");
  prefine->fallthrough();
  // global options may follow the subcommand
  prefine->add_option("--config", pconfig, "run config (JSON)")->required();
  prefine->add_option("--h", phs, "comma list of spacings");
  prefine->add_option("--alpha", palphas, "comma list of exponents");
  prefine->add_option("--ratio", pratio, "region scale (default 0.5)");
  prefine->add_option("--seed", pseed, "RNG seed");
  probe->require_subcommand(1);

  // identity
  int in_n = 4;
  long in_samples = 10000;
  std::uint64_t in_seed = 0;
  double in_scale = 1.5;
  CLI::App* identity =
      app.add_subcommand("identity", "shifted-variables identity sweep");
  identity->set_help_flag("--help", "print help");
  identity->fallthrough();
  // global options may follow the subcommand
  identity->add_option("--n", in_n)->check(CLI::Range(2, 8));
  identity->add_option("--samples", in_samples);
  identity->add_option("--seed", in_seed);
  identity->add_option("--scale", in_scale, "eigenvalue sample range");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }

  try {
    if (*solve) return run_solve(g, sa);
    if (*certify) return run_certify(g, ca);
    if (*oracle) {
      if (*oradial) return run_oracle_radial(g, on, of, g.dry_run);
      if (*ocounter) return run_oracle_counterexample(g, on, oc, g.dry_run);
      return run_oracle_transition(g, on, g.dry_run);
    }
    if (*probe) {
      if (*pholder)
        return run_probe_holder(g, pfield, palpha, ppairs, pseed, pratio);
      return run_probe_refine(g, pconfig, phs, palphas, pratio, pseed);
    }
    if (*identity) return run_identity(g, in_n, in_samples, in_seed, in_scale);
    std::fprintf(stderr, "error: no subcommand\n");
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return kExitNumerical;
  }
}
