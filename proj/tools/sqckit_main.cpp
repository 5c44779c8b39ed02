#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqckit/calculus.hpp"
#include "sqckit/certify.hpp"
#include "sqckit/corpus.hpp"
#include "sqckit/domain_parse.hpp"
#include "sqckit/expr_json.hpp"
#include "sqckit/modulus.hpp"
#include "sqckit/optimize.hpp"
#include "sqckit/report.hpp"

using nlohmann::json;
using namespace sqckit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitError = 2;

struct CommonArgs {
  std::string expr_path;
  std::string domain_spec;
  double sigma = 0.0;
  std::size_t budget = 100000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string report_path;
  std::string format = "json";
  bool no_timestamp = false;
  int threads = 0;  // 0: use SQCKIT_THREADS or 1
};

int effective_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SQCKIT_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

void add_common(CLI::App* cmd, CommonArgs& a, bool needs_expr = true) {
  if (needs_expr) cmd->add_option("--expr", a.expr_path, "expression JSON file")->required();
  cmd->add_option("--budget", a.budget, "sample budget");
  cmd->add_option("--seed", a.seed, "random seed");
  cmd->add_option("--tol", a.tol, "tolerance override");
  cmd->add_option("--report", a.report_path, "write the JSON report here");
  cmd->add_option("--format", a.format, "json | csv | table");
  cmd->add_flag("--no-timestamp", a.no_timestamp, "omit the timestamp (reproducible reports)");
  cmd->add_option("--threads", a.threads, "worker threads (or SQCKIT_THREADS)");
}

json config_echo(const CommonArgs& a, const std::string& subcommand) {
  json j;
  j["subcommand"] = subcommand;
  if (!a.expr_path.empty()) j["expr"] = a.expr_path;
  if (!a.domain_spec.empty()) j["domain"] = a.domain_spec;
  j["sigma"] = a.sigma;
  j["budget"] = a.budget;
  j["seed"] = a.seed;
  j["tol"] = a.tol;
  j["threads"] = effective_threads(a.threads);
  j["format"] = a.format;
  return j;
}

void emit_report(const CommonArgs& a, const json& report) {
  std::string text = report.dump(2) + "\n";
  if (!a.report_path.empty()) write_text_file(a.report_path, text);
  if (a.format != "csv" || a.report_path.empty()) std::cout << text;
}

int run_certify(const CommonArgs& a, bool estimate_mode) {
  ExprPtr f = load_expression_file(a.expr_path);
  ConvexDomain domain = parse_domain(a.domain_spec);
  SearchOptions so;
  so.threads = effective_threads(a.threads);

  json report = report_header(config_echo(a, estimate_mode ? "estimate" : "certify"),
                              !a.no_timestamp);
  int exit_code = kExitOk;
  if (estimate_mode) {
    SigmaEstimate est = estimate_sigma(*f, domain, a.budget, a.seed, so);
    json r;
    r["sigma_hat"] = est.sigma_hat;
    r["sigma_hat_hex"] = hex_float(est.sigma_hat);
    r["raw_infimum"] = est.raw_infimum;
    r["quasiconvex"] = est.quasiconvex;
    r["argmin_triple"] = triple_report(est.argmin_triple);
    r["samples_used"] = est.samples_used;
    r["grid_spec"] = est.grid_spec;
    if (est.witness) {
      r["witness"] = witness_report(*est.witness);
      exit_code = kExitViolation;
    }
    report["result"] = r;
  } else {
    auto w = falsify(*f, domain, a.sigma, a.budget, a.seed, so);
    json r;
    if (w) {
      r["outcome"] = "violation";
      r["witness"] = witness_report(*w);
      exit_code = kExitViolation;
    } else {
      r["outcome"] = "none";
      r["disclaimer"] = kNonProofDisclaimer;
    }
    report["result"] = r;
  }
  emit_report(a, report);
  return exit_code;
}

int run_modulus(const CommonArgs& a, const std::string& space_spec, bool empirical) {
  // space spec: "<dim>:<p>"
  auto sep = space_spec.find(':');
  if (sep == std::string::npos) fail(ErrorCode::SpecSyntax, "modulus space must be <dim>:<p>");
  std::size_t dim = std::stoul(space_spec.substr(0, sep));
  std::string ps = space_spec.substr(sep + 1);
  SpaceSpec space(dim, ps == "inf" ? kPInfinity : std::stod(ps));

  Vec grid = default_eps_grid();
  ModulusProfile prof = modulus_exact_profile(space, grid);
  std::ostringstream csv;
  csv << "eps,delta,source,bound_sigma_eps2_over_8,pass\n";
  csv.precision(17);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double delta = empirical ? modulus_empirical(space, grid[i], a.budget / grid.size() + 16,
                                                 a.seed)
                             : prof.delta_values[i];
    double bound = a.sigma * grid[i] * grid[i] / 8.0;
    csv << grid[i] << ',' << delta << ','
        << (empirical ? "empirical" : modulus_source_name(prof.source)) << ',' << bound << ','
        << (delta >= bound - 1e-12 ? "1" : "0") << "\n";
  }
  if (!a.report_path.empty())
    write_text_file(a.report_path, csv.str());
  else
    std::cout << csv.str();
  AssumptionAVerdict v = check_assumption_A(prof, a.sigma);
  return v.holds ? kExitOk : kExitViolation;
}

int run_gauge(const CommonArgs& a, const std::string& body_path, double p_ambient) {
  std::ifstream in(body_path);
  if (!in) fail(ErrorCode::ParseError, "cannot open body file: " + body_path);
  json bj = json::parse(in);
  // Reuse the expression-level gauge parser by wrapping the body in an atom.
  json wrapper = {{"kind", "gauge"}, {"body", bj}};
  ExprPtr atom = deserialize(wrapper.dump());
  const auto* gauge_atom = dynamic_cast<const GaugeAtom*>(atom.get());
  SpaceSpec ambient(gauge_atom->body.dim(), p_ambient);

  GaugeCheckResult res = gauge_sqc_check(gauge_atom->body, ambient, a.sigma, default_eps_grid(),
                                         std::max<std::size_t>(a.budget / 64, 64), a.seed);
  json report = report_header(config_echo(a, "gauge"), !a.no_timestamp);
  json r;
  r["passed"] = res.passed;
  if (!res.passed) r["failing_eps"] = res.failing_eps;
  r["eps_grid"] = res.eps_grid;
  r["delta_hat"] = res.delta_hat;
  if (res.certificate) r["certificate"] = certificate_report(*res.certificate);
  report["result"] = r;
  emit_report(a, report);
  return res.passed ? kExitOk : kExitViolation;
}

int run_prox(const CommonArgs& a, const std::string& v_csv) {
  ExprPtr f = load_expression_file(a.expr_path);
  Vec v;
  for (std::istringstream ss(v_csv); ss.good();) {
    std::string tok;
    std::getline(ss, tok, ',');
    v.push_back(std::stod(tok));
  }
  std::optional<ConvexDomain> dom;
  if (!a.domain_spec.empty()) dom = parse_domain(a.domain_spec);
  ProxResult r = prox(*f, v, dom, a.tol > 0 ? a.tol : 1e-8, a.seed);

  json report = report_header(config_echo(a, "prox"), !a.no_timestamp);
  json rr;
  rr["empty"] = r.empty();
  rr["attainment_suspect"] = r.attainment_suspect;
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back(point_report(p));
  rr["points"] = pts;
  rr["value"] = r.value;
  report["result"] = rr;
  emit_report(a, report);
  return kExitOk;
}

int run_growth(const CommonArgs& a, const std::string& xbar_csv, std::size_t samples) {
  ExprPtr f = load_expression_file(a.expr_path);
  ConvexDomain domain = parse_domain(a.domain_spec);
  Vec xbar;
  for (std::istringstream ss(xbar_csv); ss.good();) {
    std::string tok;
    std::getline(ss, tok, ',');
    xbar.push_back(std::stod(tok));
  }
  GrowthReport rep = quadratic_growth_check(*f, xbar, a.sigma, domain, samples, a.seed);
  json report = report_header(config_echo(a, "growth"), !a.no_timestamp);
  json rr;
  rr["passed"] = rep.passed();
  rr["samples"] = rep.samples;
  rr["f_xbar"] = rep.f_xbar;
  rr["violations"] = json::array();
  for (const auto& viol : rep.violations)
    rr["violations"].push_back({{"y", viol.y}, {"f_y", viol.f_y}, {"bound", viol.bound}});
  rr["violations_eighth_count"] = rep.violations_eighth.size();
  report["result"] = rr;

  if (a.format == "csv") {
    std::ostringstream csv;
    csv.precision(17);
    csv << "y,f_y,bound\n";
    for (const auto& viol : rep.violations) {
      for (std::size_t i = 0; i < viol.y.size(); ++i) csv << (i ? ";" : "") << viol.y[i];
      csv << ',' << viol.f_y << ',' << viol.bound << "\n";
    }
    if (!a.report_path.empty())
      write_text_file(a.report_path, csv.str());
    else
      std::cout << csv.str();
  } else {
    emit_report(a, report);
  }
  return rep.passed() ? kExitOk : kExitViolation;
}

int run_coercive(const CommonArgs& a, int order, const std::string& radii_csv,
                 std::size_t samples) {
  ExprPtr f = load_expression_file(a.expr_path);
  Vec radii;
  for (std::istringstream ss(radii_csv); ss.good();) {
    std::string tok;
    std::getline(ss, tok, ',');
    radii.push_back(std::stod(tok));
  }
  SpaceSpec space(f->input_dim(), 2.0);
  Vec x0(f->input_dim(), 0.0);
  std::optional<ConvexDomain> constraint;
  if (!a.domain_spec.empty()) constraint = parse_domain(a.domain_spec);
  std::optional<double> sigma;
  if (a.sigma > 0.0) sigma = a.sigma;
  CoercivityProfile prof =
      supercoercivity_profile(*f, x0, order, radii, samples, a.seed, space, constraint, sigma);

  json report = report_header(config_echo(a, "coercive"), !a.no_timestamp);
  json rr;
  rr["order"] = prof.order;
  rr["radii"] = prof.radii;
  rr["inf_ratios"] = prof.inf_ratios;
  rr["verdict"] = prof.verdict == CoercivityProfile::Verdict::PositiveLiminf ? "positive"
                  : prof.verdict == CoercivityProfile::Verdict::Negative     ? "negative"
                                                                             : "inconclusive";
  rr["growth_violations"] = prof.growth_violations.size();
  report["result"] = rr;
  emit_report(a, report);
  return kExitOk;
}

int run_corpus(const CommonArgs& a, const std::string& dir, const std::string& filter) {
  std::vector<Fixture> fixtures = load_corpus_dir(dir, filter);
  CorpusOptions co;
  co.budget = a.budget;
  co.seed = a.seed;
  co.threads = effective_threads(a.threads);
  CorpusReport rep = corpus_run(fixtures, co);

  json report = report_header(config_echo(a, "corpus"), !a.no_timestamp);
  report["result"] = rep.to_json();
  if (a.format == "table")
    std::cout << rep.table();
  else
    emit_report(a, report);
  return rep.green() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strong quasiconvexity toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CommonArgs a;

  auto* certify = app.add_subcommand("certify", "search for a sigma violation");
  add_common(certify, a);
  certify->add_option("--domain", a.domain_spec, "domain spec")->required();
  certify->add_option("--sigma", a.sigma, "sigma to refute")->required();

  auto* estimate = app.add_subcommand("estimate", "estimate the best sigma");
  add_common(estimate, a);
  estimate->add_option("--domain", a.domain_spec, "domain spec")->required();

  auto* modulus = app.add_subcommand("modulus", "modulus-of-convexity table (CSV)");
  std::string space_spec = "2:2";
  bool empirical = false;
  add_common(modulus, a, /*needs_expr=*/false);
  modulus->add_option("--space", space_spec, "space as <dim>:<p>");
  modulus->add_option("--sigma", a.sigma, "sigma for the eps^2/8 bound column");
  modulus->add_flag("--empirical", empirical, "estimate instead of closed forms");

  auto* gauge = app.add_subcommand("gauge", "gauge strong-quasiconvexity check");
  std::string body_path;
  double p_ambient = 2.0;
  add_common(gauge, a, /*needs_expr=*/false);
  gauge->add_option("--body", body_path, "gauge body JSON file")->required();
  gauge->add_option("--sigma", a.sigma, "sigma for the eps^2/4 bound")->required();
  gauge->add_option("--ambient-p", p_ambient, "ambient norm exponent for distances");

  auto* proxc = app.add_subcommand("prox", "proximal point set");
  std::string v_csv;
  add_common(proxc, a);
  proxc->add_option("--v", v_csv, "prox center (csv)")->required();
  proxc->add_option("--domain", a.domain_spec, "optional search domain");

  auto* growth = app.add_subcommand("growth", "quadratic growth check around xbar");
  std::string xbar_csv;
  std::size_t samples = 10000;
  add_common(growth, a);
  growth->add_option("--domain", a.domain_spec, "domain spec")->required();
  growth->add_option("--sigma", a.sigma, "certified sigma")->required();
  growth->add_option("--xbar", xbar_csv, "minimizer (csv)")->required();
  growth->add_option("--samples", samples, "sample count");

  auto* coercive = app.add_subcommand("coercive", "supercoercivity shell profile");
  int order = 2;
  std::string radii_csv = "10,50,100";
  add_common(coercive, a);
  coercive->add_option("--order", order, "supercoercivity order n");
  coercive->add_option("--radii", radii_csv, "shell radii (csv)");
  coercive->add_option("--samples", samples, "samples per shell");
  coercive->add_option("--sigma", a.sigma, "optional certified sigma for the growth check");
  coercive->add_option("--domain", a.domain_spec, "optional constraint set");

  auto* corpus = app.add_subcommand("corpus", "run the fixture suite");
  std::string dir = "corpus";
  std::string filter;
  add_common(corpus, a, /*needs_expr=*/false);
  corpus->add_option("--dir", dir, "fixture directory");
  corpus->add_option("--filter", filter, "run only fixtures whose id contains this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;  // usage problems exit 2
  }

  try {
    if (certify->parsed()) return run_certify(a, false);
    if (estimate->parsed()) return run_certify(a, true);
    if (modulus->parsed()) return run_modulus(a, space_spec, empirical);
    if (gauge->parsed()) return run_gauge(a, body_path, p_ambient);
    if (proxc->parsed()) return run_prox(a, v_csv);
    if (growth->parsed()) return run_growth(a, xbar_csv, samples);
    if (coercive->parsed()) return run_coercive(a, order, radii_csv, samples);
    if (corpus->parsed()) return run_corpus(a, dir, filter);
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitError;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
