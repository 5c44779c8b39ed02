#include "sqckit/corpus.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sqckit/calculus.hpp"
#include "sqckit/domain_parse.hpp"
#include "sqckit/expr_json.hpp"
#include "sqckit/optimize.hpp"

namespace sqckit {

using nlohmann::json;

std::optional<Triple> Fixture::witness_hint() const {
  if (!expected.contains("witness_hint")) return std::nullopt;
  const json& h = expected["witness_hint"];
  Triple t;
  t.x = h.at("x").get<Vec>();
  t.y = h.at("y").get<Vec>();
  t.lambda = h.at("lambda").get<double>();
  return t;
}

Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::FixtureParseError, "cannot open fixture: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& ex) {
    fail(ErrorCode::FixtureParseError, path + ": " + ex.what());
  }
  try {
    Fixture f{j.at("id").get<std::string>(),
              j.value("title", ""),
              deserialize(j.at("expr").dump()),
              parse_domain(j.at("domain").get<std::string>()),
              j.value("lsc", true),
              j.value("expected", json::object()),
              j.value("notes", std::vector<std::string>{})};
    return f;
  } catch (const json::exception& ex) {
    fail(ErrorCode::FixtureParseError, path + ": " + ex.what());
  }
}

std::vector<Fixture> load_corpus_dir(const std::string& dir, const std::string& filter) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<Fixture> out;
  for (const auto& p : files) {
    Fixture f = load_fixture(p.string());
    if (!filter.empty() && f.id.find(filter) == std::string::npos) continue;
    out.push_back(std::move(f));
  }
  return out;
}

bool FixtureReport::all_passed() const {
  for (const auto& a : assertions)
    if (!a.pass) return false;
  return true;
}

namespace {

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(12);
  ss << v;
  return ss.str();
}

struct FixtureRunner {
  const Fixture& fx;
  const CorpusOptions& opts;
  FixtureReport& rep;

  void record(const std::string& name, bool pass, const std::string& detail) {
    rep.assertions.push_back({name, pass, detail});
  }

  SearchOptions search_options() const {
    SearchOptions so;
    so.threads = opts.threads;
    if (auto hint = fx.witness_hint()) so.hints.push_back(*hint);
    return so;
  }

  void run_estimate() {
    if (!fx.expected.contains("quasiconvex") && !fx.expected.contains("sigma_analytic")) return;
    SigmaEstimate est = estimate_sigma(*fx.expr, fx.domain, opts.budget, opts.seed,
                                       search_options());
    if (fx.expected.contains("quasiconvex")) {
      bool want = fx.expected["quasiconvex"].get<bool>();
      record("quasiconvex", est.quasiconvex == want,
             "estimator says " + std::string(est.quasiconvex ? "yes" : "no") +
                 ", raw infimum " + fmt(est.raw_infimum));
    }
    if (fx.expected.contains("sigma_analytic")) {
      double want = fx.expected["sigma_analytic"].get<double>();
      double tol = fx.expected.value("sigma_tol", 0.1);
      bool ok = est.quasiconvex && std::abs(est.sigma_hat - want) <= tol;
      record("sigma_estimate", ok,
             "sigma_hat " + fmt(est.sigma_hat) + " vs analytic " + fmt(want) + " +- " + fmt(tol));
    }
  }

  void run_oracle() {
    if (!fx.expected.contains("oracle")) return;
    const json& o = fx.expected["oracle"];
    if (fx.expr->input_dim() != 1 || fx.domain.kind() != ConvexDomain::Kind::Interval) {
      record("oracle", false, "oracle expects a 1-D interval fixture");
      return;
    }
    OracleResult r = oracle_sigma_1d(*fx.expr, fx.domain.interval_lo(), fx.domain.interval_hi(),
                                     o.value("grid", 8193));
    double want = o.at("value").get<double>();
    double tol = o.value("tol", 0.05);
    record("oracle_sigma", std::abs(r.sigma_hat - want) <= tol,
           "oracle " + fmt(r.sigma_hat) + " vs " + fmt(want) + " +- " + fmt(tol));
  }

  void run_certify_cases() {
    if (!fx.expected.contains("certify_cases")) return;
    int index = 0;
    for (const json& c : fx.expected["certify_cases"]) {
      ++index;
      double sigma = c.value("sigma", 0.0);
      ConvexDomain dom =
          c.contains("domain") ? parse_domain(c["domain"].get<std::string>()) : fx.domain;
      std::size_t budget = std::min<std::size_t>(opts.budget, c.value("budget", opts.budget));
      auto w = falsify(*fx.expr, dom, sigma, budget, opts.seed, search_options());
      std::string name = "certify[" + std::to_string(index) + "] sigma=" + fmt(sigma);
      std::string expect = c.value("expect", "none");
      if (expect == "none") {
        record(name, !w.has_value(),
               w ? "unexpected witness, margin " + fmt(w->margin) : "no violation, as expected");
      } else {
        if (!w) {
          record(name, false, "expected a witness, none found");
          continue;
        }
        bool ok = true;
        std::string detail = "witness margin " + fmt(w->margin);
        if (c.contains("witness")) {
          const json& ew = c["witness"];
          double wtol = ew.value("tol", 1e-9);
          if (ew.contains("x"))
            ok = ok && fx.domain.space().distance(w->triple.x, ew["x"].get<Vec>()) <= wtol;
          if (ew.contains("y"))
            ok = ok && fx.domain.space().distance(w->triple.y, ew["y"].get<Vec>()) <= wtol;
          if (ew.contains("lambda"))
            ok = ok && std::abs(w->triple.lambda - ew["lambda"].get<double>()) <= wtol;
          if (ew.contains("margin"))
            ok = ok && std::abs(w->margin - ew["margin"].get<double>()) <= ew.value("margin_tol", 1e-9);
          if (ew.contains("combination")) {
            Vec z = combine(w->triple.x, w->triple.y, w->triple.lambda);
            ok = ok && fx.domain.space().distance(z, ew["combination"].get<Vec>()) <= wtol;
          }
          if (ew.contains("defect")) {
            double d = defect(*fx.expr, w->triple, NormSpec(dom.space()));
            ok = ok && std::abs(d - ew["defect"].get<double>()) <= ew.value("defect_tol", 1e-12);
            detail += ", defect " + fmt(d);
          }
        }
        record(name, ok, detail);
      }
    }
  }

  void run_minimize() {
    if (!fx.expected.contains("min") && !fx.expected.contains("attainment_suspect")) return;
    MinimizeOptions mo;
    mo.seed = opts.seed;
    mo.threads = opts.threads;
    mo.starts = 64;
    MinimizeResult r = minimize(*fx.expr, fx.domain, mo);
    if (fx.expected.contains("min")) {
      const json& m = fx.expected["min"];
      double tol = m.value("tol", 1e-6);
      Vec want_point = m.at("point").get<Vec>();
      double want_value = m.at("value").get<double>();
      bool ok = fx.domain.space().distance(r.argmin, want_point) <= tol &&
                std::abs(r.value.value() - want_value) <= tol;
      record("min", ok,
             "argmin distance " + fmt(fx.domain.space().distance(r.argmin, want_point)) +
                 ", value " + fmt(r.value.value()));
      if (m.value("unique", false))
        record("min_unique", r.distinct_local_minima.size() == 1,
               std::to_string(r.distinct_local_minima.size()) + " clusters");
    }
    if (fx.expected.contains("attainment_suspect")) {
      bool want = fx.expected["attainment_suspect"].get<bool>();
      record("attainment_suspect", r.attainment_suspect == want,
             r.attainment_suspect ? "flagged" : "not flagged");
    }
  }

  void run_prox() {
    if (!fx.expected.contains("prox_cases")) return;
    int index = 0;
    for (const json& c : fx.expected["prox_cases"]) {
      ++index;
      Vec v = c.at("v").get<Vec>();
      std::optional<ConvexDomain> dom;
      if (c.contains("domain")) dom = parse_domain(c["domain"].get<std::string>());
      ProxResult r = prox(*fx.expr, v, dom, c.value("tol", 1e-8), opts.seed);
      std::string name = "prox[" + std::to_string(index) + "]";
      if (c.value("empty", false)) {
        record(name, r.empty() && r.attainment_suspect,
               r.empty() ? "empty with suspect trend" : "unexpected attainment");
        continue;
      }
      auto want_points = c.at("points").get<std::vector<Vec>>();
      double tol = c.value("point_tol", 1e-6);
      bool ok = r.points.size() == want_points.size();
      for (const auto& wp : want_points) {
        bool found = false;
        for (const auto& p : r.points)
          if (fx.domain.space().distance(p, wp) <= tol) found = true;
        ok = ok && found;
      }
      std::string detail = std::to_string(r.points.size()) + " point(s)";
      if (!r.points.empty())
        detail += ", first at distance " +
                  fmt(fx.domain.space().distance(r.points.front(), want_points.front()));
      record(name, ok, detail);
    }
  }

  void run_derived() {
    if (!fx.expected.contains("derived_sigma")) return;
    const json& d = fx.expected["derived_sigma"];
    DeriveOptions dopts;
    dopts.seed = opts.seed;
    dopts.estimate_budget = std::min<std::size_t>(opts.budget, 20000);
    SigmaCertificate cert = derive_certificate(fx.expr, fx.domain, dopts);
    double want = d.at("value").get<double>();
    double tol = d.value("tol", 0.0);
    bool ok = cert.kind != CertKind::Refuted && std::abs(cert.sigma - want) <= tol;
    record("derived_sigma", ok,
           std::string(cert_kind_name(cert.kind)) + " " + fmt(cert.sigma) + " vs " + fmt(want));
    if (ok && d.value("soundness", true)) {
      auto w = falsify(*fx.expr, fx.domain, cert.sigma, opts.budget, opts.seed,
                       search_options());
      record("derived_sigma_sound", !w.has_value(),
             w ? "falsified at derived sigma, margin " + fmt(w->margin) : "no violation");
    }
    if (d.value("replay", true))
      record("trace_replay", cert.replay() == cert.sigma, "replayed " + fmt(cert.replay()));
  }
};

}  // namespace

CorpusReport corpus_run(const std::vector<Fixture>& fixtures, const CorpusOptions& opts) {
  CorpusReport report;
  for (const Fixture& fx : fixtures) {
    if (!opts.filter.empty() && fx.id.find(opts.filter) == std::string::npos) continue;
    FixtureReport rep;
    rep.id = fx.id;
    rep.notes = fx.notes;
    FixtureRunner runner{fx, opts, rep};
    try {
      runner.run_estimate();
      runner.run_oracle();
      runner.run_certify_cases();
      runner.run_minimize();
      runner.run_prox();
      runner.run_derived();
    } catch (const Error& ex) {
      rep.assertions.push_back({"exception", false, ex.what()});
    }
    report.fixtures.push_back(std::move(rep));
  }
  for (const auto& f : report.fixtures)
    for (const auto& a : f.assertions) {
      ++report.total;
      if (a.pass) ++report.passed;
    }
  return report;
}

json CorpusReport::to_json() const {
  json j;
  json fixtures_json = json::array();
  for (const auto& f : fixtures) {
    json fj;
    fj["id"] = f.id;
    fj["notes"] = f.notes;
    json as = json::array();
    for (const auto& a : f.assertions)
      as.push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
    fj["assertions"] = as;
    fj["pass"] = f.all_passed();
    fixtures_json.push_back(fj);
  }
  j["fixtures"] = fixtures_json;
  j["summary"] = {{"total", total}, {"passed", passed}, {"green", green()}};
  return j;
}

std::string CorpusReport::table() const {
  std::ostringstream ss;
  for (const auto& f : fixtures) {
    ss << (f.all_passed() ? "[pass] " : "[FAIL] ") << f.id << "\n";
    for (const auto& a : f.assertions)
      ss << "    " << (a.pass ? "ok   " : "FAIL ") << a.name << "  (" << a.detail << ")\n";
    for (const auto& n : f.notes) ss << "    note: " << n << "\n";
  }
  ss << "passed " << passed << "/" << total << "\n";
  return ss.str();
}

}  // namespace sqckit
