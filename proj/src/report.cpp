#include "sqckit/report.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

namespace sqckit {

using nlohmann::json;

std::string hex_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

json vec_to_json(const Vec& v) { return json(v); }

json point_report(const Vec& v) {
  json j;
  j["dec"] = v;
  json hex = json::array();
  for (double x : v) hex.push_back(hex_float(x));
  j["hex"] = hex;
  return j;
}

json triple_report(const Triple& t) {
  json j;
  j["x"] = point_report(t.x);
  j["y"] = point_report(t.y);
  j["lambda"] = t.lambda;
  j["lambda_hex"] = hex_float(t.lambda);
  return j;
}

json witness_report(const ViolationWitness& w) {
  json j;
  j["triple"] = triple_report(w.triple);
  j["lhs"] = w.lhs.is_finite() ? json(w.lhs.value()) : json("inf");
  if (w.lhs.is_finite()) j["lhs_hex"] = hex_float(w.lhs.value());
  j["rhs"] = w.rhs;
  j["rhs_hex"] = hex_float(w.rhs);
  j["margin"] = std::isfinite(w.margin) ? json(w.margin) : json("inf");
  j["sigma"] = w.sigma;
  j["tolerance"] = w.tolerance;
  return j;
}

json certificate_report(const SigmaCertificate& c) {
  json j;
  j["sigma"] = c.sigma;
  j["kind"] = cert_kind_name(c.kind);
  j["tolerance"] = c.tolerance;
  json trace = json::array();
  for (const auto& step : c.trace) {
    json s;
    s["rule"] = rule_kind_name(step.rule);
    s["inputs"] = step.inputs;
    json constants = json::object();
    for (const auto& [name, value] : step.constants) constants[name] = value;
    s["constants"] = constants;
    s["output"] = step.output;
    trace.push_back(s);
  }
  j["trace"] = trace;
  if (c.witness) j["witness"] = witness_report(*c.witness);
  return j;
}

json report_header(const json& config_echo, bool with_timestamp) {
  json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["config"] = config_echo;
  if (with_timestamp) {
    auto now = std::chrono::system_clock::now();
    j["timestamp"] =
        static_cast<long long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                   now.time_since_epoch())
                                   .count());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::ParseError, "cannot write file: " + path);
  out << content;
}

}  // namespace sqckit
