#include "sqckit/domain_parse.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace sqckit {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& s) {
  if (s == "inf") return kPInfinity;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    fail(ErrorCode::SpecSyntax, "bad number '" + s + "' in domain spec");
  return v;
}

Vec parse_csv(const std::string& s) {
  Vec out;
  for (const auto& tok : split(s, ',')) out.push_back(parse_number(tok));
  return out;
}

std::string csv(const Vec& v) {
  std::ostringstream ss;
  ss.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) ss << ',';
    ss << v[i];
  }
  return ss.str();
}

}  // namespace

ConvexDomain parse_domain(const std::string& spec) {
  std::string body = spec;
  double p = 2.0;
  if (auto at = spec.rfind("@p="); at != std::string::npos) {
    p = parse_number(spec.substr(at + 3));
    body = spec.substr(0, at);
  }
  auto parts = split(body, ':');
  if (parts.size() != 3)
    fail(ErrorCode::SpecSyntax, "domain spec must be kind:<a>:<b>, got '" + spec + "'");
  const std::string& kind = parts[0];

  if (kind == "interval") {
    double lo = parse_number(parts[1]);
    double hi = parse_number(parts[2]);
    return ConvexDomain::interval(lo, hi, p);
  }
  if (kind == "ball") {
    Vec center = parse_csv(parts[1]);
    double r = parse_number(parts[2]);
    return ConvexDomain::ball(center, r, SpaceSpec(center.size(), p));
  }
  if (kind == "box") {
    Vec lo = parse_csv(parts[1]);
    Vec hi = parse_csv(parts[2]);
    if (lo.size() != hi.size()) fail(ErrorCode::SpecSyntax, "box corners disagree on dimension");
    return ConvexDomain::box(lo, hi, SpaceSpec(lo.size(), p));
  }
  if (kind == "segment") {
    Vec a = parse_csv(parts[1]);
    Vec b = parse_csv(parts[2]);
    if (a.size() != b.size()) fail(ErrorCode::SpecSyntax, "segment ends disagree on dimension");
    return ConvexDomain::segment(a, b, SpaceSpec(a.size(), p));
  }
  fail(ErrorCode::SpecSyntax, "unknown domain kind '" + kind + "'");
}

std::string domain_to_string(const ConvexDomain& d) {
  std::ostringstream ss;
  ss.precision(17);
  switch (d.kind()) {
    case ConvexDomain::Kind::Interval:
      ss << "interval:" << d.interval_lo() << ":" << d.interval_hi();
      break;
    case ConvexDomain::Kind::Ball:
      ss << "ball:" << csv(d.ball_center()) << ":" << d.ball_radius();
      break;
    case ConvexDomain::Kind::Box:
      ss << "box:" << csv(d.box_lo()) << ":" << csv(d.box_hi());
      break;
    case ConvexDomain::Kind::Segment:
      ss << "segment:" << csv(d.seg_a()) << ":" << csv(d.seg_b());
      break;
  }
  if (d.space().is_max_norm())
    ss << "@p=inf";
  else if (d.space().p() != 2.0)
    ss << "@p=" << d.space().p();
  return ss.str();
}

}  // namespace sqckit
