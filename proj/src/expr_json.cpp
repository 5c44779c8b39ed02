#include "sqckit/expr_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sqckit {

using nlohmann::json;

namespace {

json space_to_json(const SpaceSpec& s) {
  json j;
  j["dim"] = s.dim();
  if (s.is_max_norm())
    j["p"] = "inf";
  else
    j["p"] = s.p();
  return j;
}

SpaceSpec space_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("p"))
    fail(ErrorCode::ParseError, "space needs dim and p");
  double p;
  if (j["p"].is_string())
    p = j["p"].get<std::string>() == "inf" ? kPInfinity : -1.0;
  else
    p = j["p"].get<double>();
  return SpaceSpec(j["dim"].get<std::size_t>(), p);
}

json matrix_to_json(const Matrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = m.data();
  return j;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    fail(ErrorCode::ParseError, "matrix needs rows, cols, data");
  return Matrix(j["rows"].get<std::size_t>(), j["cols"].get<std::size_t>(),
                j["data"].get<std::vector<double>>());
}

json body_to_json(const GaugeBody& b) {
  json j;
  switch (b.kind()) {
    case GaugeBody::Kind::PNormBall:
      j["shape"] = "pnorm_ball";
      j["space"] = space_to_json(*b.ball_space());
      j["radius"] = b.ball_radius();
      break;
    case GaugeBody::Kind::Box:
      j["shape"] = "box";
      j["lo"] = b.box_lo();
      j["hi"] = b.box_hi();
      break;
    case GaugeBody::Kind::Polytope: {
      j["shape"] = "polytope";
      j["rows"] = b.rows();
      j["offsets"] = b.offsets();
      break;
    }
    case GaugeBody::Kind::Ellipsoid:
      j["shape"] = "ellipsoid";
      j["q"] = matrix_to_json(b.quadratic_form());
      break;
  }
  return j;
}

GaugeBody body_from_json(const json& j) {
  std::string shape = j.value("shape", "");
  if (shape == "pnorm_ball")
    return GaugeBody::pnorm_ball(space_from_json(j.at("space")), j.at("radius").get<double>());
  if (shape == "box")
    return GaugeBody::box(j.at("lo").get<Vec>(), j.at("hi").get<Vec>());
  if (shape == "polytope")
    return GaugeBody::polytope(j.at("rows").get<std::vector<Vec>>(), j.at("offsets").get<Vec>());
  if (shape == "ellipsoid") return GaugeBody::ellipsoid(matrix_from_json(j.at("q")));
  fail(ErrorCode::UnknownAtom, "unknown gauge body shape '" + shape + "'");
}

json map_to_json(const MapDescriptor& m) {
  json j;
  switch (m.kind) {
    case MapDescriptor::Kind::AffineGraph:
      j["map"] = "affine_graph";
      j["a"] = matrix_to_json(m.a);
      j["b"] = m.b;
      break;
    case MapDescriptor::Kind::AffinePreimage:
      j["map"] = "affine_preimage";
      j["a"] = matrix_to_json(m.a);
      j["b"] = m.b;
      break;
    case MapDescriptor::Kind::SumSplit:
      j["map"] = "sum_split";
      break;
    case MapDescriptor::Kind::ProductSlice:
      j["map"] = "product_slice";
      j["lo"] = m.slice_lo;
      j["hi"] = m.slice_hi;
      j["anchored"] = m.anchored;
      break;
  }
  if (m.gamma) j["gamma"] = *m.gamma;
  if (m.ell) j["ell"] = *m.ell;
  return j;
}

MapDescriptor map_from_json(const json& j) {
  std::string kind = j.value("map", "");
  MapDescriptor m;
  if (kind == "affine_graph")
    m = MapDescriptor::affine_graph(matrix_from_json(j.at("a")), j.at("b").get<Vec>());
  else if (kind == "affine_preimage")
    m = MapDescriptor::affine_preimage(matrix_from_json(j.at("a")), j.at("b").get<Vec>());
  else if (kind == "sum_split")
    m = MapDescriptor::sum_split();
  else if (kind == "product_slice")
    m = MapDescriptor::product_slice(j.at("lo").get<Vec>(), j.at("hi").get<Vec>(),
                                     j.value("anchored", false));
  else
    fail(ErrorCode::UnknownAtom, "unknown map descriptor '" + kind + "'");
  if (j.contains("gamma")) m.gamma = j["gamma"].get<double>();
  if (j.contains("ell")) m.ell = j["ell"].get<double>();
  return m;
}

json node_to_json(const Expr& e);

json children_to_json(const std::vector<ExprPtr>& children) {
  json arr = json::array();
  for (const auto& c : children) arr.push_back(node_to_json(*c));
  return arr;
}

json node_to_json(const Expr& e) {
  json j;
  j["kind"] = e.kind();
  if (e.declared_sigma()) j["sigma"] = *e.declared_sigma();

  if (auto* n = dynamic_cast<const NormAtom*>(&e)) {
    j["space"] = space_to_json(n->space);
  } else if (auto* n = dynamic_cast<const PowerNormAtom*>(&e)) {
    j["space"] = space_to_json(n->space);
    j["a"] = n->exponent;
  } else if (auto* n = dynamic_cast<const GaugeAtom*>(&e)) {
    j["body"] = body_to_json(n->body);
  } else if (auto* n = dynamic_cast<const Poly1D*>(&e)) {
    j["coefficients"] = n->coefficients;
  } else if (dynamic_cast<const Abs1D*>(&e)) {
    // no fields
  } else if (auto* n = dynamic_cast<const Linear1D*>(&e)) {
    j["slope"] = n->slope;
    j["intercept"] = n->intercept;
  } else if (auto* n = dynamic_cast<const Piecewise1D*>(&e)) {
    j["breakpoints"] = n->breakpoints;
    j["pieces"] = children_to_json(n->pieces);
    json ov = json::array();
    for (const auto& [at, value] : n->overrides) ov.push_back({{"at", at}, {"value", value}});
    j["overrides"] = ov;
  } else if (dynamic_cast<const QuadDip*>(&e)) {
    // no fields
  } else if (auto* n = dynamic_cast<const Table1D*>(&e)) {
    j["grid"] = n->grid;
    j["values"] = n->values;
  } else if (auto* n = dynamic_cast<const Scale*>(&e)) {
    j["c"] = n->factor;
    j["child"] = node_to_json(*n->child);
  } else if (auto* n = dynamic_cast<const ComposeMonotone*>(&e)) {
    j["outer"] = node_to_json(*n->outer);
    j["child"] = node_to_json(*n->inner);
    j["ell"] = n->ell;
  } else if (auto* n = dynamic_cast<const SupFamily*>(&e)) {
    j["children"] = children_to_json(n->children);
  } else if (auto* n = dynamic_cast<const MaxFinite*>(&e)) {
    j["children"] = children_to_json(n->children);
  } else if (auto* n = dynamic_cast<const AffinePre*>(&e)) {
    j["a"] = matrix_to_json(n->a);
    j["b"] = n->b;
    if (n->gamma) j["gamma"] = *n->gamma;
    j["child"] = node_to_json(*n->child);
  } else if (auto* n = dynamic_cast<const Restrict*>(&e)) {
    j["child"] = node_to_json(*n->child);
    j["u"] = n->u;
    j["x"] = n->x;
    j["space"] = space_to_json(n->space);
    j["unit_speed"] = n->unit_speed;
  } else if (auto* n = dynamic_cast<const InfConv*>(&e)) {
    j["left"] = node_to_json(*n->left);
    j["right"] = node_to_json(*n->right);
    j["inner_lo"] = n->inner_lo;
    j["inner_hi"] = n->inner_hi;
    j["grid_n"] = n->grid_n;
    j["inner_tol"] = n->inner_tol;
    if (n->joint_sigma) j["joint_sigma"] = *n->joint_sigma;
  } else if (auto* n = dynamic_cast<const MarginalMin*>(&e)) {
    j["child"] = node_to_json(*n->joint);
    j["descriptor"] = map_to_json(n->map);
    j["product_p"] = n->product_p;
    j["grid_n"] = n->grid_n;
    if (n->joint_sigma) j["joint_sigma"] = *n->joint_sigma;
  } else if (auto* n = dynamic_cast<const SupValue*>(&e)) {
    j["child"] = node_to_json(*n->joint);
    j["descriptor"] = map_to_json(n->map);
    j["product_p"] = n->product_p;
    j["grid_n"] = n->grid_n;
    if (n->joint_sigma) j["joint_sigma"] = *n->joint_sigma;
  } else if (auto* n = dynamic_cast<const Shift*>(&e)) {
    j["offset"] = n->offset;
    j["child"] = node_to_json(*n->child);
  } else if (auto* n = dynamic_cast<const AddConstant*>(&e)) {
    j["k"] = n->constant;
    j["child"] = node_to_json(*n->child);
  } else {
    fail(ErrorCode::UnknownAtom, std::string("unserializable node '") + e.kind() + "'");
  }
  return j;
}

ExprPtr node_from_json(const json& j);

std::vector<ExprPtr> children_from_json(const json& arr) {
  if (!arr.is_array()) fail(ErrorCode::ParseError, "children must be an array");
  std::vector<ExprPtr> out;
  for (const auto& c : arr) out.push_back(node_from_json(c));
  return out;
}

std::optional<double> opt_sigma(const json& j) {
  if (j.contains("joint_sigma")) return j["joint_sigma"].get<double>();
  return std::nullopt;
}

ExprPtr node_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    fail(ErrorCode::ParseError, "expression node must be an object with a kind");
  std::string kind = j["kind"].get<std::string>();
  std::shared_ptr<Expr> node;

  try {
    if (kind == "norm") {
      node = std::make_shared<NormAtom>(space_from_json(j.at("space")));
    } else if (kind == "power_norm") {
      node = std::make_shared<PowerNormAtom>(space_from_json(j.at("space")),
                                             j.at("a").get<double>());
    } else if (kind == "gauge") {
      node = std::make_shared<GaugeAtom>(body_from_json(j.at("body")));
    } else if (kind == "poly1d") {
      node = std::make_shared<Poly1D>(j.at("coefficients").get<Vec>());
    } else if (kind == "abs1d") {
      node = std::make_shared<Abs1D>();
    } else if (kind == "linear1d") {
      node = std::make_shared<Linear1D>(j.value("slope", 1.0), j.value("intercept", 0.0));
    } else if (kind == "piecewise1d") {
      std::vector<std::pair<double, double>> overrides;
      for (const auto& ov : j.value("overrides", json::array()))
        overrides.emplace_back(ov.at("at").get<double>(), ov.at("value").get<double>());
      node = std::make_shared<Piecewise1D>(j.value("breakpoints", Vec{}),
                                           children_from_json(j.at("pieces")),
                                           std::move(overrides));
    } else if (kind == "quad_dip") {
      node = std::make_shared<QuadDip>();
    } else if (kind == "table1d") {
      node = std::make_shared<Table1D>(j.at("grid").get<Vec>(), j.at("values").get<Vec>());
    } else if (kind == "scale") {
      node = std::make_shared<Scale>(j.at("c").get<double>(), node_from_json(j.at("child")));
    } else if (kind == "compose_monotone") {
      node = std::make_shared<ComposeMonotone>(node_from_json(j.at("outer")),
                                               node_from_json(j.at("child")),
                                               j.value("ell", 0.0));
    } else if (kind == "sup") {
      node = std::make_shared<SupFamily>(children_from_json(j.at("children")));
    } else if (kind == "max") {
      node = std::make_shared<MaxFinite>(children_from_json(j.at("children")));
    } else if (kind == "affine_pre") {
      std::optional<double> gamma;
      if (j.contains("gamma")) gamma = j["gamma"].get<double>();
      node = std::make_shared<AffinePre>(matrix_from_json(j.at("a")), j.at("b").get<Vec>(),
                                         gamma, node_from_json(j.at("child")));
    } else if (kind == "restrict") {
      node = std::make_shared<Restrict>(node_from_json(j.at("child")), j.at("u").get<Vec>(),
                                        j.at("x").get<Vec>(), space_from_json(j.at("space")),
                                        j.value("unit_speed", false));
    } else if (kind == "inf_conv") {
      node = std::make_shared<InfConv>(node_from_json(j.at("left")),
                                       node_from_json(j.at("right")),
                                       j.at("inner_lo").get<Vec>(), j.at("inner_hi").get<Vec>(),
                                       j.value("grid_n", 2049), opt_sigma(j),
                                       j.value("inner_tol", 1e-6));
    } else if (kind == "marginal_min") {
      node = std::make_shared<MarginalMin>(node_from_json(j.at("child")),
                                           map_from_json(j.at("descriptor")),
                                           j.value("product_p", 2.0), j.value("grid_n", 2049),
                                           opt_sigma(j));
    } else if (kind == "sup_value") {
      node = std::make_shared<SupValue>(node_from_json(j.at("child")),
                                        map_from_json(j.at("descriptor")),
                                        j.value("product_p", 2.0), j.value("grid_n", 2049),
                                        opt_sigma(j));
    } else if (kind == "shift") {
      node = std::make_shared<Shift>(j.at("offset").get<Vec>(), node_from_json(j.at("child")));
    } else if (kind == "add_constant") {
      node = std::make_shared<AddConstant>(j.at("k").get<double>(),
                                           node_from_json(j.at("child")));
    } else {
      fail(ErrorCode::UnknownAtom, "unknown expression kind '" + kind + "'");
    }
  } catch (const json::exception& ex) {
    fail(ErrorCode::ParseError, std::string("in node '") + kind + "': " + ex.what());
  }

  if (j.contains("sigma")) node->set_declared_sigma(j["sigma"].get<double>());
  return node;
}

}  // namespace

std::string serialize(const Expr& expr, int indent) {
  return node_to_json(expr).dump(indent);
}

ExprPtr deserialize(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& ex) {
    fail(ErrorCode::ParseError, ex.what());
  }
  return node_from_json(j);
}

ExprPtr load_expression_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open expression file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return deserialize(ss.str());
}

}  // namespace sqckit
