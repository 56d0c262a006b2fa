#pragma once

// JSON documents for sequences, jets, schemes and reports, and the tabular
// text dump of grid functions. Requires nlohmann/json on the include path.

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bergman/analytic.hpp"
#include "bergman/dbar.hpp"
#include "bergman/density.hpp"
#include "bergman/error.hpp"
#include "bergman/interpolation.hpp"
#include "bergman/scheme.hpp"

namespace bergman::io {

using nlohmann::json;

/// Input document violations (bad structure, points outside the disk, bad jets).
class ParseError : public Error {
 public:
  using Error::Error;
};

struct RawJet {
  std::size_t point_index = 0;
  int order = 0;
  cplx value;
};

struct InputDocument {
  PointSequence points;
  std::optional<std::vector<RawJet>> jets;
  std::optional<std::vector<cplx>> values;
  std::optional<InterpolationScheme> scheme;
  std::optional<std::vector<cplx>> coefficients;
};

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

/// Accepts [re, im] or a bare real number.
inline cplx complex_from(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(ErrorKind::InvalidArgument, what + " must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline std::vector<cplx> complex_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(ErrorKind::InvalidArgument, what + " must be an array");
  std::vector<cplx> out;
  for (const auto& e : j) out.push_back(complex_from(e, what));
  return out;
}

inline PointSequence parse_points(const json& j) {
  if (!j.is_array()) throw ParseError(ErrorKind::InvalidArgument, "points must be an array");
  PointSequence out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) throw ParseError(ErrorKind::InvalidArgument, "points[" + std::to_string(i) + "] must be a [re, im] pair");
    const cplx z = complex_from(j[i], "points[" + std::to_string(i) + "]");
    if (!(std::abs(z) < 1.0 - kBoundaryGuard)) {
      throw ParseError(ErrorKind::PointOutsideDisk, "points[" + std::to_string(i) + "] lies outside the unit disk");
    }
    out.emplace_back(z);
  }
  return out;
}

inline json domain_to_json(const Domain& d) {
  if (d.is_disk()) {
    return {{"type", "disk"}, {"center", to_json(d.disk().center().value())}, {"radius", d.disk().radius()}};
  }
  json centers = json::array();
  for (const auto& c : d.balls().centers) centers.push_back(to_json(c.value()));
  return {{"type", "balls"}, {"centers", centers}, {"radius", d.balls().radius}};
}

inline Domain domain_from_json(const json& j) {
  const std::string type = j.value("type", "");
  const double radius = j.at("radius").get<double>();
  if (type == "disk") return PseudoDisk(DiskPoint(complex_from(j.at("center"), "domain center")), radius);
  if (type == "balls") {
    BallUnion u;
    for (const auto& c : j.at("centers")) u.centers.emplace_back(complex_from(c, "domain center"));
    u.radius = radius;
    return u;
  }
  throw ParseError(ErrorKind::InvalidArgument, "unknown domain type '" + type + "'");
}

inline json scheme_to_json(const InterpolationScheme& s) {
  json clusters = json::array();
  for (const auto& c : s.clusters) clusters.push_back(c.members);
  json domains = json::array();
  for (const auto& d : s.domains) domains.push_back(domain_to_json(d));
  return {{"clusters", clusters},
          {"domains", domains},
          {"diameter", s.diameter},
          {"inner_radius", s.inner_radius},
          {"separation", s.separation},
          {"cluster_bound", s.cluster_bound}};
}

inline InterpolationScheme scheme_from_json(const json& j, const PointSequence& points) {
  InterpolationScheme s;
  s.sequence = points;
  for (const auto& c : j.at("clusters")) {
    Cluster cl;
    for (const auto& i : c) {
      const auto idx = i.get<std::size_t>();
      if (idx >= points.size()) throw ParseError(ErrorKind::InvalidArgument, "cluster index out of range");
      cl.members.push_back(idx);
    }
    s.clusters.push_back(std::move(cl));
  }
  for (const auto& d : j.at("domains")) s.domains.push_back(domain_from_json(d));
  if (s.domains.size() != s.clusters.size()) {
    throw ParseError(ErrorKind::InvalidArgument, "scheme needs one domain per cluster");
  }
  s.diameter = j.value("diameter", 0.0);
  s.inner_radius = j.value("inner_radius", 0.0);
  s.separation = j.value("separation", 0.0);
  s.cluster_bound = j.value("cluster_bound", std::size_t{0});
  return s;
}

/// Reads {"points": [[re, im], ...], "jets": [...], "values": [...],
/// "scheme": {...}, "coefficients": [...]}; only "points" is required.
inline InputDocument parse_sequence(const json& doc) {
  if (!doc.is_object() || !doc.contains("points")) {
    throw ParseError(ErrorKind::InvalidArgument, "document needs a 'points' array");
  }
  InputDocument in;
  try {
    in.points = parse_points(doc.at("points"));
    if (doc.contains("jets")) {
      std::vector<RawJet> jets;
      for (const auto& j : doc.at("jets")) {
        if (!j.is_object() || !j.contains("point_index") || !j.contains("value")) {
          throw ParseError(ErrorKind::MalformedJet, "jet needs point_index and value");
        }
        RawJet r;
        const auto idx = j.at("point_index").get<long long>();
        r.order = j.value("order", 0);
        if (idx < 0 || static_cast<std::size_t>(idx) >= in.points.size() || r.order < 0) {
          throw ParseError(ErrorKind::MalformedJet, "jet point_index or order out of range");
        }
        r.point_index = static_cast<std::size_t>(idx);
        r.value = complex_from(j.at("value"), "jet value");
        jets.push_back(r);
      }
      in.jets = std::move(jets);
    }
    if (doc.contains("values")) in.values = complex_list(doc.at("values"), "values");
    if (doc.contains("coefficients")) in.coefficients = complex_list(doc.at("coefficients"), "coefficients");
    if (doc.contains("scheme")) in.scheme = scheme_from_json(doc.at("scheme"), in.points);
  } catch (const json::exception& e) {
    throw ParseError(ErrorKind::InvalidArgument, e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    const std::string msg = e.what();
    const std::string prefix = std::string(to_string(e.kind())) + ": ";
    throw ParseError(e.kind(), msg.rfind(prefix, 0) == 0 ? msg.substr(prefix.size()) : msg);
  }
  return in;
}

inline InputDocument parse_sequence(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(ErrorKind::InvalidArgument, e.what());
  }
  return parse_sequence(doc);
}

inline json document_to_json(const InputDocument& in) {
  json doc;
  json pts = json::array();
  for (const auto& p : in.points) pts.push_back(to_json(p.value()));
  doc["points"] = pts;
  if (in.jets) {
    json jets = json::array();
    for (const auto& j : *in.jets) {
      jets.push_back({{"point_index", j.point_index}, {"order", j.order}, {"value", to_json(j.value)}});
    }
    doc["jets"] = jets;
  }
  auto list = [](const std::vector<cplx>& v) {
    json a = json::array();
    for (const cplx z : v) a.push_back(to_json(z));
    return a;
  };
  if (in.values) doc["values"] = list(*in.values);
  if (in.coefficients) doc["coefficients"] = list(*in.coefficients);
  if (in.scheme) doc["scheme"] = scheme_to_json(*in.scheme);
  return doc;
}

/// Distributes raw jets over the scheme's clusters and validates them.
inline JetTargets targets_from_jets(const InterpolationScheme& s, const std::vector<RawJet>& jets) {
  std::vector<std::size_t> owner(s.sequence.size(), 0);
  for (std::size_t k = 0; k < s.clusters.size(); ++k) {
    for (std::size_t i : s.clusters[k].members) owner[i] = k;
  }
  JetTargets t;
  t.clusters.resize(s.clusters.size());
  for (const auto& j : jets) {
    if (j.point_index >= s.sequence.size()) throw Error(ErrorKind::MalformedJet, "jet point_index out of range");
    t.clusters[owner[j.point_index]].push_back({s.sequence[j.point_index], j.order, j.value});
  }
  validate_targets(s, t);
  return t;
}

inline json to_json(const AdmissibilityReport& r) {
  return {{"admissible", r.admissible()},  {"partition_ok", r.partition_ok}, {"p1_ok", r.p1_ok},
          {"p2_ok", r.p2_ok},              {"p3_ok", r.p3_ok},               {"p4_ok", r.p4_ok},
          {"diameter", r.diameter},        {"inner_radius", r.inner_radius}, {"separation", r.separation},
          {"cluster_bound", r.cluster_bound}, {"bounded_density", r.bounded_density}};
}

inline json to_json(const AnalyticFunctionRep& f) {
  struct Visitor {
    json operator()(const KernelExpansion& k) const {
      json terms = json::array();
      for (const auto& t : k.terms) {
        terms.push_back({{"point", to_json(t.point)},
                         {"order", t.order},
                         {"coeff", to_json(t.coeff)},
                         {"coeff_lo", to_json(t.coeff_lo)}});
      }
      return {{"kind", "kernel"},
              {"kernel", {{"center", to_json(k.kernel.center)}, {"radius", k.kernel.radius}}},
              {"terms", terms}};
    }
    json operator()(const Polynomial& p) const {
      json c = json::array();
      for (const cplx z : p.coeffs) c.push_back(to_json(z));
      return {{"kind", "polynomial"}, {"center", to_json(p.center)}, {"coeffs", c}};
    }
    json operator()(const LagrangeBlaschke& l) const {
      json n = json::array(), v = json::array();
      for (const cplx z : l.nodes) n.push_back(to_json(z));
      for (const cplx z : l.values) v.push_back(to_json(z));
      return {{"kind", "lagrange_blaschke"}, {"nodes", n}, {"values", v}};
    }
    json operator()(const MoebiusAffine& m) const {
      return {{"kind", "moebius_affine"}, {"a", to_json(m.a)}, {"constant", to_json(m.constant)},
              {"slope", to_json(m.slope)}};
    }
  };
  return std::visit(Visitor{}, f);
}

inline AnalyticFunctionRep function_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "kernel") {
    KernelExpansion k;
    k.kernel.center = complex_from(j.at("kernel").at("center"), "kernel center");
    k.kernel.radius = j.at("kernel").at("radius").get<double>();
    for (const auto& t : j.at("terms")) {
      k.terms.push_back({complex_from(t.at("point"), "term point"), t.at("order").get<int>(),
                         complex_from(t.at("coeff"), "term coeff"),
                         t.contains("coeff_lo") ? complex_from(t.at("coeff_lo"), "term coeff_lo") : cplx(0.0)});
    }
    return k;
  }
  if (kind == "polynomial") return Polynomial{complex_from(j.at("center"), "center"), complex_list(j.at("coeffs"), "coeffs")};
  if (kind == "lagrange_blaschke") {
    return LagrangeBlaschke{complex_list(j.at("nodes"), "nodes"), complex_list(j.at("values"), "values")};
  }
  if (kind == "moebius_affine") {
    return MoebiusAffine{complex_from(j.at("a"), "a"), complex_from(j.at("constant"), "constant"),
                         complex_from(j.at("slope"), "slope")};
  }
  throw ParseError(ErrorKind::InvalidArgument, "unknown function kind '" + kind + "'");
}

inline json to_json(const SolveReport& r) {
  json res = json::array();
  double worst = 0.0;
  for (const cplx z : r.residuals) {
    res.push_back(to_json(z));
    worst = std::max(worst, std::abs(z));
  }
  return {{"function", to_json(r.function)},
          {"norm_value", r.norm_value},
          {"target_norm", r.target_norm},
          {"residuals", res},
          {"max_residual", worst}};
}

inline json to_json(const DensityReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"radius", row.radius}, {"center", to_json(row.center.value())},
                    {"d_value", row.d_value}, {"s_value", row.s_value}});
  }
  json centers = json::array();
  for (const auto& c : r.mobius_centers) centers.push_back(to_json(c.value()));
  return {{"radii", r.radii},
          {"mobius_centers", centers},
          {"rows", rows},
          {"d_plus_estimate", r.d_plus_estimate},
          {"s_plus_estimate", r.s_plus_estimate}};
}

/// One row per (radius, center): "radius center_re center_im d_value s_value".
inline void write_density_table(std::ostream& os, const DensityReport& r) {
  os << "# radius center_re center_im d_value s_value\n" << std::setprecision(17);
  for (const auto& row : r.rows) {
    os << row.radius << ' ' << row.center.value().real() << ' ' << row.center.value().imag() << ' ' << row.d_value << ' '
       << row.s_value << '\n';
  }
}

/// One node per line: "r theta re im".
inline void write_grid_function(std::ostream& os, const GridFunction& f) {
  const PolarGrid& g = f.grid();
  os << "# polar grid " << g.radial << 'x' << g.angular << " max_radius " << std::setprecision(17) << g.max_radius
     << "\n# r theta re im\n";
  for (int i = 0; i < g.radial; ++i) {
    for (int j = 0; j < g.angular; ++j) {
      const cplx v = f.at(i, j);
      os << g.r(i) << ' ' << g.theta(j) << ' ' << v.real() << ' ' << v.imag() << '\n';
    }
  }
}

}  // namespace bergman::io
