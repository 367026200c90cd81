#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "subhyp/catalog.hpp"
#include "subhyp/certify.hpp"
#include "subhyp/chains.hpp"
#include "subhyp/domain_io.hpp"
#include "subhyp/errors.hpp"
#include "subhyp/function_spec.hpp"
#include "subhyp/metric.hpp"
#include "subhyp/parallel.hpp"
#include "subhyp/selfimprove.hpp"
#include "subhyp/sharpmax.hpp"
#include "subhyp/svg.hpp"

namespace subhyp::cli {

using nlohmann::json;

namespace {

struct RunConfig {
  std::string command;
  std::string domain;
  double alpha = 0.5;
  double p = 3.0;
  int k = 1;
  std::string q = "2";
  double theta = 0.0;
  double h = 0.0;
  double tol = 1e-3;
  double eps = 0.1;
  double C = 0.0;
  std::size_t budget = CertifyOptions{}.budget;
  int scales = CertifyOptions{}.scales;
  int top_k = CertifyOptions{}.top_k;
  double eps_slope = CertifyOptions{}.eps_slope;
  std::string norm = "uniform";
  std::string from;
  std::string to;
  std::string alphas = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  std::string function;
  std::string cube;
  std::uint64_t seed = kDefaultSeed;
  std::size_t workers = 0;
  std::string report;
  std::string svg;
  std::string csv;
  std::string catalog_action;
  std::string catalog_name;
  std::string out;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  json result;
  json grid = json::object();
  int exit_code = 0;
};

Point parse_point(const std::string& s, const char* flag) {
  double x = 0.0, y = 0.0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%lf,%lf%c", &x, &y, &tail) != 2)
    throw UsageError(std::string(flag) + " expects x,y");
  return {x, y};
}

std::vector<double> parse_list(const std::string& s, const char* flag) {
  std::vector<double> v;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + " expects a comma-separated list of numbers");
    }
  }
  if (v.empty()) throw UsageError(std::string(flag) + " is empty");
  return v;
}

double parse_q(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInfinityNorm;
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw UsageError("--q expects a number or 'inf'");
  }
}

Norm parse_norm(const std::string& s) {
  if (s == "uniform") return Norm::Uniform;
  if (s == "euclidean") return Norm::Euclidean;
  throw UsageError("--norm expects uniform or euclidean");
}

json point_json(Point p) { return json::array({p.x, p.y}); }

json num(double v) { return std::isfinite(v) ? json(v) : json(v > 0 ? "inf" : v < 0 ? "-inf" : "nan"); }

std::string hex(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

void need(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

CertifyOptions certify_options(const RunConfig& c) {
  CertifyOptions o;
  o.theta = c.theta;
  o.budget = c.budget;
  o.scales = c.scales;
  o.top_k = c.top_k;
  o.eps_slope = c.eps_slope;
  o.norm = parse_norm(c.norm);
  o.seed = c.seed;
  return o;
}

MetricOptions metric_options(const RunConfig& c) {
  MetricOptions o;
  o.norm = parse_norm(c.norm);
  o.h = c.h;
  o.tol = c.tol;
  return o;
}

json pair_json(const PairSample& s) {
  return {{"x", point_json(s.x)}, {"y", point_json(s.y)},       {"scale", s.scale},
          {"distance", s.distance}, {"ratio", s.ratio}, {"hard", s.hard}};
}

json certificate_json(const SubhypCertificate& c) {
  json per_scale = json::array();
  for (const ScaleStat& s : c.per_scale)
    per_scale.push_back({{"scale", s.scale}, {"max_ratio", s.max_ratio}, {"pairs", s.pairs},
                         {"worst", pair_json(s.worst)}});
  json worst = json::array();
  for (const PairSample& s : c.worst_pairs) worst.push_back(pair_json(s));
  return {{"alpha", c.alpha},
          {"theta", c.theta},
          {"C_est", c.C_est},
          {"verdict", verdict_name(c.verdict)},
          {"slope", c.fit.slope},
          {"slope_stderr", c.fit.stderr_slope},
          {"eps_slope", c.eps_slope},
          {"fit_points", c.fit.points},
          {"evaluations", c.evaluations},
          {"per_scale", per_scale},
          {"worst_pairs", worst}};
}

int verdict_exit(Verdict v) {
  return v == Verdict::Subhyperbolic ? 0 : v == Verdict::Diverging ? 1 : 2;
}

Svg figure(const PlanarDomain& d) {
  Svg svg(d.bounding_box());
  svg.domain(d);
  return svg;
}

Outcome cmd_geodesic(const RunConfig& c, const PlanarDomain& d) {
  need(c.from, "--from");
  need(c.to, "--to");
  const Point x = parse_point(c.from, "--from"), y = parse_point(c.to, "--to");
  const GeodesicResult g = subhyp_distance(d, c.alpha, x, y, metric_options(c));
  Outcome o;
  o.result = {{"value", g.value},
              {"gap", g.gap},
              {"alpha", g.alpha},
              {"separation", distance(x, y)},
              {"history", g.history},
              {"curve_vertices", g.curve.vertices.size()},
              {"curve_length", g.curve.arclength.empty() ? 0.0 : g.curve.arclength.back()}};
  o.grid = {{"h", g.h}, {"levels", g.levels}};
  if (!c.csv.empty()) {
    std::string t = "s,x,y\n";
    for (std::size_t i = 0; i < g.curve.vertices.size(); ++i)
      t += json(g.curve.arclength[i]).dump() + "," + json(g.curve.vertices[i].x).dump() + "," +
           json(g.curve.vertices[i].y).dump() + "\n";
    write_text(c.csv, t);
  }
  if (!c.svg.empty()) {
    Svg svg = figure(d);
    svg.polyline(g.curve.vertices, "#c0392b");
    svg.point(x, "#2c3e50");
    svg.point(y, "#2c3e50");
    svg.save(c.svg);
  }
  return o;
}

void certificate_extras(const RunConfig& c, const PlanarDomain& d, const SubhypCertificate& cert) {
  if (!c.csv.empty()) {
    std::string t = "scale,max_ratio,pairs\n";
    for (const ScaleStat& s : cert.per_scale)
      t += json(s.scale).dump() + "," + json(s.max_ratio).dump() + "," + std::to_string(s.pairs) + "\n";
    write_text(c.csv, t);
  }
  if (!c.svg.empty()) {
    Svg svg = figure(d);
    for (const ScaleStat& s : cert.per_scale) {
      svg.polyline({s.worst.x, s.worst.y}, "#c0392b", 1.0);
      svg.point(s.worst.x, "#c0392b", 2.0);
      svg.point(s.worst.y, "#c0392b", 2.0);
    }
    svg.save(c.svg);
  }
}

Outcome cmd_certify(const RunConfig& c, const PlanarDomain& d) {
  const SubhypCertificate cert = classify_alpha(d, c.alpha, certify_options(c));
  certificate_extras(c, d, cert);
  Outcome o;
  o.result = certificate_json(cert);
  o.grid = {{"h_fraction", CertifyOptions{}.h_fraction}, {"scales", c.scales}};
  o.exit_code = verdict_exit(cert.verdict);
  return o;
}

Outcome cmd_classify(const RunConfig& c, const PlanarDomain& d) {
  const ExtensionVerdict v = classify_extension(d, c.p, 2, certify_options(c));
  certificate_extras(c, d, v.certificate);
  Outcome o;
  o.result = {{"p", v.p},
              {"n", v.n},
              {"alpha", v.alpha},
              {"verdict", v.verdict},
              {"characterization", v.characterization},
              {"extension", v.extension},
              {"certificate", certificate_json(v.certificate)}};
  o.grid = {{"h_fraction", CertifyOptions{}.h_fraction}, {"scales", c.scales}};
  o.exit_code = verdict_exit(v.certificate.verdict);
  return o;
}

Outcome cmd_scan(const RunConfig& c, const PlanarDomain& d) {
  const ScanResult r = scan_alpha(d, parse_list(c.alphas, "--alphas"), certify_options(c));
  json rows = json::array();
  std::string t = "alpha,verdict,slope,C_est\n";
  for (std::size_t i = 0; i < r.alphas.size(); ++i) {
    const SubhypCertificate& cert = r.certificates[i];
    rows.push_back({{"alpha", r.alphas[i]},
                    {"verdict", verdict_name(cert.verdict)},
                    {"slope", cert.fit.slope},
                    {"slope_stderr", cert.fit.stderr_slope},
                    {"C_est", cert.C_est}});
    t += json(r.alphas[i]).dump() + "," + verdict_name(cert.verdict) + "," + json(cert.fit.slope).dump() + "," +
         json(cert.C_est).dump() + "\n";
  }
  if (!c.csv.empty()) write_text(c.csv, t);
  Outcome o;
  o.result = {{"alphas", rows}, {"lower", r.lower}, {"upper", r.upper}, {"inversions", r.inversions}};
  o.grid = {{"h_fraction", CertifyOptions{}.h_fraction}, {"scales", c.scales}};
  return o;
}

json exponents_json(const ExponentRecord& e) {
  return {{"alpha", e.alpha},       {"C", e.C},
          {"C_g", e.C_g},           {"m", e.m},
          {"k", e.k},               {"n", e.n},
          {"separation", e.separation}, {"eps", e.eps},
          {"delta", e.delta},       {"log10_delta", e.log10_delta},
          {"q_sharp", e.q_sharp},   {"q_star", e.q_star},
          {"q_cap", e.q_cap},       {"q_tilde", e.q_tilde},
          {"alpha_star", e.alpha_star}, {"p", e.p},
          {"p_star", e.p_star}};
}

Outcome cmd_selfimprove(const RunConfig& c, const PlanarDomain& d) {
  need(c.from, "--from");
  need(c.to, "--to");
  const Point x = parse_point(c.from, "--from"), y = parse_point(c.to, "--to");
  const CantorDecomposition dec = cantor_decompose(d, c.alpha, c.C, x, y, c.eps * distance(x, y),
                                                   metric_options(c));
  VerifyOptions vo;
  vo.seed = c.seed;
  const DecompositionReport r = verify_decomposition(dec, vo);
  json taus = json::array();
  for (const TauCheck& t : r.tau_checks)
    taus.push_back({{"tau", t.tau}, {"integral", t.integral}, {"constant", t.constant}});
  Outcome o;
  o.result = {{"exponents", exponents_json(dec.exponents)},
              {"d_alpha", dec.d_alpha},
              {"selected_intervals", dec.selected.size()},
              {"blocks", dec.blocks.size()},
              {"residual_intervals", dec.residual.size()},
              {"tau_checks", taus},
              {"tau_constant", r.tau_constant},
              {"measure_E", r.measure_E},
              {"formula_E", r.formula_E},
              {"measure_E_error", r.measure_E_error},
              {"measure_exact", r.measure_exact},
              {"lgw_holds", r.lgw_holds},
              {"aa_integral", r.aa_integral},
              {"aa_constant", r.aa_constant},
              {"oscillation", r.oscillation},
              {"oscillation_bound", r.oscillation_bound},
              {"oscillation_holds", r.oscillation_holds},
              {"porosity", r.porosity},
              {"porosity_bound", r.porosity_bound},
              {"porosity_samples", r.porosity_samples},
              {"porosity_violations", r.porosity_violations},
              {"regularity", r.regularity},
              {"regularity_samples", r.regularity_samples},
              {"length_ratio", r.length_ratio}};
  o.grid = {{"achieved_gap", dec.achieved_gap}, {"curve_vertices", dec.curve.vertices.size()}};
  if (!c.svg.empty()) {
    Svg svg = figure(d);
    svg.polyline(dec.curve.vertices, "#c0392b");
    svg.save(c.svg);
  }
  return o;
}

Outcome cmd_chain(const RunConfig& c, const PlanarDomain& d) {
  need(c.from, "--from");
  need(c.to, "--to");
  const Point x = parse_point(c.from, "--from"), y = parse_point(c.to, "--to");
  const GeodesicResult g = subhyp_distance(d, c.alpha, x, y, metric_options(c));
  const CubeChain chain = build_chain(d, g.curve);
  const ChainReport r = verify_chain(chain, d);
  json cubes = json::array();
  for (const Cube& q : chain.cubes) cubes.push_back({{"center", point_json(q.center)}, {"radius", q.radius}});
  Outcome o;
  o.result = {{"cubes", cubes},
              {"cover_size", chain.cover_size},
              {"endpoints", r.endpoints},
              {"distinct", r.distinct},
              {"consecutive", r.consecutive},
              {"radii", r.radii},
              {"radius_error", r.radius_error},
              {"dilation", r.dilation},
              {"connections", r.connections},
              {"multiplicity", r.multiplicity},
              {"multiplicity_bound", kMultiplicityBound},
              {"multiplicity_ok", r.multiplicity_ok},
              {"radius_ratio", r.radius_ratio},
              {"comparability", r.comparability},
              {"radius_length_violations", r.radius_length_violations},
              {"ok", r.ok}};
  o.grid = {{"h", g.h}, {"levels", g.levels}};
  o.exit_code = r.ok ? 0 : 1;
  if (!c.csv.empty()) {
    std::string t = "cx,cy,r\n";
    for (const Cube& q : chain.cubes)
      t += json(q.center.x).dump() + "," + json(q.center.y).dump() + "," + json(q.radius).dump() + "\n";
    write_text(c.csv, t);
  }
  if (!c.svg.empty()) {
    Svg svg = figure(d);
    for (const Cube& q : chain.cubes) svg.cube(q, "#2980b9");
    svg.polyline(chain.curve.vertices, "#c0392b");
    svg.save(c.svg);
  }
  return o;
}

FunctionSpec function_of(const RunConfig& c) {
  need(c.function, "--function");
  return FunctionSpec::parse(c.function);
}

Outcome cmd_sharpmax(const RunConfig& c, const PlanarDomain& d) {
  const FunctionSpec f = function_of(c);
  const double h = c.h > 0.0 ? c.h : 1.0 / 32.0;
  const double q = parse_q(c.q);
  const ScalarField field = sample_field(d, f, h);
  const std::vector<double> radii = default_radii(h, d.diameter());
  const MaximalField sharp = sharp_maximal(field, c.k, radii);
  double peak = 0.0;
  for (std::size_t i = 0; i < sharp.field.values.size(); ++i)
    if (sharp.field.inside[i]) peak = std::max(peak, sharp.field.values[i]);
  Outcome o;
  o.result = {{"function", f.text()},
              {"k", c.k},
              {"q", num(q)},
              {"sharp_max", peak},
              {"sharp_norm", num(lq_norm(sharp.field, q))},
              {"f_norm", num(lq_norm(field, q))},
              {"radii", radii}};
  if (!c.cube.empty()) {
    const std::vector<double> v = parse_list(c.cube, "--cube");
    if (v.size() != 3) throw UsageError("--cube expects cx,cy,r");
    const LocalApprox la = local_best_approx(field, Cube{{v[0], v[1]}, v[2]}, c.k, q);
    json poly = json::array();
    for (std::size_t t = 0; t < la.poly.exponents.size(); ++t)
      poly.push_back({{"x", la.poly.exponents[t].first},
                      {"y", la.poly.exponents[t].second},
                      {"coefficient", la.poly.coefficients[t]}});
    o.result["local"] = {{"E", la.E}, {"cells", la.cells}, {"center", point_json(la.poly.center)}, {"poly", poly}};
  }
  if (c.p > 2.0 && std::isfinite(c.p)) {
    Cor2Options co;
    co.theta = c.theta;
    const Cor2Report r = cor2_check(field, d, c.k, c.p, radii, co);
    o.result["maximal_bound"] = {{"p", r.p},
                                 {"p_star", r.p_star},
                                 {"theta", r.theta},
                                 {"max_ratio", num(r.max_ratio)},
                                 {"max_small", num(r.max_small)},
                                 {"max_large", num(r.max_large)},
                                 {"points", r.points}};
  }
  o.grid = {{"h", h}, {"nx", field.nx}, {"ny", field.ny}, {"inside", field.inside_count()}};
  if (!c.csv.empty()) {
    std::string t = "x,y,f,sharp,best_radius\n";
    for (int j = 0; j < field.ny; ++j)
      for (int i = 0; i < field.nx; ++i) {
        if (!field.is_inside(i, j)) continue;
        const Point p = field.center(i, j);
        const std::size_t n = field.index(i, j);
        t += json(p.x).dump() + "," + json(p.y).dump() + "," + json(field.values[n]).dump() + "," +
             json(sharp.field.values[n]).dump() + "," + json(sharp.best_radius[n]).dump() + "\n";
      }
    write_text(c.csv, t);
  }
  if (!c.svg.empty()) {
    Svg svg(d.bounding_box());
    svg.field(sharp.field);
    svg.domain(d);
    svg.save(c.svg);
  }
  return o;
}

Outcome cmd_extend(const RunConfig& c, const PlanarDomain& d) {
  const FunctionSpec f = function_of(c);
  const double h = c.h > 0.0 ? c.h : 1.0 / 16.0;
  const ExtensionCheck r = extension_criterion(f, d, c.k, parse_q(c.q), h);
  Outcome o;
  o.result = {{"function", f.text()},
              {"k", r.k},
              {"q", num(r.q)},
              {"f_norm", num(r.f_norm)},
              {"sharp_norm", num(r.sharp_norm)},
              {"f_norm_fine", num(r.f_norm_fine)},
              {"sharp_norm_fine", num(r.sharp_norm_fine)},
              {"growth", num(r.growth)},
              {"sigma", num(r.sigma)},
              {"sigma_fine", num(r.sigma_fine)},
              {"stable", r.stable},
              {"extendable", r.extendable},
              {"verdict", r.verdict}};
  o.grid = {{"h", h}, {"h_fine", 0.5 * h}};
  o.exit_code = r.extendable ? 0 : 1;
  return o;
}

Outcome cmd_catalog(const RunConfig& c) {
  Outcome o;
  if (c.catalog_action == "list") {
    json rows = json::array();
    for (const std::string& name : catalog_names()) {
      const PlanarDomain d = catalog_domain(name);
      rows.push_back({{"name", name}, {"segments", d.segment_count()}, {"checksum", hex(domain_checksum(d))}});
    }
    o.result = {{"domains", rows}};
    return o;
  }
  if (c.catalog_action != "emit") throw UsageError("catalog expects 'list' or 'emit NAME'");
  need(c.catalog_name, "NAME");
  const PlanarDomain d = catalog_domain(c.catalog_name);
  o.result = {{"name", c.catalog_name}, {"checksum", hex(domain_checksum(d))}};
  if (c.out.empty()) o.result["domain"] = domain_to_json(d);
  else save_domain(d, c.out), o.result["path"] = c.out;
  return o;
}

const char* statement_of(const std::string& command) {
  if (command == "geodesic") return "subhyperbolic-distance";
  if (command == "certify") return "subhyperbolic-condition";
  if (command == "classify") return "planar-extension-characterization";
  if (command == "scan-alpha") return "critical-exponent";
  if (command == "selfimprove") return "exponent-self-improvement";
  if (command == "chain") return "cube-chain";
  if (command == "sharpmax") return "sharp-maximal-bound";
  if (command == "extend-check") return "sharp-maximal-extension-criterion";
  return "domain-catalog";
}

json config_json(const RunConfig& c) {
  json j = {{"command", c.command}};
  auto put = [&](const char* key, const json& v) { j[key] = v; };
  const std::string& m = c.command;
  if (m != "catalog") put("domain", c.domain);
  if (m == "geodesic" || m == "chain" || m == "selfimprove") {
    put("alpha", c.alpha), put("from", c.from), put("to", c.to), put("h", c.h), put("tol", c.tol);
    put("norm", c.norm);
  }
  if (m == "selfimprove") put("eps", c.eps), put("C", c.C);
  if (m == "certify" || m == "classify" || m == "scan-alpha") {
    put("theta", c.theta), put("budget", c.budget), put("scales", c.scales), put("top_k", c.top_k);
    put("eps_slope", c.eps_slope), put("norm", c.norm);
  }
  if (m == "certify") put("alpha", c.alpha);
  if (m == "classify") put("p", c.p);
  if (m == "scan-alpha") put("alphas", c.alphas);
  if (m == "sharpmax" || m == "extend-check") put("function", c.function), put("k", c.k), put("q", c.q), put("h", c.h);
  if (m == "sharpmax") put("cube", c.cube), put("p", c.p), put("theta", c.theta);
  if (m == "catalog") put("action", c.catalog_action), put("name", c.catalog_name);
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  c.p = 0.0;
  CLI::App app{"Subhyperbolic metrics, Sobolev extension checks and sharp maximal functions"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help and exit");
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* s, bool with_domain) {
    if (with_domain) s->add_option("--domain", c.domain, "catalog:NAME or a JSON domain file")->required();
    s->add_option("--seed", c.seed, "random seed");
    s->add_option("--report", c.report, "JSON report path (stdout when absent)");
    s->add_option("--svg", c.svg, "SVG figure path");
    s->add_option("--csv", c.csv, "CSV table path");
    s->add_option("--workers", c.workers, "worker threads (else SUBHYP_WORKERS or hardware)");
  };
  auto metric_flags = [&](CLI::App* s) {
    s->add_option("--from", c.from, "x,y")->required();
    s->add_option("--to", c.to, "x,y")->required();
    s->add_option("--h", c.h, "initial grid spacing (0 picks one)");
    s->add_option("--tol", c.tol, "relative refinement tolerance");
    s->add_option("--norm", c.norm, "uniform or euclidean");
  };
  auto certify_flags = [&](CLI::App* s) {
    s->add_option("--theta", c.theta, "largest scale (0 picks one)");
    s->add_option("--budget", c.budget, "pairs per scale");
    s->add_option("--scales", c.scales, "dyadic scales");
    s->add_option("--top-k", c.top_k, "pairs refined per scale");
    s->add_option("--eps-slope", c.eps_slope, "slope band");
    s->add_option("--norm", c.norm, "uniform or euclidean");
  };

  auto* geo = app.add_subcommand("geodesic", "subhyperbolic distance between two points");
  common(geo, true);
  geo->add_option("--alpha", c.alpha, "exponent in (0,1]")->required();
  metric_flags(geo);

  auto* cert = app.add_subcommand("certify", "test the subhyperbolic condition at one exponent");
  common(cert, true);
  cert->add_option("--alpha", c.alpha, "exponent in (0,1]")->required();
  certify_flags(cert);

  auto* cls = app.add_subcommand("classify", "planar Sobolev extension verdict for W^1_p");
  common(cls, true);
  cls->add_option("--p", c.p, "integrability exponent > 2")->required();
  certify_flags(cls);

  auto* scan = app.add_subcommand("scan-alpha", "bracket the critical exponent");
  common(scan, true);
  scan->add_option("--alphas", c.alphas, "ascending comma-separated grid");
  certify_flags(scan);

  auto* si = app.add_subcommand("selfimprove", "Cantor decomposition of a near-geodesic");
  common(si, true);
  si->add_option("--alpha", c.alpha, "exponent in (0,1)")->required();
  si->add_option("--eps", c.eps, "slack as a fraction of |x-y|");
  si->add_option("--C", c.C, "subhyperbolicity constant (0 measures it)");
  metric_flags(si);

  auto* ch = app.add_subcommand("chain", "Whitney cube chain along a near-geodesic");
  common(ch, true);
  ch->add_option("--alpha", c.alpha, "exponent of the guiding geodesic");
  metric_flags(ch);

  auto* sm = app.add_subcommand("sharpmax", "sharp maximal function of an analytic function");
  common(sm, true);
  sm->add_option("--function", c.function, "expression in x, y")->required();
  sm->add_option("--k", c.k, "smoothness order");
  sm->add_option("--q", c.q, "norm exponent or inf");
  sm->add_option("--h", c.h, "grid spacing");
  sm->add_option("--cube", c.cube, "cx,cy,r for a single local approximation");
  sm->add_option("--p", c.p, "also check the pointwise maximal bound for this p > 2");
  sm->add_option("--theta", c.theta, "radius split (0 picks diam/4)");

  auto* ext = app.add_subcommand("extend-check", "extension criterion by norm pairs at h and h/2");
  common(ext, true);
  ext->add_option("--function", c.function, "expression in x, y")->required();
  ext->add_option("--k", c.k, "smoothness order");
  ext->add_option("--q", c.q, "norm exponent > 1");
  ext->add_option("--h", c.h, "grid spacing");

  auto* cat = app.add_subcommand("catalog", "list or emit catalog domains");
  common(cat, false);
  cat->add_option("action", c.catalog_action, "list or emit")->required();
  cat->add_option("name", c.catalog_name, "domain name for emit");
  cat->add_option("--out", c.out, "domain file path for emit");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (c.workers > 0) set_worker_count(c.workers);

  json report = {{"command", c.command},
                 {"statement", statement_of(c.command)},
                 {"config", config_json(c)},
                 {"seed", c.seed}};
  int code = 0;
  auto emit = [&] {
    const std::string text = report.dump(2) + "\n";
    if (c.report.empty()) {
      out << text;
      return;
    }
    try {
      write_text(c.report, text);
    } catch (const Error& e) {
      err << e.what() << "\n";
      code = kExitNumeric;
    }
  };
  auto fail = [&](const Error& e, int exit_code) {
    report["status"] = "error";
    report["error"] = {{"name", std::string(e.name())}, {"message", e.what()}};
    if (e.value()) report["error"]["value"] = num(*e.value());
    code = exit_code;
    err << e.what() << "\n";
  };

  std::optional<PlanarDomain> domain;
  if (c.command != "catalog") {
    try {
      domain = load_domain(c.domain);
      report["domain"] = {{"name", domain->name()}, {"checksum", hex(domain_checksum(*domain))}};
    } catch (const Error& e) {
      fail(e, kExitDomain);
      emit();
      return code;
    }
  }

  try {
    Outcome o;
    if (c.command == "geodesic") o = cmd_geodesic(c, *domain);
    else if (c.command == "certify") o = cmd_certify(c, *domain);
    else if (c.command == "classify") o = cmd_classify(c, *domain);
    else if (c.command == "scan-alpha") o = cmd_scan(c, *domain);
    else if (c.command == "selfimprove") o = cmd_selfimprove(c, *domain);
    else if (c.command == "chain") o = cmd_chain(c, *domain);
    else if (c.command == "sharpmax") o = cmd_sharpmax(c, *domain);
    else if (c.command == "extend-check") o = cmd_extend(c, *domain);
    else o = cmd_catalog(c);
    report["status"] = "ok";
    report["result"] = std::move(o.result);
    report["grid"] = std::move(o.grid);
    code = o.exit_code;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    fail(e, e.code() == ErrorCode::InvalidDomain ? kExitDomain : kExitNumeric);
  }
  emit();
  return code;
}

}  // namespace subhyp::cli
