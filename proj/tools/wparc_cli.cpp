// Batch front-end: load a surface and coordinate data, run one computation or
// verification suite, and emit a structured result document.
//
// Exit codes: 0 success, 1 verification failure (a residual exceeded its
// tolerance), 2 input error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wparc/limit_structures.hpp"
#include "wparc/metrics.hpp"
#include "wparc/poisson.hpp"
#include "wparc/surface.hpp"
#include "wparc/twist.hpp"

using nlohmann::json;
using namespace wparc;

namespace {

constexpr const char* kSchemaVersion = "wparc-1";

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitInputError = 2;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": malformed JSON: " + e.what());
  }
  return j;
}

// Length/lambda files are maps arc-id -> value covering 0..A-1.
std::vector<double> load_value_map(const std::string& path, int arc_count,
                                   const std::string& what) {
  const json j = load_json_file(path);
  if (!j.is_object()) throw std::invalid_argument(path + ": " + what + " map must be an object");
  std::vector<double> v(arc_count, 0.0);
  std::vector<bool> seen(arc_count, false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    int id = -1;
    try {
      id = std::stoi(it.key());
    } catch (...) {
      throw std::invalid_argument(path + ": key '" + it.key() + "' is not an arc id");
    }
    if (id < 0 || id >= arc_count)
      throw std::invalid_argument(path + ": arc id " + it.key() + " out of range");
    v[id] = it.value().get<double>();
    seen[id] = true;
  }
  for (int i = 0; i < arc_count; ++i)
    if (!seen[i])
      throw std::invalid_argument(path + ": missing " + what + " for arc " + std::to_string(i));
  return v;
}

std::string format_double(double x) {
  std::ostringstream ss;
  ss.precision(17);
  ss << x;
  return ss.str();
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_to_csv(const Eigen::MatrixXd& m) {
  std::ostringstream ss;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) ss << (c ? "," : "") << format_double(m(r, c));
    ss << "\n";
  }
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output file " + out_path);
  out << text;
}

void emit_json(json doc, const std::string& out_path) {
  doc["schema"] = kSchemaVersion;
  emit(doc.dump(2) + "\n", out_path);
}

struct Options {
  std::string surface_path, lengths_path, lambda_path, scenario_path, out_path;
  std::string format = "json";
  double tol = 1e-10;
  bool tol_set = false;
  double fd_step = 1e-6;
  bool fd_step_set = false;
  std::vector<double> t_list = {1.0, 0.3, 0.1, 0.03, 0.01};
  std::uint64_t seed = 20240811;
  int sweep = 0;
  int arc = -1;
};

TriangulatedSurface require_surface(const Options& opt) {
  if (opt.surface_path.empty()) throw std::invalid_argument("--surface is required");
  return read_surface(opt.surface_path);
}

ArcLengthVector require_lengths(const Options& opt, const TriangulatedSurface& s) {
  if (opt.lengths_path.empty()) throw std::invalid_argument("--lengths is required");
  const ArcLengthVector a = load_value_map(opt.lengths_path, s.arc_count(), "length");
  check_positive_lengths(s, a);
  return a;
}

ArcLengthVector sweep_lengths(const TriangulatedSurface& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.4, 2.4);
  ArcLengthVector a(s.arc_count());
  for (double& x : a) x = u(rng);
  return a;
}

json lengths_to_json(const std::vector<double>& a) {
  json j = json::object();
  for (size_t i = 0; i < a.size(); ++i) j[std::to_string(i)] = a[i];
  return j;
}

int cmd_validate(const Options& opt) {
  const TriangulatedSurface s = require_surface(opt);
  const TopologyReport rep = s.validate();
  json doc;
  doc["command"] = "validate";
  doc["surface"] = s.name();
  doc["valid"] = rep.valid;
  doc["errors"] = rep.errors;
  if (rep.valid) {
    doc["genus"] = rep.genus;
    doc["boundary_components"] = rep.boundary_count;
    doc["euler_characteristic"] = rep.euler;
    doc["arc_count"] = rep.arc_count;
    json cycles = json::array();
    for (const BoundaryCycle& c : s.boundary_cycles()) {
      json feet = json::array();
      for (const OrientedArc& f : c.feet) feet.push_back(to_string(f));
      cycles.push_back(feet);
    }
    doc["boundary_cycles"] = cycles;
  }
  emit_json(doc, opt.out_path);
  return rep.valid ? kExitOk : kExitInputError;
}

int cmd_geom(const Options& opt) {
  const TriangulatedSurface s = require_surface(opt);
  const ArcLengthVector a = require_lengths(opt, s);
  const auto hexes = hexagon_geometry(s, a);
  const WidthVector wv = widths(s, a);
  const BoundaryGeometry geo = boundary_geometry(s, a);
  const std::vector<double> sv = s_lengths(a);

  json doc;
  doc["command"] = "geom";
  doc["surface"] = s.name();
  doc["s_lengths"] = sv;
  json hj = json::array();
  for (size_t h = 0; h < hexes.size(); ++h) {
    json one;
    one["b"] = hexes[h].b;
    one["half_widths"] = hexes[h].w;
    one["cos_gamma"] = hexes[h].cos_gamma;
    hj.push_back(one);
  }
  doc["hexagons"] = hj;
  doc["widths"] = wv.total;
  doc["boundary_lengths"] = geo.lengths;
  json cj = json::array();
  for (size_t c = 0; c < geo.cycles.size(); ++c) {
    json one;
    json feet = json::array(), pos = json::array(), seg = json::array();
    for (size_t k = 0; k < geo.cycles[c].feet.size(); ++k) {
      feet.push_back(to_string(geo.cycles[c].feet[k]));
      pos.push_back(geo.foot_position[c][k]);
      seg.push_back(geo.segment[c][k]);
    }
    one["feet"] = feet;
    one["positions"] = pos;
    one["segments"] = seg;
    json dtable = json::array();
    for (size_t i = 0; i < geo.cycles[c].feet.size(); ++i) {
      json row = json::array();
      for (size_t k = 0; k < geo.cycles[c].feet.size(); ++k)
        row.push_back(i == k ? 0.0
                             : geo.circular_distance(geo.cycles[c].feet[i], geo.cycles[c].feet[k]));
      dtable.push_back(row);
    }
    one["distances"] = dtable;
    cj.push_back(one);
  }
  doc["cycles"] = cj;
  emit_json(doc, opt.out_path);
  return kExitOk;
}

int cmd_poisson(const Options& opt) {
  const TriangulatedSurface s = require_surface(opt);
  const ArcLengthVector a = require_lengths(opt, s);
  const Eigen::MatrixXd h = wp_bivector(s, a);
  if (opt.format == "csv") {
    emit(matrix_to_csv(h), opt.out_path);
  } else {
    json doc;
    doc["command"] = "poisson";
    doc["surface"] = s.name();
    doc["matrix"] = matrix_to_json(h);
    emit_json(doc, opt.out_path);
  }
  return kExitOk;
}

int cmd_casimir(const Options& opt) {
  const TriangulatedSurface s = require_surface(opt);
  const double tol = opt.tol_set ? opt.tol : 1e-7;
  std::mt19937_64 rng(opt.seed);

  std::vector<ArcLengthVector> samples;
  if (!opt.lengths_path.empty()) samples.push_back(require_lengths(opt, s));
  for (int k = 0; k < opt.sweep; ++k) samples.push_back(sweep_lengths(s, rng));
  if (samples.empty()) throw std::invalid_argument("casimir: give --lengths and/or --sweep N");

  json runs = json::array();
  bool ok = true;
  for (const ArcLengthVector& a : samples) {
    const Eigen::MatrixXd h = wp_bivector(s, a);
    const int cycles = static_cast<int>(boundary_geometry(s, a).lengths.size());
    json per = json::array();
    for (int c = 0; c < cycles; ++c) {
      const double res = casimir_residual(s, a, c, opt.fd_step);
      const Eigen::VectorXd grad = boundary_length_gradient(s, a, c, opt.fd_step);
      const double scale =
          std::max(1.0, h.lpNorm<Eigen::Infinity>() * grad.lpNorm<Eigen::Infinity>());
      const bool pass = res <= tol * scale;
      ok &= pass;
      per.push_back({{"component", c},
                     {"residual", res},
                     {"relative", res / scale},
                     {"pass", pass}});
    }
    runs.push_back({{"lengths", lengths_to_json(a)}, {"components", per}});
  }
  json doc;
  doc["command"] = "casimir";
  doc["surface"] = s.name();
  doc["tolerance"] = tol;
  doc["fd_step"] = opt.fd_step;
  doc["seed"] = opt.seed;
  doc["rng"] = "mt19937_64";
  doc["runs"] = runs;
  doc["pass"] = ok;
  emit_json(doc, opt.out_path);
  return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_jacobi(const Options& opt) {
  const TriangulatedSurface s = require_surface(opt);
  const double tol = opt.tol_set ? opt.tol : 1e-5;
  const double step = opt.fd_step_set ? opt.fd_step : 1e-5;  // second-level default
  std::mt19937_64 rng(opt.seed);

  std::vector<ArcLengthVector> samples;
  if (!opt.lengths_path.empty()) samples.push_back(require_lengths(opt, s));
  for (int k = 0; k < opt.sweep; ++k) samples.push_back(sweep_lengths(s, rng));
  if (samples.empty()) throw std::invalid_argument("jacobi: give --lengths and/or --sweep N");

  json runs = json::array();
  bool ok = true;
  const int n = s.arc_count();
  for (const ArcLengthVector& a : samples) {
    json per = json::array();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          const double res = jacobi_residual(s, a, i, j, k, step);
          const bool pass = res <= tol;
          ok &= pass;
          per.push_back({{"triple", {i, j, k}}, {"residual", res}, {"pass", pass}});
        }
    runs.push_back({{"lengths", lengths_to_json(a)}, {"triples", per}});
  }
  json doc;
  doc["command"] = "jacobi";
  doc["surface"] = s.name();
  doc["tolerance"] = tol;
  doc["fd_step"] = step;
  doc["seed"] = opt.seed;
  doc["rng"] = "mt19937_64";
  doc["runs"] = runs;
  doc["pass"] = ok;
  emit_json(doc, opt.out_path);
  return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_limit(const Options& opt) {
  const TriangulatedSurface s = require_surface(opt);
  const ArcLengthVector a0 = require_lengths(opt, s);
  const auto rows = large_boundary_limit_study(s, a0, opt.t_list, opt.fd_step);
  if (opt.format == "csv") {
    std::ostringstream ss;
    ss << "t,delta\n";
    for (const auto& r : rows)
      ss << format_double(r.t) << "," << format_double(r.deviation) << "\n";
    emit(ss.str(), opt.out_path);
  } else {
    json rj = json::array();
    for (const auto& r : rows) rj.push_back({{"t", r.t}, {"delta", r.deviation}});
    json doc;
    doc["command"] = "limit-kontsevich";
    doc["surface"] = s.name();
    doc["rows"] = rj;
    emit_json(doc, opt.out_path);
  }
  if (opt.tol_set && !rows.empty() && rows.back().deviation > opt.tol)
    return kExitVerificationFailed;
  return kExitOk;
}

int cmd_duality(const Options& opt) {
  const TriangulatedSurface s = require_surface(opt);
  if (opt.lambda_path.empty()) throw std::invalid_argument("penner-duality: --lambda is required");
  const LambdaVector lambda = load_value_map(opt.lambda_path, s.arc_count(), "lambda");
  for (double l : lambda)
    if (!(l > 0.0)) throw std::invalid_argument("lambda lengths must be positive");
  const double tol = opt.tol_set ? opt.tol : 1e-7;
  const double res = duality_residual({s, lambda}, opt.fd_step);
  json doc;
  doc["command"] = "penner-duality";
  doc["surface"] = s.name();
  doc["residual"] = res;
  doc["tolerance"] = tol;
  doc["pass"] = res <= tol;
  emit_json(doc, opt.out_path);
  return res <= tol ? kExitOk : kExitVerificationFailed;
}

int cmd_twist(const Options& opt) {
  if (opt.scenario_path.empty()) throw std::invalid_argument("twist: --scenario is required");
  const json j = load_json_file(opt.scenario_path);
  TwistScenario sc;
  try {
    sc.h = j.at("h").get<double>();
    for (const json& it : j.value("intersections", json::array())) {
      IntersectionDatum d;
      d.target = it.value("target", 1);
      d.nu = it.value("nu", kPi / 2);
      d.d = it.value("d", 0.0);
      d.closed = it.value("closed", false);
      d.p = it.value("p", 0.0);
      d.r_wind = it.value("r_wind", 0);
      d.homotopic_to_delta = it.value("homotopic_to_delta", false);
      sc.items.push_back(d);
    }
    for (const json& z : j.value("distant", json::array()))
      sc.distant.push_back({z.at("alpha").get<double>()});
  } catch (const json::exception& e) {
    throw std::invalid_argument(opt.scenario_path + ": " + e.what());
  }
  check_scenario(sc);

  json doc;
  doc["command"] = "twist";
  doc["dh_dtau"] = twist_derivative_distance(sc);
  json per = json::array();
  for (const IntersectionDatum& it : sc.items) per.push_back(coefficient_c(it, sc.h));
  doc["coefficients"] = per;
  emit_json(doc, opt.out_path);
  return kExitOk;
}

int cmd_flip(const Options& opt) {
  const TriangulatedSurface s = require_surface(opt);
  const ArcLengthVector a = require_lengths(opt, s);
  if (opt.arc < 0) throw std::invalid_argument("flip: --arc is required");
  const FlipResult res = flip_length(s, a, opt.arc);
  json doc;
  doc["command"] = "flip";
  doc["arc"] = opt.arc;
  doc["surface"] = json::parse(serialize_surface(res.surface));
  doc["lengths"] = lengths_to_json(res.lengths);
  emit_json(doc, opt.out_path);
  return kExitOk;
}

int cmd_spine(const Options& opt) {
  const TriangulatedSurface s = require_surface(opt);
  const ArcLengthVector a = require_lengths(opt, s);
  const SpineSearchResult res = find_spine_triangulation(s, a);
  json doc;
  doc["command"] = "spine";
  doc["flips"] = res.flips;
  doc["surface"] = json::parse(serialize_surface(res.surface));
  doc["lengths"] = lengths_to_json(res.lengths);
  doc["widths"] = widths(res.surface, res.lengths).total;
  emit_json(doc, opt.out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weil-Petersson Poisson structure of bordered hyperbolic surfaces "
               "in arc-length coordinates"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--surface", opt.surface_path, "surface file (JSON)");
  app.add_option("--lengths", opt.lengths_path, "arc lengths file (JSON map id -> value)");
  app.add_option("--lambda", opt.lambda_path, "lambda lengths file (JSON map id -> value)");
  app.add_option("--scenario", opt.scenario_path, "twist scenario file (JSON)");
  app.add_option("--tol", opt.tol, "tolerance override")->each([&](const std::string&) {
    opt.tol_set = true;
  });
  app.add_option("--fd-step", opt.fd_step, "finite-difference relative step")
      ->each([&](const std::string&) { opt.fd_step_set = true; });
  app.add_option("--t-list", opt.t_list, "scale sweep (strictly decreasing)")->delimiter(',');
  app.add_option("--seed", opt.seed, "random seed for sweeps");
  app.add_option("--sweep", opt.sweep, "number of random length vectors");
  app.add_option("--arc", opt.arc, "arc id (flip)");
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", opt.out_path, "write output to file instead of stdout");

  const auto sub = [&](const char* name, const char* desc) { return app.add_subcommand(name, desc); };
  CLI::App* c_validate = sub("validate", "topology report");
  CLI::App* c_geom = sub("geom", "s/b/w/angle and boundary geometry dump");
  CLI::App* c_poisson = sub("poisson", "Weil-Petersson bracket matrix");
  CLI::App* c_casimir = sub("casimir", "boundary lengths as Casimirs");
  CLI::App* c_jacobi = sub("jacobi", "Jacobi identity residuals");
  CLI::App* c_limit = sub("limit-kontsevich", "large-boundary deviation table");
  CLI::App* c_duality = sub("penner-duality", "decorated duality residual");
  CLI::App* c_twist = sub("twist", "twist-derivative scenario evaluation");
  CLI::App* c_flip = sub("flip", "geometric flip of one arc");
  CLI::App* c_spine = sub("spine", "flip search for the spine triangulation");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_validate->parsed()) return cmd_validate(opt);
    if (c_geom->parsed()) return cmd_geom(opt);
    if (c_poisson->parsed()) return cmd_poisson(opt);
    if (c_casimir->parsed()) return cmd_casimir(opt);
    if (c_jacobi->parsed()) return cmd_jacobi(opt);
    if (c_limit->parsed()) return cmd_limit(opt);
    if (c_duality->parsed()) return cmd_duality(opt);
    if (c_twist->parsed()) return cmd_twist(opt);
    if (c_flip->parsed()) return cmd_flip(opt);
    if (c_spine->parsed()) return cmd_spine(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
  return kExitInputError;
}
