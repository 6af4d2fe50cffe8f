#include "gflat/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "gflat/affinity.hpp"
#include "gflat/corpus.hpp"
#include "gflat/curvature.hpp"
#include "gflat/error.hpp"
#include "gflat/field.hpp"
#include "gflat/rigidity.hpp"
#include "gflat/serialize.hpp"
#include "gflat/suites.hpp"

namespace gflat {

namespace {

struct RunConfig {
  std::string field_expr;
  std::string grid_path;
  int dim = 0;
  std::vector<double> box;     // [lo,hi] for all axes, or 2n per-axis bounds
  std::vector<double> point;
  std::vector<double> direction;
  int degree = 4;
  std::string signature = "euclidean";
  std::string quantity;
  std::vector<double> center;
  std::vector<double> radii;
  std::vector<double> region;  // same convention as box
  std::int64_t sphere_samples = 4096;
  std::int64_t region_samples = 4096;
  long long seed = -1;  // sampled subcommands require an explicit seed
  std::string format = "json";
  std::string suite;
  int trials = 100;
  bool serial = false;
  double step = 0.0;
  std::string points_file;
  std::string config_path;
  Tolerances tol;
};

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  Eigen::VectorXd out(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = v[i];
  return out;
}

Box make_box(const std::vector<double>& spec, int dim, double fallback_half_width) {
  if (spec.empty()) return Box::cube(dim, fallback_half_width);
  if (spec.size() == 2) {
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(dim, spec[0]);
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(dim, spec[1]);
    return Box::from_bounds(lo, hi);
  }
  if (static_cast<int>(spec.size()) == 2 * dim) {
    Eigen::VectorXd lo(dim), hi(dim);
    for (int i = 0; i < dim; ++i) {
      lo[i] = spec[static_cast<std::size_t>(2 * i)];
      hi[i] = spec[static_cast<std::size_t>(2 * i + 1)];
    }
    return Box::from_bounds(lo, hi);
  }
  throw std::invalid_argument("box needs 2 values (all axes) or 2*dim values");
}

// The --config document overrides flags (explicitness wins over
// whatever was typed).
void apply_config(RunConfig& cfg) {
  if (cfg.config_path.empty()) return;
  std::ifstream in(cfg.config_path);
  if (!in) throw std::invalid_argument("cannot open config file '" + cfg.config_path + "'");
  nlohmann::json doc = nlohmann::json::parse(in);

  auto load_doubles = [&](const char* key, std::vector<double>& target) {
    if (doc.contains(key)) target = doc[key].get<std::vector<double>>();
  };
  if (doc.contains("field")) cfg.field_expr = doc["field"].get<std::string>();
  if (doc.contains("grid")) cfg.grid_path = doc["grid"].get<std::string>();
  if (doc.contains("dim")) cfg.dim = doc["dim"].get<int>();
  load_doubles("box", cfg.box);
  load_doubles("point", cfg.point);
  load_doubles("direction", cfg.direction);
  if (doc.contains("degree")) cfg.degree = doc["degree"].get<int>();
  if (doc.contains("signature")) cfg.signature = doc["signature"].get<std::string>();
  if (doc.contains("quantity")) cfg.quantity = doc["quantity"].get<std::string>();
  load_doubles("center", cfg.center);
  load_doubles("radii", cfg.radii);
  load_doubles("region", cfg.region);
  if (doc.contains("sphere_samples")) cfg.sphere_samples = doc["sphere_samples"].get<std::int64_t>();
  if (doc.contains("region_samples")) cfg.region_samples = doc["region_samples"].get<std::int64_t>();
  if (doc.contains("seed")) cfg.seed = doc["seed"].get<long long>();
  if (doc.contains("format")) cfg.format = doc["format"].get<std::string>();
  if (doc.contains("suite")) cfg.suite = doc["suite"].get<std::string>();
  if (doc.contains("trials")) cfg.trials = doc["trials"].get<int>();
  if (doc.contains("serial")) cfg.serial = doc["serial"].get<bool>();
  if (doc.contains("step")) cfg.step = doc["step"].get<double>();
  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    auto load = [&](const char* key, double& target) {
      if (t.contains(key)) target = t[key].get<double>();
    };
    load("tau_light", cfg.tol.tau_light);
    load("tau_ker", cfg.tol.tau_ker);
    load("tau_aff", cfg.tol.tau_aff);
    load("tau_lem", cfg.tol.tau_lem);
    load("tau_id", cfg.tol.tau_id);
    load("eps_decay", cfg.tol.eps_decay);
    load("eps_conclusion", cfg.tol.eps_conclusion);
    load("eps_developable", cfg.tol.eps_developable);
    load("eps_convex", cfg.tol.eps_convex);
    load("step_fraction", cfg.tol.step_fraction);
    load("endpoint_fraction", cfg.tol.endpoint_fraction);
  }
}

void validate_tolerances(const Tolerances& t) {
  const double values[] = {t.tau_light, t.tau_ker,        t.tau_aff,
                           t.tau_lem,   t.tau_id,         t.eps_decay,
                           t.eps_conclusion, t.eps_developable, t.eps_convex,
                           t.step_fraction,  t.endpoint_fraction};
  for (double v : values)
    if (!(v > 0.0)) throw std::invalid_argument("all tolerances must be positive");
}

ScalarField load_field(const RunConfig& cfg) {
  if (!cfg.field_expr.empty() && !cfg.grid_path.empty())
    throw std::invalid_argument("give either --field or --grid, not both");
  if (!cfg.field_expr.empty()) {
    if (cfg.dim < 1) throw std::invalid_argument("--field requires --dim");
    ExprPtr expr = parse_expression(cfg.field_expr, cfg.dim);
    return ScalarField::analytic(std::move(expr), cfg.dim, make_box(cfg.box, cfg.dim, 1e6));
  }
  if (!cfg.grid_path.empty()) {
    ScalarField field = ScalarField::from_grid(read_grid_csv_file(cfg.grid_path));
    if (!cfg.box.empty()) field = field.with_domain(make_box(cfg.box, field.dim(), 0.0));
    return field;
  }
  throw std::invalid_argument("a field is required: --field EXPR or --grid FILE");
}

std::uint64_t require_seed(const RunConfig& cfg) {
  if (cfg.seed < 0)
    throw std::invalid_argument("--seed is mandatory for sampled computations");
  return static_cast<std::uint64_t>(cfg.seed);
}

Eigen::VectorXd require_point(const RunConfig& cfg, int dim) {
  if (static_cast<int>(cfg.point.size()) != dim)
    throw std::invalid_argument("--point must have exactly dim components");
  return to_vector(cfg.point);
}

void emit_jet(JsonBuilder& json, const Jet& jet) {
  json.begin_object();
  json.key("base").vector(jet.base);
  json.key("direction").vector(jet.direction);
  json.key("degree").value(jet.degree);
  json.key("derivs").begin_array();
  for (int k = 0; k <= jet.degree; ++k) json.value(jet.derivs[static_cast<std::size_t>(k)]);
  json.end_array();
  json.end_object();
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  ScalarField field = load_field(cfg);
  const Eigen::VectorXd x = require_point(cfg, field.dim());
  PointJet2 j = jet2_at(field, x);

  JsonBuilder json;
  json.begin_object();
  json.key("point").vector(x);
  json.key("value").value(j.value);
  json.key("gradient").vector(j.gradient);
  json.key("hessian").matrix_row_major(j.hessian);
  json.key("jet");
  if (!cfg.direction.empty()) {
    if (static_cast<int>(cfg.direction.size()) != field.dim())
      throw std::invalid_argument("--direction must have exactly dim components");
    emit_jet(json, directional_jet(field, x, to_vector(cfg.direction), cfg.degree));
  } else {
    json.null();
  }
  json.end_object();
  out << json.str() << "\n";
  return 0;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  ScalarField field = load_field(cfg);
  Signature sig;
  if (cfg.signature == "euclidean") sig = Signature::euclidean;
  else if (cfg.signature == "minkowski") sig = Signature::minkowski;
  else throw std::invalid_argument("--signature must be euclidean or minkowski");

  std::vector<Eigen::VectorXd> points;
  if (!cfg.points_file.empty()) {
    std::ifstream in(cfg.points_file);
    if (!in) throw std::invalid_argument("cannot open points file '" + cfg.points_file + "'");
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
      std::vector<double> coords;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) coords.push_back(std::stod(cell));
      if (static_cast<int>(coords.size()) != field.dim())
        throw std::invalid_argument("points file row does not match dim");
      points.push_back(to_vector(coords));
    }
  } else {
    points.push_back(require_point(cfg, field.dim()));
  }

  if (cfg.format == "csv") {
    out << curvature_csv_header(field.dim()) << "\n";
    for (const auto& x : points)
      out << to_csv_row(curvature_report(field, x, sig, cfg.tol.tau_light)) << "\n";
  } else if (cfg.format == "json") {
    if (points.size() == 1) {
      out << to_json(curvature_report(field, points[0], sig, cfg.tol.tau_light)) << "\n";
    } else {
      out << "[";
      for (std::size_t i = 0; i < points.size(); ++i)
        out << (i ? "," : "")
            << to_json(curvature_report(field, points[i], sig, cfg.tol.tau_light));
      out << "]\n";
    }
  } else {
    throw std::invalid_argument("report supports --format json or csv");
  }
  return 0;
}

int cmd_rulings(const RunConfig& cfg, std::ostream& out) {
  ScalarField field = load_field(cfg);
  const Eigen::VectorXd x = require_point(cfg, field.dim());
  const double step = cfg.step > 0.0
                          ? cfg.step
                          : cfg.tol.step_fraction * field.domain().diameter();

  std::vector<Eigen::VectorXd> kernel = hessian_kernel(field, x, cfg.tol.tau_ker);
  std::vector<RulingSegment> segments;
  segments.reserve(kernel.size());
  for (const auto& gamma : kernel)
    segments.push_back(trace_ruling(field, x, gamma, step, cfg.tol));

  if (cfg.format == "polyline") {
    for (const auto& s : segments) out << polyline_row(s) << "\n";
  } else if (cfg.format == "json") {
    std::ostringstream assembled;
    assembled << "{\"point\":";
    JsonBuilder pt;
    pt.vector(x);
    assembled << pt.str() << ",\"kernel_directions\":[";
    for (std::size_t i = 0; i < kernel.size(); ++i) {
      JsonBuilder k;
      k.vector(kernel[i]);
      assembled << (i ? "," : "") << k.str();
    }
    assembled << "],\"rulings\":[";
    for (std::size_t i = 0; i < segments.size(); ++i)
      assembled << (i ? "," : "") << to_json(segments[i]);
    assembled << "]}";
    out << assembled.str() << "\n";
  } else {
    throw std::invalid_argument("rulings supports --format json or polyline");
  }
  return 0;
}

int cmd_rigidity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  ScalarField field = load_field(cfg);
  const int dim = field.dim();
  const std::uint64_t seed = require_seed(cfg);
  auto quantity = quantity_from_name(cfg.quantity);
  if (!quantity)
    throw std::invalid_argument(
        "--quantity must be one of laplacian, mean-euclidean, mean-minkowski-tilde, "
        "mean-minkowski");
  if (cfg.radii.empty()) throw std::invalid_argument("--radii is required");

  Eigen::VectorXd center = cfg.center.empty() ? Eigen::VectorXd::Zero(dim).eval()
                                              : to_vector(cfg.center);
  if (center.size() != dim) throw std::invalid_argument("--center must match dim");
  Box region = cfg.region.empty() ? field.domain() : make_box(cfg.region, dim, 0.0);

  Verdict v = rigidity_verdict(field, *quantity, center, cfg.radii, region,
                               cfg.sphere_samples, cfg.region_samples, seed, cfg.tol,
                               cfg.serial ? Exec::serial : Exec::parallel);

  if (cfg.format == "csv") {
    if (v.profile) {
      out << profile_csv(*v.profile);
    } else {
      err << "no decay profile was computed (verdict: " << outcome_name(v.outcome)
          << "); emitting JSON\n";
      out << to_json(v) << "\n";
    }
  } else if (cfg.format == "json") {
    out << to_json(v) << "\n";
  } else {
    throw std::invalid_argument("rigidity supports --format json or csv");
  }
  return v.outcome == Outcome::hyperplane_consistent ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const std::uint64_t seed = require_seed(cfg);
  const Exec exec = cfg.serial ? Exec::serial : Exec::parallel;

  SuiteResult result;
  if (cfg.suite == "remark-formulas") result = suite_remark_formulas(seed);
  else if (cfg.suite == "example11-regression") result = suite_example11_regression(seed, exec);
  else if (cfg.suite == "euclid-identity") result = suite_euclid_identity(cfg.trials, seed);
  else if (cfg.suite == "lemma") result = suite_lemma(seed);
  else if (cfg.suite == "decay-profiles") result = suite_decay_profiles(seed, exec);
  else if (cfg.suite == "falsification") result = suite_falsification(cfg.trials / 2, seed, exec);
  else if (cfg.suite == "fd-oracle") result = suite_fd_oracle(seed);
  else if (cfg.suite == "grid-parity") result = suite_grid_parity(seed);
  else
    throw std::invalid_argument(
        "--suite must be one of remark-formulas, example11-regression, euclid-identity, "
        "lemma, decay-profiles, falsification, fd-oracle, grid-parity");

  out << "suite " << result.name << "\n";
  for (const auto& check : result.checks) {
    out << "  [" << (check.passed ? "PASS" : "FAIL") << "] " << check.label << ": observed "
        << format_number(check.observed) << " vs bound " << format_number(check.bound)
        << "\n";
  }
  out << "result: " << (result.passed ? "PASS" : "FAIL") << "\n";
  return result.passed ? 0 : 1;
}

int cmd_corpus(const RunConfig& cfg, std::ostream& out) {
  (void)cfg;
  std::ostringstream assembled;
  assembled << "[";
  bool first = true;
  for (const auto& entry : corpus::default_entries()) {
    JsonBuilder json;
    json.begin_object();
    json.key("name").value(entry.name);
    json.key("dim").value(entry.field.dim());
    json.key("convex").value(entry.convex);
    json.key("developable").value(entry.developable);
    json.key("affine").value(entry.affine);
    json.key("spacelike").value(entry.spacelike);
    json.key("domain_lo").vector(entry.field.domain().lo);
    json.key("domain_hi").vector(entry.field.domain().hi);
    json.key("has_excluded_set").value(!entry.field.excluded().empty());
    json.end_object();
    assembled << (first ? "" : ",") << json.str();
    first = false;
  }
  assembled << "]";
  out << assembled.str() << "\n";
  return 0;
}

void add_field_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--field", cfg.field_expr, "analytic field expression (variables x1..xn)");
  cmd->add_option("--grid", cfg.grid_path, "grid CSV file");
  cmd->add_option("--dim", cfg.dim, "field dimension (required with --field)");
  cmd->add_option("--box", cfg.box,
                  "domain box: lo,hi for all axes or lo1,hi1,lo2,hi2,...")
      ->delimiter(',');
  cmd->add_option("--config", cfg.config_path, "RunConfig JSON overriding flags");
}

void add_tolerance_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--tau-light", cfg.tol.tau_light, "lightlike band half-width");
  cmd->add_option("--tau-ker", cfg.tol.tau_ker, "Hessian kernel threshold");
  cmd->add_option("--tau-aff", cfg.tol.tau_aff, "affinity residual tolerance");
  cmd->add_option("--tau-lem", cfg.tol.tau_lem, "lemma residual tolerance");
  cmd->add_option("--tau-id", cfg.tol.tau_id, "identity residual tolerance");
  cmd->add_option("--eps-decay", cfg.tol.eps_decay, "decay acceptance threshold");
  cmd->add_option("--eps-conclusion", cfg.tol.eps_conclusion, "conclusion flatness threshold");
  cmd->add_option("--eps-developable", cfg.tol.eps_developable, "max |det D2u| allowed");
  cmd->add_option("--eps-convex", cfg.tol.eps_convex, "convexity slack");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"differential geometry of graphical hypersurfaces: curvature reports, "
               "ruling extraction and decay-based rigidity verdicts"};
  app.require_subcommand(1);

  CLI::App* eval = app.add_subcommand("eval", "value, gradient, Hessian and optional jet");
  add_field_options(eval, cfg);
  eval->add_option("--point", cfg.point, "evaluation point")->delimiter(',');
  eval->add_option("--direction", cfg.direction, "jet direction")->delimiter(',');
  eval->add_option("--degree", cfg.degree, "jet degree (<= 4)");

  CLI::App* report = app.add_subcommand("report", "per-point curvature report");
  add_field_options(report, cfg);
  add_tolerance_options(report, cfg);
  report->add_option("--point", cfg.point, "report point")->delimiter(',');
  report->add_option("--points-file", cfg.points_file, "CSV file of points, one per line");
  report->add_option("--signature", cfg.signature, "euclidean or minkowski");
  report->add_option("--format", cfg.format, "json or csv");

  CLI::App* rulings = app.add_subcommand("rulings", "trace rulings through a point");
  add_field_options(rulings, cfg);
  add_tolerance_options(rulings, cfg);
  rulings->add_option("--point", cfg.point, "base point")->delimiter(',');
  rulings->add_option("--step", cfg.step, "trace step (default 1e-2 x domain diameter)");
  rulings->add_option("--format", cfg.format, "json or polyline");

  CLI::App* rigidity = app.add_subcommand("rigidity", "hypothesis scans, decay profile and verdict");
  add_field_options(rigidity, cfg);
  add_tolerance_options(rigidity, cfg);
  rigidity->add_option("--quantity", cfg.quantity,
                       "laplacian, mean-euclidean, mean-minkowski-tilde or mean-minkowski");
  rigidity->add_option("--center", cfg.center, "sphere center (default origin)")->delimiter(',');
  rigidity->add_option("--radii", cfg.radii, "strictly increasing radius schedule")
      ->delimiter(',');
  rigidity->add_option("--region", cfg.region, "scan region (default: whole domain)")
      ->delimiter(',');
  rigidity->add_option("--sphere-samples", cfg.sphere_samples, "samples per sphere");
  rigidity->add_option("--region-samples", cfg.region_samples, "samples per region scan");
  rigidity->add_option("--seed", cfg.seed, "sampling seed (mandatory)");
  rigidity->add_flag("--serial", cfg.serial, "run scans on the serial reference path");
  rigidity->add_option("--format", cfg.format, "json or csv (profile only)");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", cfg.suite, "suite name")->required();
  verify->add_option("--trials", cfg.trials, "trial count for randomized suites");
  verify->add_option("--seed", cfg.seed, "sampling seed (mandatory)");
  verify->add_flag("--serial", cfg.serial, "run scans on the serial reference path");
  verify->add_option("--config", cfg.config_path, "RunConfig JSON overriding flags");

  CLI::App* corpus_cmd = app.add_subcommand("corpus", "list the built-in fields");
  corpus_cmd->add_option("--config", cfg.config_path, "RunConfig JSON overriding flags");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    apply_config(cfg);
    validate_tolerances(cfg.tol);
    if (eval->parsed()) return cmd_eval(cfg, out);
    if (report->parsed()) return cmd_report(cfg, out);
    if (rulings->parsed()) return cmd_rulings(cfg, out);
    if (rigidity->parsed()) return cmd_rigidity(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (corpus_cmd->parsed()) return cmd_corpus(cfg, out);
    err << "usage error: no subcommand\n";
    return 2;
  } catch (const ParseError& e) {
    err << "field parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "evaluation error: " << e.what() << "\n";
    return 3;
  } catch (const PreconditionError& e) {
    err << "numerical precondition failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace gflat
