// sig2d command-line tool: field scans, verification, geodesics, radical
// reports, trapping runs, seam reports

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sig2d/verify.hpp"

namespace {

using namespace sig2d;

struct CommonOpts {
  std::string model = "rotating";
  std::string f_expr;
  std::string v_expr;  // "EXPR,EXPR"
  std::string topology = "plane";
  std::string window = "-1,1,-1,1";
  int grid_n = 41;
  std::uint64_t seed = 1;
  std::string out;
  std::string svg;
  double tol_deg = kDefaultTolDeg;
  double dlambda = kDefaultGeodesicStep;
  double lambda_max = 10.0;
  std::string config;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  // config values are injected as leading arguments; explicit flags override
  cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--model", o.model, "flat|rotating|crosscap|transformed")
      ->check(CLI::IsMember({"flat", "rotating", "crosscap", "transformed"}));
  cmd->add_option("--f", o.f_expr, "scalar expression for the transformed model");
  cmd->add_option("--V", o.v_expr, "vector field components EXPR,EXPR");
  cmd->add_option("--topology", o.topology, "plane|mobius-inf|mobius-compact|rp2")
      ->check(CLI::IsMember({"plane", "mobius-inf", "mobius-compact", "rp2"}));
  cmd->add_option("--window", o.window, "tmin,tmax,xmin,xmax");
  cmd->add_option("--grid", o.grid_n, "grid points per axis")->check(CLI::Range(8, 4096));
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--out", o.out, "output path (CSV or JSON)");
  cmd->add_option("--svg", o.svg, "SVG figure path");
  cmd->add_option("--tol-deg", o.tol_deg, "degeneracy tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--dlambda", o.dlambda, "integrator step")->check(CLI::PositiveNumber);
  cmd->add_option("--lambda-max", o.lambda_max, "integration length")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--config", o.config, "key=value file; keys are flag names")
      ->check(CLI::ExistingFile);
}

// Flat key=value config: each key is a long flag name. The file's entries
// are expanded into arguments placed before the real command line, so
// explicit flags take precedence via the take-last policy.
std::vector<std::string> expand_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  std::vector<std::string> args;
  std::string line;
  while (std::getline(in, line)) {
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    size_t e = line.find_last_not_of(" \t\r");
    std::string entry = line.substr(b, e - b + 1);
    size_t eq = entry.find('=');
    if (eq == std::string::npos || eq == 0)
      throw CLI::ValidationError("--config", "expected key=value, got: " + entry);
    auto trim = [](std::string s) {
      size_t lo = s.find_first_not_of(" \t");
      size_t hi = s.find_last_not_of(" \t");
      return lo == std::string::npos ? std::string() : s.substr(lo, hi - lo + 1);
    };
    std::string key = trim(entry.substr(0, eq)), value = trim(entry.substr(eq + 1));
    if (key.empty())
      throw CLI::ValidationError("--config", "expected key=value, got: " + entry);
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

Rect parse_window(const std::string& s) {
  Rect w{};
  if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf", &w.t_min, &w.t_max, &w.x_min, &w.x_max) != 4 ||
      w.t_min >= w.t_max || w.x_min >= w.x_max)
    throw CLI::ValidationError("--window", "expected tmin,tmax,xmin,xmax with nonempty ranges");
  return w;
}

std::pair<std::string, std::string> split_pair(const std::string& s) {
  // split on the top-level comma (component expressions may contain none)
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
  }
  throw CLI::ValidationError("--V", "expected two comma-separated expressions");
}

VectorField make_vector_field(const CommonOpts& o) {
  if (o.v_expr.empty()) return VectorField::rotating_unit_timelike();
  auto [a, b] = split_pair(o.v_expr);
  return VectorField(ScalarField::parse(a), ScalarField::parse(b));
}

MetricField make_metric(const CommonOpts& o) {
  if (o.model == "flat") return MetricField::flat();
  if (o.model == "rotating") return MetricField::rotating();
  if (o.model == "crosscap") return MetricField::crosscap_quadratic();
  if (o.f_expr.empty())
    throw CLI::ValidationError("--f", "the transformed model needs a scalar expression");
  return MetricField::transformed(MetricField::rotating(), ScalarField::parse(o.f_expr),
                                  make_vector_field(o));
}

Topology make_topology(const std::string& name) {
  if (name == "plane") return Topology::Plane;
  if (name == "mobius-inf") return Topology::InfiniteMobius;
  if (name == "mobius-compact") return Topology::CompactMobius;
  return Topology::RP2Square;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty())
    std::cout << content;
  else
    write_text_file(path, content);
}

int cmd_field(const CommonOpts& o) {
  MetricField m = make_metric(o);
  Rect w = parse_window(o.window);
  emit(o.out, field_csv(field_scan(m, w, o.grid_n)));
  if (!o.svg.empty()) write_text_file(o.svg, field_svg(m, w, o.grid_n));
  return 0;
}

int cmd_verify(const CommonOpts& o) {
  VerifyResult res = run_verification(o.seed);
  emit(o.out, res.to_json().dump(2) + "\n");
  return res.required_failures() == 0 ? 0 : 1;
}

int cmd_geodesic(const CommonOpts& o, const std::string& init) {
  MetricField m = make_metric(o);
  Manifold man(make_topology(o.topology));
  TangentVector v{};
  if (std::sscanf(init.c_str(), "%lf,%lf,%lf,%lf", &v.base.t, &v.base.x, &v.vt, &v.vx) != 4)
    throw CLI::ValidationError("--init", "expected t,x,vt,vx");
  Rect w = parse_window(o.window);
  IntegratorOptions opt;
  opt.lambda_max = o.lambda_max;
  opt.dlambda = o.dlambda;
  opt.tol_deg = o.tol_deg;
  opt.window = Rect{w.t_min * 50, w.t_max * 50, w.x_min * 50, w.x_max * 50};
  GeodesicTrace tr = integrate_geodesic(m, man, v, opt);
  emit(o.out, geodesic_csv(tr));
  if (!o.out.empty()) {
    nlohmann::json side{{"status", static_cast<int>(tr.status)},
                        {"seam_events", seam_events_json(tr)}};
    write_text_file(o.out + ".events.json", side.dump(2) + "\n");
  }
  if (!o.svg.empty()) write_text_file(o.svg, geodesic_svg(m, w, o.grid_n, tr));
  return 0;
}

int cmd_radical(const CommonOpts& o) {
  MetricField m = make_metric(o);
  Rect w = parse_window(o.window);
  auto loci = degeneracy_locus(m, w, std::max(o.grid_n, 101));
  RadicalScan merged;
  for (const Polyline& locus : loci) {
    auto h = m.kind() == MetricField::Kind::Transformed ? level_function(m.f())
                                                        : det_function(m);
    RadicalScan scan = radical_classification(m, locus, h, kDefaultTolTangent, o.tol_deg);
    for (auto& r : scan.reports) merged.reports.push_back(r);
    for (auto& p : scan.tangency_points) merged.tangency_points.push_back(p);
    merged.n_skipped += scan.n_skipped;
  }
  emit(o.out, radical_csv(merged));
  return 0;
}

int cmd_trap(const CommonOpts& o, int k, int n_curves, const std::string& kind) {
  MetricField m = make_metric(o);
  TrappingOptions opt;
  opt.n_curves = n_curves;
  opt.lambda_max = o.lambda_max;
  opt.dlambda = o.dlambda;
  opt.seed = o.seed;
  opt.kind = kind == "spacelike" ? DirectionKind::Spacelike
             : kind == "null"    ? DirectionKind::Null
                                 : DirectionKind::Timelike;
  TrappingReport rep = trapping_experiment(m, k, opt);
  emit(o.out, trapping_json(rep).dump(2) + "\n");
  return 0;
}

int cmd_seam(const CommonOpts& o, int order, int n_samples) {
  MetricField m = make_metric(o);
  Manifold man(make_topology(o.topology));
  auto reps = man.seam_compatibility(m, order, n_samples);
  emit(o.out, seam_reports_json(reps).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signature-type-changing 2D metric toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string init = "0,0,1,0";
  int stripe_k = 0, n_curves = 200, order = 0, n_samples = 41;
  std::string kind = "timelike";

  CLI::App* field = app.add_subcommand("field", "sample the metric on a grid");
  add_common(field, o);
  CLI::App* verify = app.add_subcommand("verify", "run the property suite");
  add_common(verify, o);
  CLI::App* geodesic = app.add_subcommand("geodesic", "integrate one geodesic");
  add_common(geodesic, o);
  geodesic->add_option("--init", init, "initial t,x,vt,vx");
  CLI::App* radical = app.add_subcommand("radical", "degeneracy locus + radical scan");
  add_common(radical, o);
  CLI::App* trap = app.add_subcommand("trap", "stripe trapping experiment");
  add_common(trap, o);
  trap->add_option("--k", stripe_k, "stripe index");
  trap->add_option("--n-curves", n_curves, "ensemble size")->check(CLI::PositiveNumber);
  trap->add_option("--kind", kind, "timelike|null|spacelike")
      ->check(CLI::IsMember({"timelike", "null", "spacelike"}));
  CLI::App* seam = app.add_subcommand("seam", "seam compatibility report");
  add_common(seam, o);
  seam->add_option("--order", order, "0 (components) or 1 (transverse derivative)")
      ->check(CLI::Range(0, 1));
  seam->add_option("--samples", n_samples, "samples per seam")->check(CLI::PositiveNumber);

  // expand a config file (if any) into arguments placed right after the
  // subcommand name, so explicit flags given later override its entries
  std::vector<std::string> args(argv + 1, argv + argc);
  for (size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    else continue;
    try {
      std::vector<std::string> cfg = expand_config(path);
      args.insert(args.begin() + 1, cfg.begin(), cfg.end());
    } catch (const CLI::Error& e) {
      return app.exit(e);
    }
    break;
  }
  std::vector<const char*> cargv{argv[0]};
  for (const std::string& a : args) cargv.push_back(a.c_str());
  CLI11_PARSE(app, static_cast<int>(cargv.size()), cargv.data());

  try {
    if (field->parsed()) return cmd_field(o);
    if (verify->parsed()) return cmd_verify(o);
    if (geodesic->parsed()) return cmd_geodesic(o, init);
    if (radical->parsed()) return cmd_radical(o);
    if (trap->parsed()) return cmd_trap(o, stripe_k, n_curves, kind);
    if (seam->parsed()) return cmd_seam(o, order, n_samples);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
