#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypoflow/config.hpp"
#include "hypoflow/flows.hpp"
#include "hypoflow/kernels.hpp"
#include "hypoflow/reach.hpp"
#include "hypoflow/report.hpp"
#include "hypoflow/rng.hpp"
#include "hypoflow/solver.hpp"
#include "hypoflow/verify.hpp"

using namespace hypoflow;

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitConfigError = 2;

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"run", {"model", "seed", "format", "out", "suite"}},
      {"flow", {"omega", "s", "z0", "step", "path_out"}},
      {"reach", {"z0", "n_paths", "segments", "omega_bound", "horizon", "cloud_out"}},
      {"martin", {"T", "w1", "w2", "k_list", "bound", "table_out"}},
      {"solve", {"x", "y", "u0", "dt", "steps", "margin", "grid_out"}},
      {"kernel", {}},
  };
  return keys;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Resolved {
  ExperimentConfig cfg;
  std::string format = "csv";
  std::string out;

  void load_file(const std::string& path) {
    if (path.empty()) return;
    cfg = ExperimentConfig::from_file(path);
    cfg.validate(allowed_keys());
  }
  void override_if(const std::string& section, const std::string& key,
                   const std::string& value, bool given) {
    if (given) cfg.set(section, key, value);
  }
  void finish_common() {
    format = cfg.get("run", "format", "csv");
    if (format != "csv" && format != "json")
      throw ConfigError("run.format must be csv or json");
    out = cfg.get("run", "out", "");
  }
};

int emit(Report& report, const Resolved& rc, double wall_ms) {
  report.wall_ms = wall_ms;
  report.config_echo = rc.cfg.entries();
  std::string payload = rc.format == "json" ? to_json(report) : to_csv(report);
  if (!rc.out.empty()) atomic_write(rc.out, payload);
  else std::cout << payload;
  std::fprintf(stderr, "%s: %d/%d checks passed (%.1f ms)\n", report.suite.c_str(),
               report.passed(), report.total(), wall_ms);
  return report.all_pass() ? 0 : kExitChecksFailed;
}

Point parse_point(const std::string& text, int n) {
  auto values = ExperimentConfig::parse_list(text);
  if (static_cast<int>(values.size()) != n + 1)
    throw ConfigError("point needs " + std::to_string(n + 1) +
                      " comma-separated coordinates (spatial then time), got: " + text);
  double t = values.back();
  values.pop_back();
  return Point(values, t);
}

AxisSpec parse_axis(const std::string& text) {
  std::istringstream in(text);
  std::string lo, hi, pts;
  if (!std::getline(in, lo, ':') || !std::getline(in, hi, ':') || !std::getline(in, pts))
    throw ConfigError("axis spec must be lo:hi:points, got: " + text);
  try {
    return AxisSpec{std::stod(lo), std::stod(hi), std::stoi(pts)};
  } catch (...) {
    throw ConfigError("bad axis spec: " + text);
  }
}

const char* oracle_label(OracleKind k) {
  switch (k) {
    case OracleKind::mumford: return "mumford";
    case OracleKind::cmp: return "cmp";
    case OracleKind::driftless: return "driftless";
    default: return "none";
  }
}

const char* kernel_label(KernelKind k) {
  switch (k) {
    case KernelKind::heat: return "heat";
    case KernelKind::kolmogorov: return "kolmogorov";
    default: return "none";
  }
}

int cmd_models(const std::string& format, const std::string& out) {
  auto cat = models::catalog();
  std::string payload;
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& md : cat) {
      nlohmann::ordered_json j;
      j["name"] = md.name;
      j["N"] = md.n;
      j["m"] = md.m;
      j["left_invariant"] = md.left_invariant;
      j["dilation"] = md.dilation.has_value();
      j["layers"] = md.layers.has_value();
      j["closed_form_exp"] = static_cast<bool>(md.exp_closed);
      j["attainable_oracle"] = oracle_label(md.oracle);
      j["kernel"] = kernel_label(md.kernel);
      j["extremal_catalog"] = md.has_extremals;
      arr.push_back(j);
    }
    payload = arr.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "name,N,m,left_invariant,dilation,layers,closed_form_exp,attainable_oracle,"
          "kernel,extremal_catalog\n";
    for (const auto& md : cat)
      os << md.name << "," << md.n << "," << md.m << "," << (md.left_invariant ? 1 : 0)
         << "," << (md.dilation ? 1 : 0) << "," << (md.layers ? 1 : 0) << ","
         << (md.exp_closed ? 1 : 0) << "," << oracle_label(md.oracle) << ","
         << kernel_label(md.kernel) << "," << (md.has_extremals ? 1 : 0) << "\n";
    payload = os.str();
  }
  if (!out.empty()) atomic_write(out, payload);
  else std::cout << payload;
  return 0;
}

int cmd_verify(Resolved& rc) {
  rc.finish_common();
  std::string model_name = rc.cfg.get("run", "model", "");
  if (model_name.empty()) throw ConfigError("verify: run.model (--model) is required");
  auto md = models::by_name(model_name);
  std::uint64_t seed = static_cast<std::uint64_t>(rc.cfg.get_long("run", "seed", 1));
  std::string suite = rc.cfg.get("run", "suite", "all");

  std::vector<std::string> suites;
  if (suite == "all") suites = verify::suite_names();
  else {
    std::istringstream in(suite);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (!verify::is_suite(tok)) throw ConfigError("unknown suite: " + tok);
      suites.push_back(tok);
    }
    if (suites.empty()) throw ConfigError("verify: empty suite selection");
  }

  auto t0 = std::chrono::steady_clock::now();
  Report report;
  report.suite = "verify:" + model_name + ":" + suite;
  for (const auto& s : suites) verify::run_suite(report, s, md, seed);
  double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, rc, wall);
}

int cmd_flow(Resolved& rc) {
  rc.finish_common();
  std::string model_name = rc.cfg.get("run", "model", "");
  if (model_name.empty()) throw ConfigError("flow: run.model (--model) is required");
  auto md = models::by_name(model_name);

  auto omega =
      rc.cfg.get_list("flow", "omega", std::vector<double>(static_cast<size_t>(md.m), 0.0));
  if (static_cast<int>(omega.size()) != md.m)
    throw ConfigError("flow.omega needs " + std::to_string(md.m) + " components");
  double s = rc.cfg.get_double("flow", "s", 1.0);
  if (!(s > 0.0)) throw ConfigError("flow.s must be positive");
  double step = rc.cfg.get_double("flow", "step", 1e-3);
  if (!(step > 0.0)) throw ConfigError("flow.step must be positive");
  Point z0(std::vector<double>(static_cast<size_t>(md.n), 0.0), 0.0);
  if (rc.cfg.has("flow", "z0")) z0 = parse_point(rc.cfg.get("flow", "z0"), md.n);

  auto t0 = std::chrono::steady_clock::now();
  ControlSchedule sched;
  sched.segments.push_back({s, omega});
  Path path = integrate_admissible(md, sched, z0, std::min(step, s));
  Point closed = exp_map(md, omega, s, z0);

  Report report;
  report.suite = "flow:" + model_name;
  std::ostringstream in;
  in << model_name << "|s=" << s << "|step=" << step;
  report.check_le("flow.closed_form_vs_rk4", in.str(), dist_inf(closed, path.endpoint()),
                  1e-8);
  report.check_le("flow.time_coordinate", in.str(),
                  std::fabs(path.endpoint().time - (z0.time - s)), 1e-12);
  if (md.left_invariant)
    report.check_le("flow.right_translation", in.str(),
                    right_translation_residual(md, omega, s, z0), 1e-8);

  std::string path_out = rc.cfg.get("flow", "path_out", "");
  if (!path_out.empty()) {
    std::ostringstream os;
    os << "s";
    for (int i = 0; i < md.n; ++i) os << ",x" << i;
    os << ",t\n";
    for (const auto& sample : path.samples) {
      os << fmt17(sample.s);
      for (double c : sample.z.spatial) os << "," << fmt17(c);
      os << "," << fmt17(sample.z.time) << "\n";
    }
    atomic_write(path_out, os.str());
  }
  double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, rc, wall);
}

int cmd_reach(Resolved& rc) {
  rc.finish_common();
  std::string model_name = rc.cfg.get("run", "model", "");
  if (model_name.empty()) throw ConfigError("reach: run.model (--model) is required");
  auto md = models::by_name(model_name);
  std::uint64_t seed = static_cast<std::uint64_t>(rc.cfg.get_long("run", "seed", 1));
  int n_paths = static_cast<int>(rc.cfg.get_long("reach", "n_paths", 1000));
  int segments = static_cast<int>(rc.cfg.get_long("reach", "segments", 4));
  double bound = rc.cfg.get_double("reach", "omega_bound", 2.0);
  double horizon = rc.cfg.get_double("reach", "horizon", 1.0);
  Point z0(std::vector<double>(static_cast<size_t>(md.n), 0.0), 0.0);
  if (rc.cfg.has("reach", "z0")) z0 = parse_point(rc.cfg.get("reach", "z0"), md.n);

  auto t0 = std::chrono::steady_clock::now();
  auto cloud = sample_attainable(md, z0, n_paths, segments, bound, horizon, seed);

  Report report;
  report.suite = "reach:" + model_name;
  std::ostringstream in;
  in << model_name << "|seed=" << seed << "|paths=" << n_paths << "|segments=" << segments
     << "|bound=" << bound << "|horizon=" << horizon;
  if (cloud.endpoints.empty()) {
    report.check_true("reach.empty_cloud_trivial_pass", in.str(), true);
  } else if (md.oracle != OracleKind::none) {
    int sound = 0;
    for (const auto& e : cloud.endpoints) {
      auto mv = membership(md, z0, e, 1e-6);
      if (mv.verdict == Verdict::inside || mv.verdict == Verdict::boundary) ++sound;
    }
    report.check_true("reach.soundness_100_percent", in.str(),
                      sound == static_cast<int>(cloud.endpoints.size()));
    report.check_true("reach.no_dropped_paths", in.str(), cloud.dropped == 0);
  } else {
    bool in_time = true;
    for (const auto& e : cloud.endpoints)
      if (e.time < z0.time - horizon - 1e-12 || e.time > z0.time) in_time = false;
    report.check_true("reach.endpoint_times_in_horizon", in.str(), in_time);
  }

  std::string cloud_out = rc.cfg.get("reach", "cloud_out", "");
  if (!cloud_out.empty()) {
    std::ostringstream os;
    os << "path_id";
    for (int i = 0; i < md.n; ++i) os << ",x" << i;
    os << ",t,verdict,margin\n";
    for (size_t p = 0; p < cloud.endpoints.size(); ++p) {
      auto mv = membership(md, z0, cloud.endpoints[p], 1e-6);
      os << p;
      for (double c : cloud.endpoints[p].spatial) os << "," << fmt17(c);
      os << "," << fmt17(cloud.endpoints[p].time) << "," << verdict_name(mv.verdict) << ","
         << fmt17(mv.margin) << "\n";
    }
    atomic_write(cloud_out, os.str());
  }
  double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, rc, wall);
}

int cmd_martin(Resolved& rc) {
  rc.finish_common();
  std::string model_name = rc.cfg.get("run", "model", "kolmogorov");
  auto md = models::by_name(model_name);
  if (md.kernel != KernelKind::kolmogorov)
    throw ConfigError("martin: model must be kolmogorov");
  int m = md.m;

  double T = rc.cfg.get_double("martin", "T", 0.0);
  auto w1 = rc.cfg.get_list("martin", "w1", std::vector<double>(static_cast<size_t>(m), 0.0));
  auto w2 = rc.cfg.get_list("martin", "w2", std::vector<double>(static_cast<size_t>(m), 0.0));
  if (static_cast<int>(w1.size()) != m || static_cast<int>(w2.size()) != m)
    throw ConfigError("martin.w1/w2 need m components");
  auto klist_d = rc.cfg.get_list("martin", "k_list", {100, 1000, 10000});
  double bound = rc.cfg.get_double("martin", "bound", 2e-2);

  std::vector<long> klist;
  for (double k : klist_d) {
    if (!(k >= 1)) throw ConfigError("martin.k_list entries must be >= 1");
    klist.push_back(static_cast<long>(k));
  }
  if (klist.size() < 2) throw ConfigError("martin.k_list needs at least two entries");

  MartinSequence seq;
  seq.m = m;
  seq.T = T;
  seq.generator = [w1, w2](long k, std::vector<double>& xi, std::vector<double>& eta,
                           double& tau) {
    double kd = static_cast<double>(k);
    xi.resize(w1.size());
    eta.resize(w2.size());
    for (size_t i = 0; i < w1.size(); ++i) {
      xi[i] = 2.0 * kd * w1[i];
      eta[i] = kd * kd * w2[i];
    }
    tau = -kd;
  };
  {
    std::vector<double> xi, eta;
    double tau = 0.0;
    seq.generator(klist.front(), xi, eta, tau);
    if (tau >= T) throw ConfigError("martin: degenerate sequence, tau_k >= T");
  }
  auto pred = martin_limit_predicted(w1, w2);

  std::vector<Point> pts;
  if (m == 1) {
    pts = {Point({1, 5}, T - 1), Point({0.5, 0}, T - 0.5), Point({0, 1}, T - 1),
           Point({-1, 2}, T - 0.5), Point({0.3, -2}, T - 0.8)};
  } else {
    Rng rng(7);
    for (int i = 0; i < 5; ++i)
      pts.emplace_back(rng.vector(2 * m, -1, 1), T - rng.uniform(0.3, 1.0));
  }

  auto t0 = std::chrono::steady_clock::now();
  Report report;
  report.suite = "martin:" + model_name;

  std::ostringstream table;
  table << "k";
  for (int i = 0; i < 2 * m; ++i) table << ",z" << i;
  table << ",t,u_k,predicted,error\n";

  bool decreasing = true;
  std::vector<double> errs(pts.size(), 0.0), first_errs(pts.size(), 0.0);
  for (size_t ki = 0; ki < klist.size(); ++ki) {
    long k = klist[ki];
    for (size_t p = 0; p < pts.size(); ++p) {
      double uk = martin_quotient(m, T, seq, k, pts[p]);
      double pv = pred(pts[p]);
      double err = std::fabs(uk - pv);
      table << k;
      for (double c : pts[p].spatial) table << "," << fmt17(c);
      table << "," << fmt17(pts[p].time) << "," << fmt17(uk) << "," << fmt17(pv) << ","
            << fmt17(err) << "\n";
      if (ki == 0) first_errs[p] = err;
      else if (err >= errs[p]) decreasing = false;
      errs[p] = err;
    }
  }
  double final_err = 0.0, rate = 1e9;
  for (size_t p = 0; p < pts.size(); ++p) {
    final_err = std::max(final_err, errs[p]);
    if (first_errs[p] > 0.0 && errs[p] > 0.0)
      rate = std::min(rate, std::log(first_errs[p] / errs[p]) /
                                std::log(static_cast<double>(klist.back()) /
                                         static_cast<double>(klist.front())));
  }

  std::ostringstream in;
  in << model_name << "|T=" << T << "|k=" << klist.front() << ".." << klist.back();
  report.check_true("martin.error_decreases_in_k", in.str(), decreasing);
  report.check_le("martin.final_error", in.str(), final_err, bound);
  report.check_true("martin.fitted_rate_at_least_first_order", in.str(),
                    rate >= 0.8 && rate < 1e9);

  std::string table_out = rc.cfg.get("martin", "table_out", "");
  if (!table_out.empty()) atomic_write(table_out, table.str());

  double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, rc, wall);
}

int cmd_solve(Resolved& rc) {
  rc.finish_common();
  std::string model_name = rc.cfg.get("run", "model", "");
  if (model_name.empty()) throw ConfigError("solve: run.model (--model) is required");
  auto md = models::by_name(model_name);

  std::vector<AxisSpec> box = {parse_axis(rc.cfg.get("solve", "x", "-3.5:3.5:71"))};
  bool two_d = md.name == "kolmogorov" || md.name == "grushin" || md.n >= 2;
  if (two_d) box.push_back(parse_axis(rc.cfg.get("solve", "y", "-1:1:21")));
  double dt = rc.cfg.get_double("solve", "dt", 0.002);
  int steps = static_cast<int>(rc.cfg.get_long("solve", "steps", 125));
  double margin = rc.cfg.get_double("solve", "margin", 2.0);

  std::string u0_spec = rc.cfg.get("solve", "u0", "constant:1");
  std::function<double(const std::vector<double>&)> u0_fn;
  std::vector<double> alpha;
  bool from_extremal = false, from_constant = false;
  double const_value = 1.0;
  {
    size_t colon = u0_spec.find(':');
    std::string kind = u0_spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : u0_spec.substr(colon + 1);
    if (kind == "constant") {
      try {
        const_value = arg.empty() ? 1.0 : std::stod(arg);
      } catch (...) {
        throw ConfigError("bad solve.u0 constant: " + arg);
      }
      from_constant = true;
      u0_fn = [const_value](const std::vector<double>&) { return const_value; };
    } else if (kind == "extremal") {
      if (!md.has_extremals)
        throw ConfigError("solve.u0=extremal requires a model with an extremal catalog");
      auto vs = ExperimentConfig::parse_list(arg);
      alpha.assign(static_cast<size_t>(md.n), 0.0);
      for (size_t i = 0; i < vs.size() && i < alpha.size(); ++i) alpha[i] = vs[i];
      auto sol = extremal(md, alpha);
      from_extremal = true;
      u0_fn = [sol](const std::vector<double>& x) { return sol.stationary(x); };
    } else {
      throw ConfigError("solve.u0 must be constant:<c> or extremal:<alpha list>");
    }
  }

  auto t0 = std::chrono::steady_clock::now();
  GridField u0 = make_grid(box, u0_fn, 0.0);
  GridField out_grid = solve_cauchy(md, u0, dt, steps);

  Report report;
  report.suite = "solve:" + model_name;
  std::ostringstream in;
  in << model_name << "|dt=" << dt << "|steps=" << steps << "|u0=" << u0_spec;

  if (from_extremal) {
    auto sol = extremal(md, alpha);
    double worst = 0.0;
    long interior_nodes = 0;
    std::vector<int> idx(box.size(), 0);
    for (size_t flat = 0; flat < out_grid.values.size(); ++flat) {
      bool interior = true;
      std::vector<double> x(box.size());
      for (size_t a = 0; a < box.size(); ++a) {
        x[a] = out_grid.coord(static_cast<int>(a), idx[a]);
        bool clamped_axis = !(md.name == "kolmogorov" && a == 1);
        if (clamped_axis && (x[a] < box[a].lo + margin || x[a] > box[a].hi - margin))
          interior = false;
      }
      if (interior) {
        ++interior_nodes;
        double exact = sol.parabolic(Point(x, out_grid.time));
        worst = std::max(worst, std::fabs(out_grid.values[flat] - exact) / exact);
      }
      for (int a = static_cast<int>(box.size()) - 1; a >= 0; --a) {
        if (++idx[static_cast<size_t>(a)] < box[static_cast<size_t>(a)].points) break;
        idx[static_cast<size_t>(a)] = 0;
      }
    }
    report.check_true("solve.interior_nonempty", in.str(), interior_nodes > 0);
    report.check_le("solve.extremal_interior_error", in.str(), worst, 1e-3);
  }
  if (from_constant) {
    bool exact = true;
    for (double v : out_grid.values)
      if (v != const_value) exact = false;
    report.check_true("solve.constants_preserved_exactly", in.str(), exact);
  }
  if (md.name == "kolmogorov")
    report.check_le("solve.y_independence", in.str(), y_independence_deviation(out_grid, 1),
                    1e-10);
  bool finite_all = true;
  for (double v : out_grid.values)
    if (!std::isfinite(v)) finite_all = false;
  report.check_true("solve.values_finite", in.str(), finite_all);

  std::string grid_out = rc.cfg.get("solve", "grid_out", "");
  if (!grid_out.empty()) atomic_write(grid_out, grid_to_csv(out_grid));

  double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, rc, wall);
}

int cmd_kernel(Resolved& rc) {
  rc.finish_common();
  std::string model_name = rc.cfg.get("run", "model", "kolmogorov");
  auto md = models::by_name(model_name);
  if (md.kernel == KernelKind::none)
    throw ConfigError("kernel: model must carry a fundamental solution (heat or kolmogorov)");
  std::uint64_t seed = static_cast<std::uint64_t>(rc.cfg.get_long("run", "seed", 1));

  auto t0 = std::chrono::steady_clock::now();
  Report report;
  report.suite = "kernel:" + model_name;
  verify::kernel_suite(report, md, seed);
  double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, rc, wall);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypoelliptic operator verification toolkit"};
  app.require_subcommand(1);

  std::string config_path, model, format, out, suite;
  long seed = 1;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub, bool with_suite = false) {
    sub->add_option("--config", config_path, "experiment config file");
    sub->add_option("--model", model, "builtin model name");
    sub->add_option("--seed", seed, "random seed")->each([&seed_given](const std::string&) {
      seed_given = true;
    });
    sub->add_option("--format", format, "report format: csv or json");
    sub->add_option("--out", out, "report output path");
    if (with_suite) sub->add_option("--suite", suite, "comma-separated suite list or 'all'");
  };

  auto* models_cmd = app.add_subcommand("models", "list the builtin operator models");
  models_cmd->add_option("--format", format, "csv or json");
  models_cmd->add_option("--out", out, "output path");

  auto* verify_cmd = app.add_subcommand("verify", "run invariant check suites");
  add_common(verify_cmd, true);

  auto* flow_cmd = app.add_subcommand("flow", "integrate a constant-control flow");
  add_common(flow_cmd);
  std::string omega_s, z0_s, path_out;
  double s_par = 1.0, step = 1e-3;
  bool s_given = false, step_given = false;
  flow_cmd->add_option("--omega", omega_s, "control vector, comma-separated");
  flow_cmd->add_option("--s", s_par, "flow length")->each([&s_given](const std::string&) {
    s_given = true;
  });
  flow_cmd->add_option("--z0", z0_s, "start point: spatial coords then time");
  flow_cmd->add_option("--step", step, "RK4 step")->each([&step_given](const std::string&) {
    step_given = true;
  });
  flow_cmd->add_option("--path-out", path_out, "path samples CSV");

  auto* reach_cmd = app.add_subcommand("reach", "sample the attainable set");
  add_common(reach_cmd);
  long n_paths = 0, segments = 0;
  double omega_bound = 0.0, horizon = 0.0;
  std::string cloud_out, reach_z0;
  bool npaths_given = false, segments_given = false, bound_given = false,
       horizon_given = false;
  reach_cmd->add_option("--z0", reach_z0, "origin point");
  reach_cmd->add_option("--n-paths", n_paths, "number of sampled paths")
      ->each([&npaths_given](const std::string&) { npaths_given = true; });
  reach_cmd->add_option("--segments", segments, "control segments per path")
      ->each([&segments_given](const std::string&) { segments_given = true; });
  reach_cmd->add_option("--omega-bound", omega_bound, "sup-norm control bound")
      ->each([&bound_given](const std::string&) { bound_given = true; });
  reach_cmd->add_option("--horizon", horizon, "time horizon")
      ->each([&horizon_given](const std::string&) { horizon_given = true; });
  reach_cmd->add_option("--cloud-out", cloud_out, "endpoint cloud CSV");

  auto* martin_cmd = app.add_subcommand("martin", "Martin-quotient convergence sweep");
  add_common(martin_cmd);
  std::string w1_s, w2_s, klist_s, table_out;
  double T_par = 0.0, bound_par = 0.0;
  bool T_given = false, mbound_given = false;
  martin_cmd->add_option("--T", T_par, "normalization time")
      ->each([&T_given](const std::string&) { T_given = true; });
  martin_cmd->add_option("--w1", w1_s, "first direction, comma-separated");
  martin_cmd->add_option("--w2", w2_s, "second direction, comma-separated");
  martin_cmd->add_option("--k-list", klist_s, "comma-separated k values");
  martin_cmd->add_option("--bound", bound_par, "acceptance bound on the final error")
      ->each([&mbound_given](const std::string&) { mbound_given = true; });
  martin_cmd->add_option("--table-out", table_out, "convergence table CSV");

  auto* solve_cmd = app.add_subcommand("solve", "explicit finite-difference Cauchy solve");
  add_common(solve_cmd);
  std::string x_axis, y_axis, u0_spec, grid_out;
  double dt = 0.0, solve_margin = 0.0;
  long steps = 0;
  bool dt_given = false, steps_given = false, margin_given = false;
  solve_cmd->add_option("--x", x_axis, "x axis lo:hi:points");
  solve_cmd->add_option("--y", y_axis, "y axis lo:hi:points");
  solve_cmd->add_option("--u0", u0_spec, "initial datum: constant:<c> or extremal:<alpha>");
  solve_cmd->add_option("--dt", dt, "time step")->each([&dt_given](const std::string&) {
    dt_given = true;
  });
  solve_cmd->add_option("--steps", steps, "number of steps")
      ->each([&steps_given](const std::string&) { steps_given = true; });
  solve_cmd->add_option("--margin", solve_margin, "interior margin for error checks")
      ->each([&margin_given](const std::string&) { margin_given = true; });
  solve_cmd->add_option("--grid-out", grid_out, "solution grid CSV");

  auto* kernel_cmd = app.add_subcommand("kernel", "fundamental-solution checks");
  add_common(kernel_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    Resolved rc;
    rc.load_file(config_path);
    rc.override_if("run", "model", model, !model.empty());
    rc.override_if("run", "seed", std::to_string(seed), seed_given);
    if (!rc.cfg.has("run", "seed")) rc.cfg.set("run", "seed", std::to_string(seed));
    rc.override_if("run", "format", format, !format.empty());
    rc.override_if("run", "out", out, !out.empty());
    rc.override_if("run", "suite", suite, !suite.empty());

    if (models_cmd->parsed()) return cmd_models(format.empty() ? "csv" : format, out);
    if (verify_cmd->parsed()) return cmd_verify(rc);
    if (flow_cmd->parsed()) {
      rc.override_if("flow", "omega", omega_s, !omega_s.empty());
      rc.override_if("flow", "s", fmt17(s_par), s_given);
      rc.override_if("flow", "z0", z0_s, !z0_s.empty());
      rc.override_if("flow", "step", fmt17(step), step_given);
      rc.override_if("flow", "path_out", path_out, !path_out.empty());
      return cmd_flow(rc);
    }
    if (reach_cmd->parsed()) {
      rc.override_if("reach", "z0", reach_z0, !reach_z0.empty());
      rc.override_if("reach", "n_paths", std::to_string(n_paths), npaths_given);
      rc.override_if("reach", "segments", std::to_string(segments), segments_given);
      rc.override_if("reach", "omega_bound", fmt17(omega_bound), bound_given);
      rc.override_if("reach", "horizon", fmt17(horizon), horizon_given);
      rc.override_if("reach", "cloud_out", cloud_out, !cloud_out.empty());
      return cmd_reach(rc);
    }
    if (martin_cmd->parsed()) {
      rc.override_if("martin", "T", fmt17(T_par), T_given);
      rc.override_if("martin", "w1", w1_s, !w1_s.empty());
      rc.override_if("martin", "w2", w2_s, !w2_s.empty());
      rc.override_if("martin", "k_list", klist_s, !klist_s.empty());
      rc.override_if("martin", "bound", fmt17(bound_par), mbound_given);
      rc.override_if("martin", "table_out", table_out, !table_out.empty());
      return cmd_martin(rc);
    }
    if (solve_cmd->parsed()) {
      rc.override_if("solve", "x", x_axis, !x_axis.empty());
      rc.override_if("solve", "y", y_axis, !y_axis.empty());
      rc.override_if("solve", "u0", u0_spec, !u0_spec.empty());
      rc.override_if("solve", "dt", fmt17(dt), dt_given);
      rc.override_if("solve", "steps", std::to_string(steps), steps_given);
      rc.override_if("solve", "margin", fmt17(solve_margin), margin_given);
      rc.override_if("solve", "grid_out", grid_out, !grid_out.empty());
      return cmd_solve(rc);
    }
    if (kernel_cmd->parsed()) return cmd_kernel(rc);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitChecksFailed;
  }
  return 0;
}
