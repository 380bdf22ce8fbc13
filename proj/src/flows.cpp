#include "hypoflow/flows.hpp"

#include <algorithm>
#include <cmath>

namespace hypoflow {

double ControlSchedule::total_duration() const {
  double s = 0.0;
  for (const auto& seg : segments) s += seg.duration;
  return s;
}

namespace {

struct Rk4Workspace {
  std::vector<double> k1, k2, k3, k4, tmp;
  explicit Rk4Workspace(size_t d) : k1(d), k2(d), k3(d), k4(d), tmp(d) {}
};

// one RK4 step of y' = f(y), in place
template <typename Rhs>
void rk4_step(Rhs&& f, std::vector<double>& y, double h, Rk4Workspace& ws) {
  size_t d = y.size();
  f(y.data(), ws.k1.data());
  for (size_t i = 0; i < d; ++i) ws.tmp[i] = y[i] + 0.5 * h * ws.k1[i];
  f(ws.tmp.data(), ws.k2.data());
  for (size_t i = 0; i < d; ++i) ws.tmp[i] = y[i] + 0.5 * h * ws.k2[i];
  f(ws.tmp.data(), ws.k3.data());
  for (size_t i = 0; i < d; ++i) ws.tmp[i] = y[i] + h * ws.k3[i];
  f(ws.tmp.data(), ws.k4.data());
  for (size_t i = 0; i < d; ++i)
    y[i] += h / 6.0 * (ws.k1[i] + 2.0 * (ws.k2[i] + ws.k3[i]) + ws.k4[i]);
}

bool all_finite(const std::vector<double>& y) {
  for (double v : y)
    if (!std::isfinite(v)) return false;
  return true;
}

// RK4 over one constant-control interval of signed length s
void flow_segment(const OperatorModel& model, const std::vector<double>& omega,
                  double s, std::vector<double>& state, double step, double s_origin,
                  Rk4Workspace& ws, Path* record = nullptr) {
  if (s == 0.0) return;
  VectorField F = control_drift_field(model, omega);
  auto rhs = [&F, sign = s < 0.0 ? -1.0 : 1.0](const double* y, double* out) {
    F.coeff(y, out);
    if (sign < 0.0)
      for (int i = 0; i < F.dim; ++i) out[i] = -out[i];
  };
  double len = std::fabs(s);
  int nsteps = std::max(1, static_cast<int>(std::ceil(len / step)));
  double h = len / nsteps;
  double done = 0.0;
  for (int i = 0; i < nsteps; ++i) {
    rk4_step(rhs, state, h, ws);
    done += h;
    if (!all_finite(state)) throw FlowBlowup(s_origin + (s < 0 ? -done : done));
    if (record)
      record->samples.push_back({s_origin + done, unpack(state)});
  }
}

}  // namespace

Path integrate_admissible(const OperatorModel& model, const ControlSchedule& control,
                          const Point& z0, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("integrate_admissible: step > 0");
  for (const auto& seg : control.segments) {
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration))
      throw std::invalid_argument("integrate_admissible: segment durations must be positive and finite");
    if (step > seg.duration)
      throw std::invalid_argument("integrate_admissible: step exceeds a segment duration");
  }
  Path path;
  path.step = step;
  path.samples.push_back({0.0, z0});
  std::vector<double> state = pack(z0);
  Rk4Workspace ws(state.size());
  double s_origin = 0.0;
  for (const auto& seg : control.segments) {
    flow_segment(model, seg.omega, seg.duration, state, step, s_origin, ws, &path);
    s_origin += seg.duration;
  }
  return path;
}

Point exp_map(const OperatorModel& model, const std::vector<double>& omega, double s,
              const Point& z0) {
  if (s < 0.0) throw std::invalid_argument("exp_map: s must be nonnegative");
  if (static_cast<int>(omega.size()) != model.m)
    throw std::invalid_argument("exp_map: control vector length must equal m");
  if (s == 0.0) return z0;
  if (!model.exp_closed) return exp_map_rk4(model, omega, s, z0);
  return model.exp_closed(omega, s, z0);
}

Point exp_map_rk4(const OperatorModel& model, const std::vector<double>& omega,
                  double s, const Point& z0, double step) {
  if (s == 0.0) return z0;
  std::vector<double> state = pack(z0);
  Rk4Workspace ws(state.size());
  double h = std::min(step, std::fabs(s) / 100.0);
  flow_segment(model, omega, s, state, h, 0.0, ws);
  return unpack(state);
}

double right_translation_residual(const OperatorModel& model,
                                  const std::vector<double>& omega, double s,
                                  const Point& z0) {
  Point direct = exp_map(model, omega, s, z0);
  Point from_origin = exp_map(model, omega, s, model.law.identity);
  Point translated = compose(model.law, z0, from_origin);
  return dist_inf(direct, translated);
}

Point heisenberg_loop(const OperatorModel& model, double c, double s, const Point& z0) {
  if (model.name != "heisenberg_heat")
    throw std::invalid_argument("heisenberg_loop: model must be heisenberg_heat");
  Point z = exp_map(model, {c, 0.0}, s, z0);
  z = exp_map(model, {0.0, c}, s, z);
  z = exp_map(model, {-c, 0.0}, s, z);
  z = exp_map(model, {0.0, -c}, s, z);
  return z;
}

Point mumford_loop_forward(const OperatorModel& model, double s, const Point& z0) {
  if (model.name != "mumford")
    throw std::invalid_argument("mumford_loop: model must be mumford");
  if (!(s > 0.0)) throw std::invalid_argument("mumford_loop: s > 0");
  double omega = 2.0 * M_PI / s;
  return exp_map(model, {omega}, s, z0);
}

Point mumford_loop(const OperatorModel& model, double s, const Point& z0) {
  Point forward = mumford_loop_forward(model, s, z0);
  double omega = 2.0 * M_PI / s;
  return exp_map(model, {-omega}, s, forward);
}

std::vector<Point> harnack_chain(const OperatorModel& model,
                                 const std::vector<double>& omega, double s, int k,
                                 const Point& z0) {
  if (k < 1) throw std::invalid_argument("harnack_chain: k >= 1");
  std::vector<Point> chain;
  chain.reserve(static_cast<size_t>(k) + 1);
  chain.push_back(z0);
  for (int i = 0; i < k; ++i) chain.push_back(exp_map(model, omega, s, chain.back()));
  return chain;
}

SeparationRatio separation_ratio(const OperatorModel& model,
                                 const std::function<double(const Point&)>& u,
                                 const std::vector<double>& omega, double s,
                                 const std::vector<Point>& samples) {
  if (samples.empty()) throw std::invalid_argument("separation_ratio: empty sample set");
  std::vector<double> ratios;
  ratios.reserve(samples.size());
  for (const Point& z : samples) {
    double uz = u(z);
    if (uz == 0.0) throw std::domain_error("separation_ratio: u vanishes at a sample");
    ratios.push_back(u(exp_map(model, omega, s, z)) / uz);
  }
  SeparationRatio out;
  for (double r : ratios) out.mean += r;
  out.mean /= static_cast<double>(ratios.size());
  for (double r : ratios)
    out.max_deviation = std::max(out.max_deviation, std::fabs(r - out.mean));
  return out;
}

namespace {

// closed-form flow for signed s
Point exp_signed(const OperatorModel& model, const std::vector<double>& omega, double s,
                 const Point& z0) {
  if (s == 0.0) return z0;
  return model.exp_closed(omega, s, z0);
}

}  // namespace

Point bch_loop(const OperatorModel& model, const std::vector<double>& omega1,
               const std::vector<double>& omega2, double s, const Point& z0) {
  Point z = exp_signed(model, omega1, s, z0);
  z = exp_signed(model, omega2, s, z);
  z = exp_signed(model, omega1, -s, z);
  z = exp_signed(model, omega2, -s, z);
  return z;
}

double bch_loop_residual_general(const OperatorModel& model,
                                 const std::vector<double>& omega1,
                                 const std::vector<double>& omega2, double s,
                                 const Point& z0) {
  Point end = bch_loop(model, omega1, omega2, s, z0);
  double time_shift = end.time - z0.time;  // zero for the closed loop
  VectorField A = control_drift_field(model, omega1);
  VectorField B = control_drift_field(model, omega2);
  std::vector<double> br = bracket(A, B).eval(pack(z0));
  double res = std::fabs((time_shift - 0.0) / (s * s) - br[static_cast<size_t>(model.n)]);
  for (int i = 0; i < model.n; ++i) {
    double inc = (end.spatial[static_cast<size_t>(i)] - z0.spatial[static_cast<size_t>(i)]) / (s * s);
    res = std::max(res, std::fabs(inc - br[static_cast<size_t>(i)]));
  }
  return res;
}

double bch_loop_residual(const OperatorModel& model, int j, int k, double s,
                         const Point& z0) {
  if (j < 1 || j > model.m || k < 1 || k > model.m)
    throw std::invalid_argument("bch_loop_residual: generator index out of range");
  std::vector<double> w1(static_cast<size_t>(model.m), 0.0);
  std::vector<double> w2(static_cast<size_t>(model.m), 0.0);
  w1[static_cast<size_t>(j - 1)] = 1.0;
  w2[static_cast<size_t>(k - 1)] = 1.0;
  return bch_loop_residual_general(model, w1, w2, s, z0);
}

}  // namespace hypoflow
