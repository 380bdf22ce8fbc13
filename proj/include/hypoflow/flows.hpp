#ifndef HYPOFLOW_FLOWS_HPP
#define HYPOFLOW_FLOWS_HPP

#include <functional>
#include <vector>

#include "hypoflow/models.hpp"

namespace hypoflow {

// Piecewise-constant control omega(s) on consecutive intervals.
struct ControlSchedule {
  struct Segment {
    double duration = 0.0;
    std::vector<double> omega;
  };
  std::vector<Segment> segments;
  double total_duration() const;
};

struct PathSample {
  double s = 0.0;
  Point z;
};

// Discrete integral curve of gamma' = sum omega_j Xj(gamma) + Y(gamma).
struct Path {
  std::vector<PathSample> samples;
  double step = 0.0;
  const Point& endpoint() const { return samples.back().z; }
};

// Thrown when an integration state leaves the finite range; carries the
// curve parameter where it happened.
struct FlowBlowup : std::runtime_error {
  double s;
  explicit FlowBlowup(double s_)
      : std::runtime_error("flow blow-up at s = " + std::to_string(s_)), s(s_) {}
};

// Classical RK4 on gamma' = omega.X + Y, restarted at segment boundaries.
Path integrate_admissible(const OperatorModel& model, const ControlSchedule& control,
                          const Point& z0, double step);

// exp(s (omega.X + Y)) z0 via the model's closed form; s = 0 returns z0.
Point exp_map(const OperatorModel& model, const std::vector<double>& omega, double s,
              const Point& z0);

// Same flow by RK4 only, for cross-checking the closed forms. Accepts any
// real s (negative s integrates the reversed field).
Point exp_map_rk4(const OperatorModel& model, const std::vector<double>& omega,
                  double s, const Point& z0, double step = 1e-3);

// || exp(s(omega.X+Y)) z0  -  z0 o exp(s(omega.X+Y)) e ||_inf
double right_translation_residual(const OperatorModel& model,
                                  const std::vector<double>& omega, double s,
                                  const Point& z0);

// Four constant-control legs (c,0), (0,c), (-c,0), (0,-c), each of length s,
// on the Heisenberg model. Endpoint is (x, y, z + c^2 s^2, t - 4s).
Point heisenberg_loop(const OperatorModel& model, double c, double s, const Point& z0);

// Mumford legs with omega = 2*pi/s: the forward leg shifts x by one full
// turn, the round trip is a pure time translation by 2s.
Point mumford_loop_forward(const OperatorModel& model, double s, const Point& z0);
Point mumford_loop(const OperatorModel& model, double s, const Point& z0);

// chain z0, exp(s)z0, ..., exp(ks)z0 built by iterating the one-step map
std::vector<Point> harnack_chain(const OperatorModel& model,
                                 const std::vector<double>& omega, double s, int k,
                                 const Point& z0);

struct SeparationRatio {
  double mean = 0.0;
  double max_deviation = 0.0;
};

// ratios u(exp(s(omega.X+Y)) z_i) / u(z_i) over the sample set
SeparationRatio separation_ratio(const OperatorModel& model,
                                 const std::function<double(const Point&)>& u,
                                 const std::vector<double>& omega, double s,
                                 const std::vector<Point>& samples);

// Commutator loop: forward legs of A = omega1.X + Y and B = omega2.X + Y,
// then backward legs of A and B. Endpoint = z0 + s^2 [A,B](z0) + O(s^3).
Point bch_loop(const OperatorModel& model, const std::vector<double>& omega1,
               const std::vector<double>& omega2, double s, const Point& z0);

// || (loop endpoint - z0)/s^2 - [A,B](z0) ||_inf with the loop's (zero)
// time shift removed first; tends to 0 at rate O(s).
double bch_loop_residual_general(const OperatorModel& model,
                                 const std::vector<double>& omega1,
                                 const std::vector<double>& omega2, double s,
                                 const Point& z0);

// unit-control loop of generators j and k (1-based)
double bch_loop_residual(const OperatorModel& model, int j, int k, double s,
                         const Point& z0);

}  // namespace hypoflow

#endif
