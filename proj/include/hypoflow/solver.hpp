#ifndef HYPOFLOW_SOLVER_HPP
#define HYPOFLOW_SOLVER_HPP

#include <functional>
#include <string>
#include <vector>

#include "hypoflow/models.hpp"

namespace hypoflow {

struct AxisSpec {
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;
  double h() const { return (hi - lo) / (points - 1); }
};

// Axis-aligned box discretization of x-space with a time stamp. Values are
// stored row-major with the last axis fastest.
struct GridField {
  std::vector<AxisSpec> box;
  std::vector<double> values;
  double time = 0.0;

  int dims() const { return static_cast<int>(box.size()); }
  size_t node_count() const;
  size_t index(const std::vector<int>& idx) const;
  double coord(int axis, int i) const {
    return box[static_cast<size_t>(axis)].lo + i * box[static_cast<size_t>(axis)].h();
  }
};

// sample f over the box at the given time stamp
GridField make_grid(std::vector<AxisSpec> box,
                    const std::function<double(const std::vector<double>&)>& f,
                    double time = 0.0);

struct CflError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Explicit scheme for d_t u = sum Xj^2 u + X0 u on heat (N <= 2),
// kolmogorov (m = 1) and grushin grids: centered second differences for the
// diffusion terms, first-order upwind for the x d_y drift, Dirichlet clamp
// of the boundary to u0's trace. Rejects time steps that would produce a
// negative stencil weight.
GridField solve_cauchy(const OperatorModel& model, const GridField& u0, double dt,
                       int steps);

// max over the grid of |u(.., y_{i+1}, ..) - u(.., y_i, ..)| along one axis
double y_independence_deviation(const GridField& field, int axis);

// Growth label for t -> u(0, t) samples: fits the slope b of log u against t
// by least squares and reports whether b <= eps, i.e. whether u(0,t) e^{-eps t}
// stays bounded along the fitted trend. Needs at least 3 samples.
bool liouville_growth_check(const std::vector<std::pair<double, double>>& u_samples,
                            double eps);

// Exponential solution exp(<x, alpha> + |alpha|^2 t) with alpha supported on
// the generator coordinates; the stationary factor exp(<x, alpha>) solves the
// stationary equation with lambda = -|alpha|^2.
struct ExtremalSolution {
  std::vector<double> alpha;
  double lambda = 0.0;  // -|alpha|^2

  double parabolic(const Point& z) const;
  double stationary(const std::vector<double>& x) const;
  std::function<double(const Point&)> as_function() const;
};

ExtremalSolution extremal(const OperatorModel& model, const std::vector<double>& alpha);

// CSV serialization: axis metadata header, then one row per node with
// coordinates and value at 17 significant digits.
std::string grid_to_csv(const GridField& field);
GridField grid_from_csv(const std::string& csv);

}  // namespace hypoflow

#endif
