#ifndef HYPOFLOW_GEOMETRY_HPP
#define HYPOFLOW_GEOMETRY_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypoflow {

// Space-time point z = (x, t), x in R^N. The time coordinate is carried
// separately from the spatial block; flows always move it at unit rate.
struct Point {
  std::vector<double> spatial;
  double time = 0.0;

  Point() = default;
  Point(std::vector<double> x, double t) : spatial(std::move(x)), time(t) {}

  int spatial_dim() const { return static_cast<int>(spatial.size()); }
  int dim() const { return spatial_dim() + 1; }

  // coordinate i: spatial for i < N, time for i == N
  double coord(int i) const {
    return i < spatial_dim() ? spatial[static_cast<size_t>(i)] : time;
  }
  double& coord(int i) {
    return i < spatial_dim() ? spatial[static_cast<size_t>(i)] : time;
  }
};

inline bool finite(const Point& z) {
  if (!std::isfinite(z.time)) return false;
  for (double c : z.spatial)
    if (!std::isfinite(c)) return false;
  return true;
}

inline double max_abs(const Point& z) {
  double m = std::fabs(z.time);
  for (double c : z.spatial) m = std::max(m, std::fabs(c));
  return m;
}

// sup-norm distance between two points of equal dimension
inline double dist_inf(const Point& a, const Point& b) {
  double m = std::fabs(a.time - b.time);
  for (size_t i = 0; i < a.spatial.size(); ++i)
    m = std::max(m, std::fabs(a.spatial[i] - b.spatial[i]));
  return m;
}

// Lie group structure on R^{N+1}.
struct GroupLaw {
  int dim = 0;  // N+1
  std::function<Point(const Point&, const Point&)> compose_fn;
  std::function<Point(const Point&)> inverse_fn;
  Point identity;
};

Point compose(const GroupLaw& law, const Point& a, const Point& b);
Point inverse(const GroupLaw& law, const Point& a);

// Anisotropic dilation: coordinate i scales as r^exponents[i]
// (spatial exponents first, time exponent last).
struct Dilation {
  std::vector<int> exponents;
};

Point dilate(const Dilation& dil, double r, const Point& z);

// sup-norm defect of the automorphism identity
// delta_r(a o b) = delta_r(a) o delta_r(b).
double automorphism_residual(const GroupLaw& law, const Dilation& dil, double r,
                             const Point& a, const Point& b);

// Stratification of R^N into layers; first layer holds the generators.
struct LayerStructure {
  std::vector<int> sizes;
  int total() const {
    int s = 0;
    for (int k : sizes) s += k;
    return s;
  }
};

// Residuals used by the group-axiom suites. All are scale-relative:
// the raw sup-norm defect divided by max(1, magnitude of the operands),
// so that tolerances remain meaningful for large coordinates.
double associativity_residual(const GroupLaw& law, const Point& a,
                              const Point& b, const Point& c);
double identity_residual(const GroupLaw& law, const Point& a);
double inverse_residual(const GroupLaw& law, const Point& a);

}  // namespace hypoflow

#endif
