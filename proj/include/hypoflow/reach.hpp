#ifndef HYPOFLOW_REACH_HPP
#define HYPOFLOW_REACH_HPP

#include <cstdint>
#include <vector>

#include "hypoflow/flows.hpp"
#include "hypoflow/models.hpp"

namespace hypoflow {

enum class Verdict { inside, boundary, outside, unknown };

// margin > eps: inside; |margin| <= eps: boundary; margin < -eps: outside.
// The margin is the smallest slack among the oracle's constraints, in the
// oracle's own units.
struct MembershipVerdict {
  Verdict verdict = Verdict::unknown;
  double margin = 0.0;
};

const char* verdict_name(Verdict v);

// Endpoints of seeded random piecewise-constant-control paths from z0.
struct ReachCloud {
  Point origin;
  std::vector<Point> endpoints;
  std::vector<ControlSchedule> controls;
  double horizon = 0.0;
  int dropped = 0;  // paths lost to integration blow-up
};

ReachCloud sample_attainable(const OperatorModel& model, const Point& z0, int n_paths,
                             int segments, double omega_bound, double horizon,
                             std::uint64_t seed);

// Analytic attainable-set oracle where one exists; `unknown` otherwise.
MembershipVerdict membership(const OperatorModel& model, const Point& z0,
                             const Point& z, double eps = 1e-9);

// fraction of probes within eps (sup-norm) of some cloud endpoint
double interior_coverage(const OperatorModel& model, const Point& z0,
                         const ReachCloud& cloud, const std::vector<Point>& probes,
                         double eps);

}  // namespace hypoflow

#endif
