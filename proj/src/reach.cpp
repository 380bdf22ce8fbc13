#include "hypoflow/reach.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hypoflow/rng.hpp"

namespace hypoflow {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::inside: return "inside";
    case Verdict::boundary: return "boundary";
    case Verdict::outside: return "outside";
    default: return "unknown";
  }
}

ReachCloud sample_attainable(const OperatorModel& model, const Point& z0, int n_paths,
                             int segments, double omega_bound, double horizon,
                             std::uint64_t seed) {
  if (n_paths < 1 || segments < 1)
    throw std::invalid_argument("sample_attainable: n_paths, segments >= 1");
  if (!(omega_bound > 0.0) || !(horizon > 0.0))
    throw std::invalid_argument("sample_attainable: omega_bound, horizon > 0");
  if (!finite(z0)) throw std::invalid_argument("sample_attainable: z0 must be finite");

  ReachCloud cloud;
  cloud.origin = z0;
  cloud.horizon = horizon;
  Rng rng(seed);
  double max_seg = horizon / segments;

  for (int p = 0; p < n_paths; ++p) {
    ControlSchedule sched;
    double shortest = max_seg;
    for (int s = 0; s < segments; ++s) {
      ControlSchedule::Segment seg;
      // duration uniform on (0, horizon/segments]
      seg.duration = (1.0 - rng.uniform01()) * max_seg;
      seg.omega = rng.vector(model.m, -omega_bound, omega_bound);
      shortest = std::min(shortest, seg.duration);
      sched.segments.push_back(std::move(seg));
    }
    double step = std::min(1e-2, shortest);
    try {
      Path path = integrate_admissible(model, sched, z0, step);
      cloud.endpoints.push_back(path.endpoint());
      cloud.controls.push_back(std::move(sched));
    } catch (const FlowBlowup&) {
      ++cloud.dropped;
    }
  }
  return cloud;
}

namespace {

MembershipVerdict classify(double margin, double eps) {
  MembershipVerdict mv;
  mv.margin = margin;
  if (std::fabs(margin) <= eps)
    mv.verdict = Verdict::boundary;
  else
    mv.verdict = margin > 0.0 ? Verdict::inside : Verdict::outside;
  return mv;
}

}  // namespace

MembershipVerdict membership(const OperatorModel& model, const Point& z0,
                             const Point& z, double eps) {
  switch (model.oracle) {
    case OracleKind::mumford: {
      double dy = z.spatial[1] - z0.spatial[1];
      double dw = z.spatial[2] - z0.spatial[2];
      double margin = (z0.time - z.time) - std::sqrt(dy * dy + dw * dw);
      return classify(margin, eps);
    }
    case OracleKind::cmp: {
      double dtm = z0.time - z.time;
      double dy = z.spatial[1] - z0.spatial[1];
      double dw = z.spatial[2] - z0.spatial[2];
      double margin = std::min({dtm, dy, dy * dtm - dw * dw});
      return classify(margin, eps);
    }
    case OracleKind::driftless:
      // bracket-generating generators reach any point of the cylinder below z0
      return classify(z0.time - z.time, eps);
    default:
      return MembershipVerdict{};
  }
}

double interior_coverage(const OperatorModel& model, const Point& z0,
                         const ReachCloud& cloud, const std::vector<Point>& probes,
                         double eps) {
  for (const Point& p : probes) {
    MembershipVerdict mv = membership(model, z0, p);
    if (mv.verdict != Verdict::inside)
      throw std::invalid_argument("interior_coverage: probe not strictly inside");
  }
  if (probes.empty()) return 0.0;
  if (cloud.endpoints.empty()) return 0.0;
  int hit = 0;
  for (const Point& p : probes) {
    for (const Point& e : cloud.endpoints)
      if (dist_inf(p, e) <= eps) {
        ++hit;
        break;
      }
  }
  return static_cast<double>(hit) / static_cast<double>(probes.size());
}

}  // namespace hypoflow
