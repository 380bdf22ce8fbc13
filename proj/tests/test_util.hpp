#ifndef HYPOFLOW_TEST_UTIL_HPP
#define HYPOFLOW_TEST_UTIL_HPP

#include <vector>

#include "hypoflow/geometry.hpp"
#include "hypoflow/rng.hpp"

namespace hftest {

inline hypoflow::Point rand_point(hypoflow::Rng& rng, int n, double lo = -10.0,
                                  double hi = 10.0) {
  return hypoflow::Point(rng.vector(n, lo, hi), rng.uniform(lo, hi));
}

inline hypoflow::Point pt(std::vector<double> spatial, double t) {
  return hypoflow::Point(std::move(spatial), t);
}

}  // namespace hftest

#endif
