#ifndef HYPOFLOW_RNG_HPP
#define HYPOFLOW_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace hypoflow {

// Seeded generator with hand-rolled distributions, so that a seed produces
// the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, 1)
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // uniform in {0, ..., n-1}
  int below(int n) {
    return static_cast<int>((static_cast<unsigned __int128>(eng_()) *
                             static_cast<unsigned __int128>(n)) >> 64);
  }

  std::vector<double> vector(int n, double a, double b) {
    std::vector<double> v(static_cast<size_t>(n));
    for (double& x : v) x = uniform(a, b);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hypoflow

#endif
