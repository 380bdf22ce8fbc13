#include "hypoflow/geometry.hpp"

#include <algorithm>

namespace hypoflow {

static void check_dim(const GroupLaw& law, const Point& z, const char* who) {
  if (z.dim() != law.dim)
    throw std::invalid_argument(std::string(who) + ": point dimension " +
                                std::to_string(z.dim()) +
                                " incompatible with group dimension " +
                                std::to_string(law.dim));
}

Point compose(const GroupLaw& law, const Point& a, const Point& b) {
  check_dim(law, a, "compose");
  check_dim(law, b, "compose");
  return law.compose_fn(a, b);
}

Point inverse(const GroupLaw& law, const Point& a) {
  check_dim(law, a, "inverse");
  return law.inverse_fn(a);
}

Point dilate(const Dilation& dil, double r, const Point& z) {
  if (!(r > 0.0)) throw std::invalid_argument("dilate: r must be positive");
  if (static_cast<int>(dil.exponents.size()) != z.dim())
    throw std::invalid_argument("dilate: exponent count mismatch");
  Point out = z;
  for (int i = 0; i < z.dim(); ++i)
    out.coord(i) = std::pow(r, dil.exponents[static_cast<size_t>(i)]) * z.coord(i);
  return out;
}

double automorphism_residual(const GroupLaw& law, const Dilation& dil, double r,
                             const Point& a, const Point& b) {
  Point lhs = dilate(dil, r, compose(law, a, b));
  Point rhs = compose(law, dilate(dil, r, a), dilate(dil, r, b));
  double scale = std::max({1.0, max_abs(lhs), max_abs(rhs)});
  return dist_inf(lhs, rhs) / scale;
}

double associativity_residual(const GroupLaw& law, const Point& a,
                              const Point& b, const Point& c) {
  Point lhs = compose(law, compose(law, a, b), c);
  Point rhs = compose(law, a, compose(law, b, c));
  double scale = std::max({1.0, max_abs(lhs), max_abs(rhs)});
  return dist_inf(lhs, rhs) / scale;
}

double identity_residual(const GroupLaw& law, const Point& a) {
  double left = dist_inf(compose(law, law.identity, a), a);
  double right = dist_inf(compose(law, a, law.identity), a);
  return std::max(left, right) / std::max(1.0, max_abs(a));
}

double inverse_residual(const GroupLaw& law, const Point& a) {
  Point ai = inverse(law, a);
  double scale = std::max({1.0, max_abs(a), max_abs(ai)});
  double left = dist_inf(compose(law, ai, a), law.identity);
  double right = dist_inf(compose(law, a, ai), law.identity);
  return std::max(left, right) / scale;
}

}  // namespace hypoflow
