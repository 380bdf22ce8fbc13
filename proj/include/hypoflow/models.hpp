#ifndef HYPOFLOW_MODELS_HPP
#define HYPOFLOW_MODELS_HPP

#include <optional>
#include <string>
#include <vector>

#include "hypoflow/fields.hpp"
#include "hypoflow/geometry.hpp"

namespace hypoflow {

enum class KernelKind { none, heat, kolmogorov };
enum class OracleKind { none, driftless, mumford, cmp };

// One operator L u = d_t u - sum_j Xj^2 u - X0 u bundled with the geometry it
// is invariant under and whatever closed-form artifacts exist for it.
struct OperatorModel {
  std::string name;
  int n = 0;  // spatial dimension
  int m = 0;  // number of generator fields
  std::vector<VectorField> generators;  // spatial, dim n
  VectorField drift_x0;                 // spatial, dim n (zero field when absent)
  GroupLaw law;                         // on R^{n+1}
  std::optional<Dilation> dilation;     // exponents: n spatial + time
  std::optional<LayerStructure> layers; // stratified models only

  // exp(s (omega.X + Y)) z0, valid for any real s
  std::function<Point(const std::vector<double>&, double, const Point&)> exp_closed;

  bool left_invariant = true;  // generators and drift invariant under law
  OracleKind oracle = OracleKind::none;
  KernelKind kernel = KernelKind::none;
  bool has_extremals = false;  // closed-form exponential solution catalog
  int min_hormander_order = 1;
};

// flatten to (spatial..., time) and back
std::vector<double> pack(const Point& z);
Point unpack(const std::vector<double>& state);

namespace models {

OperatorModel heat(int n = 2);
OperatorModel heisenberg_heat();
OperatorModel kolmogorov(int m = 1);
OperatorModel mumford();
OperatorModel cmp();
OperatorModel grushin();
OperatorModel grushin_lifted();
OperatorModel ou();
OperatorModel linked();

// the nine builtin models at their default dimensions
std::vector<OperatorModel> catalog();
OperatorModel by_name(const std::string& name);

}  // namespace models

// Space-time drift Y = X0 - d_t (dim n+1, time slot last, time coefficient -1).
VectorField drift(const OperatorModel& model);

// Generator j embedded in space-time with zero time coefficient.
VectorField spacetime_generator(const OperatorModel& model, int j);

// Spatial field omega.X + X0 embedded in space-time with time coefficient -1.
VectorField control_drift_field(const OperatorModel& model,
                                const std::vector<double>& omega);

// Dimension of span{X1..Xm, Y} plus iterated brackets up to max_order,
// evaluated at z. Order 1 is the fields themselves; order k collects all
// brackets [a,b] with order(a)+order(b) = k.
int hormander_rank(const OperatorModel& model, const Point& z, int max_order);

// |(Xj f)(zeta o z) - Xj(f(zeta o .))(z)| with both sides by central
// differences; j in 1..m selects a generator, j = 0 the drift Y.
double left_invariance_residual(const OperatorModel& model, int j,
                                const Point& zeta, const Point& z,
                                const std::function<double(const Point&)>& f);

// (x,t) -> e^{-lambda t} u(x,t); maps solutions of Lw = lambda w to solutions
// of Lw = 0.
std::function<double(const Point&)> gauge_shift(
    const std::function<double(const Point&)>& u, double lambda);

// Fixed family of smooth test functions used by the invariance suites:
// polynomials up to degree 3 and products with sin/cos of single coordinates.
std::vector<std::function<double(const Point&)>> invariance_test_functions(int n);

}  // namespace hypoflow

#endif
