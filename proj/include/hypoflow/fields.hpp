#ifndef HYPOFLOW_FIELDS_HPP
#define HYPOFLOW_FIELDS_HPP

#include <functional>
#include <optional>
#include <vector>

#include "hypoflow/geometry.hpp"

namespace hypoflow {

// First-order operator sum_k b_k(x) d/dx_k, identified with the coefficient
// map x -> b(x). Coordinates are raw arrays of length dim; spatial fields use
// dim = N, space-time fields dim = N+1 with the time slot last.
//
// jacobian fills J[k*dim + i] = d b_k / d x_i (row-major). hessian fills
// H[(k*dim + j)*dim + i] = d^2 b_k / (d x_j d x_i). When jacobian is absent a
// central difference with step 1e-5 * max(1, |x|_inf) is substituted; an
// absent hessian limits bracket results to numeric Jacobians.
struct VectorField {
  int dim = 0;
  std::function<void(const double* x, double* out)> coeff;
  std::function<void(const double* x, double* jac)> jacobian;
  std::function<void(const double* x, double* hess)> hessian;

  bool analytic() const { return static_cast<bool>(jacobian); }

  std::vector<double> eval(const std::vector<double>& x) const;
  std::vector<double> eval_jacobian(const std::vector<double>& x) const;

  // directional derivative of a scalar function: (X f)(x), central differences
  double apply(const std::function<double(const std::vector<double>&)>& f,
               const std::vector<double>& x, double step = 1e-5) const;
};

VectorField zero_field(int dim);
VectorField constant_field(std::vector<double> b);

// no-op second derivatives, for fields with affine coefficients
std::function<void(const double*, double*)> zero_hessian(int dim);

// Commutator [X, Z](p) = DZ(p) X(p) - DX(p) Z(p). The result's coefficients
// are exact when both operands carry analytic Jacobians; its own Jacobian is
// analytic when both operands additionally carry Hessians, numeric otherwise.
VectorField bracket(const VectorField& X, const VectorField& Z);

// sup-norm of [X,[Z,W]] + [Z,[W,X]] + [W,[X,Z]] at x
double jacobi_residual(const VectorField& X, const VectorField& Z,
                       const VectorField& W, const std::vector<double>& x);

// Rank of a set of vectors (rows) by Gaussian elimination with a pivot
// threshold relative to the largest row norm.
int numeric_rank(std::vector<std::vector<double>> rows, double rel_pivot = 1e-9);

}  // namespace hypoflow

#endif
