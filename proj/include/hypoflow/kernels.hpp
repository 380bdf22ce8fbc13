#ifndef HYPOFLOW_KERNELS_HPP
#define HYPOFLOW_KERNELS_HPP

#include <functional>
#include <limits>
#include <vector>

#include "hypoflow/models.hpp"

namespace hypoflow {

// Kernel evaluation carried in log-space; value = exp(log_value), with
// log_value = -inf encoding the exact zero on {t <= tau}.
struct KernelValue {
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();

  bool is_zero() const { return log_value == -std::numeric_limits<double>::infinity(); }
};

KernelValue make_kernel_value(double log_value);

// Fundamental solution of the Kolmogorov operator in R^m x R^m x R:
//   (3/2pi)^{m/2} (t-tau)^{-2m}
//     exp(-|x-xi|^2 / (4(t-tau)) - 3 |y - eta + (t-tau)/2 (x+xi)|^2 / (t-tau)^3)
// for t > tau, zero otherwise. z and zeta are points with n = 2m.
KernelValue kolmogorov_kernel(int m, const Point& z, const Point& zeta);

// Gaussian kernel of d_t = Laplace in R^N.
KernelValue heat_kernel(int N, const Point& z, const Point& zeta);

// Minimal positive solution of the 1-d Ornstein-Uhlenbeck equation:
// exp(lambda^2 e^{2t} - sqrt(2) lambda x e^t).
double ou_minimal(double lambda, double x, double t);
double ou_minimal_log(double lambda, double x, double t);

// Finite-difference evaluation of L u = d_t u - sum_j Xj^2 u - X0 u at z.
// Second-order terms use the second difference of u along the RK4 flow of
// the frozen generator; d_t and X0 use central differences.
double pde_residual(const OperatorModel& model,
                    const std::function<double(const Point&)>& u, const Point& z,
                    double h = 1e-3);

// max over left translation by g and a fixed r-grid {0.5, 0.8, 1.25, 2} of
// |Gamma(g o z, g o zeta)/Gamma(z,zeta) - 1| and
// |r^{4m} Gamma(d_r z, d_r zeta)/Gamma(z,zeta) - 1|.
double kernel_invariance_residual(int m, const Point& g, const Point& z,
                                  const Point& zeta);

// Parameterized family k -> (xi_k, eta_k, tau_k) with normalization point
// (0, 0, T); requires tau_k < T wherever it is evaluated.
struct MartinSequence {
  int m = 1;
  double T = 0.0;
  std::function<void(long k, std::vector<double>& xi, std::vector<double>& eta,
                     double& tau)> generator;
};

// u_k(z) = Gamma(z, zeta_k) / Gamma((0,0,T), zeta_k), evaluated as a
// difference of log-kernels.
double martin_quotient(int m, double T, const MartinSequence& seq, long k,
                       const Point& z);

// limit along (2k w1, k^2 w2, -k): exp(<x, v> + t |v|^2) with v = 3w2 - 2w1
std::function<double(const Point&)> martin_limit_predicted(
    const std::vector<double>& w1, const std::vector<double>& w2);

struct NormalizedSequence {
  std::vector<double> xi;        // xi_k / (-tau_k)
  std::vector<double> eta;       // eta_k / tau_k^2
  std::vector<double> predictor; // 3 eta~ - xi~
};

NormalizedSequence normalized_sequence(const MartinSequence& seq, long k);

// adaptive Simpson quadrature on [a, b] to absolute tolerance tol
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol);

// total mass of the m = 1 Kolmogorov kernel over (x, y) at time gap dt
double kolmogorov_mass(double dt);

// total mass of the heat kernel in R^N (N = 1 or 2) at time gap dt
double heat_mass(int N, double dt);

// single Chapman-Kolmogorov constant: int Gamma(z,w) Gamma(w,zeta) dw / Gamma(z,zeta)
// with w at the midpoint time (m = 1)
double chapman_kolmogorov_constant(const Point& z, const Point& zeta);

}  // namespace hypoflow

#endif
