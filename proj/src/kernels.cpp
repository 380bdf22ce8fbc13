#include "hypoflow/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace hypoflow {

KernelValue make_kernel_value(double log_value) {
  KernelValue kv;
  kv.log_value = log_value;
  kv.value = std::exp(log_value);
  return kv;
}

KernelValue kolmogorov_kernel(int m, const Point& z, const Point& zeta) {
  if (m < 1) throw std::invalid_argument("kolmogorov_kernel: m >= 1");
  if (z.spatial_dim() != 2 * m || zeta.spatial_dim() != 2 * m)
    throw std::invalid_argument("kolmogorov_kernel: points must have n = 2m");
  double dt = z.time - zeta.time;
  if (dt <= 0.0) return KernelValue{};
  double logv = 0.5 * m * std::log(3.0 / (2.0 * M_PI)) - 2.0 * m * std::log(dt);
  for (int j = 0; j < m; ++j) {
    double dx = z.spatial[static_cast<size_t>(j)] - zeta.spatial[static_cast<size_t>(j)];
    double c = z.spatial[static_cast<size_t>(m + j)] - zeta.spatial[static_cast<size_t>(m + j)] +
               0.5 * dt * (z.spatial[static_cast<size_t>(j)] + zeta.spatial[static_cast<size_t>(j)]);
    logv -= dx * dx / (4.0 * dt);
    logv -= 3.0 * c * c / (dt * dt * dt);
  }
  return make_kernel_value(logv);
}

KernelValue heat_kernel(int N, const Point& z, const Point& zeta) {
  if (N < 1) throw std::invalid_argument("heat_kernel: N >= 1");
  if (z.spatial_dim() != N || zeta.spatial_dim() != N)
    throw std::invalid_argument("heat_kernel: points must have dimension N");
  double dt = z.time - zeta.time;
  if (dt <= 0.0) return KernelValue{};
  double logv = -0.5 * N * std::log(4.0 * M_PI * dt);
  for (int j = 0; j < N; ++j) {
    double dx = z.spatial[static_cast<size_t>(j)] - zeta.spatial[static_cast<size_t>(j)];
    logv -= dx * dx / (4.0 * dt);
  }
  return make_kernel_value(logv);
}

double ou_minimal_log(double lambda, double x, double t) {
  double et = std::exp(t);
  return lambda * lambda * et * et - std::sqrt(2.0) * lambda * x * et;
}

double ou_minimal(double lambda, double x, double t) {
  return std::exp(ou_minimal_log(lambda, x, t));
}

namespace {

// one RK4 step along the frozen spatial generator, lifted to space-time
Point frozen_flow(const OperatorModel& model, int j, double h, const Point& z) {
  VectorField F = spacetime_generator(model, j);
  std::vector<double> y = pack(z);
  size_t d = y.size();
  std::vector<double> k1(d), k2(d), k3(d), k4(d), tmp(d);
  F.coeff(y.data(), k1.data());
  for (size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  F.coeff(tmp.data(), k2.data());
  for (size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  F.coeff(tmp.data(), k3.data());
  for (size_t i = 0; i < d; ++i) tmp[i] = y[i] + h * k3[i];
  F.coeff(tmp.data(), k4.data());
  for (size_t i = 0; i < d; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
  return unpack(y);
}

}  // namespace

double pde_residual(const OperatorModel& model,
                    const std::function<double(const Point&)>& u, const Point& z,
                    double h) {
  double uz = u(z);
  if (!std::isfinite(uz)) throw std::domain_error("pde_residual: non-finite evaluation");

  Point zp = z, zm = z;
  zp.time += h;
  zm.time -= h;
  double dt = (u(zp) - u(zm)) / (2.0 * h);

  double diff = 0.0;
  for (int j = 0; j < model.m; ++j) {
    Point fp = frozen_flow(model, j, h, z);
    Point fm = frozen_flow(model, j, -h, z);
    diff += (u(fp) - 2.0 * uz + u(fm)) / (h * h);
  }

  std::vector<double> b = model.drift_x0.eval(z.spatial);
  double x0u = 0.0;
  for (int i = 0; i < model.n; ++i) {
    if (b[static_cast<size_t>(i)] == 0.0) continue;
    Point xp = z, xm = z;
    xp.spatial[static_cast<size_t>(i)] += h;
    xm.spatial[static_cast<size_t>(i)] -= h;
    x0u += b[static_cast<size_t>(i)] * (u(xp) - u(xm)) / (2.0 * h);
  }

  double res = dt - diff - x0u;
  if (!std::isfinite(res)) throw std::domain_error("pde_residual: non-finite evaluation");
  return res;
}

double kernel_invariance_residual(int m, const Point& g, const Point& z,
                                  const Point& zeta) {
  if (z.time <= zeta.time)
    throw std::invalid_argument("kernel_invariance_residual: requires t > tau");
  OperatorModel md = models::kolmogorov(m);
  double base = kolmogorov_kernel(m, z, zeta).log_value;

  Point gz = compose(md.law, g, z);
  Point gzeta = compose(md.law, g, zeta);
  double res = std::fabs(std::exp(kolmogorov_kernel(m, gz, gzeta).log_value - base) - 1.0);

  const double r_grid[] = {0.5, 0.8, 1.25, 2.0};
  for (double r : r_grid) {
    Point dz = dilate(*md.dilation, r, z);
    Point dzeta = dilate(*md.dilation, r, zeta);
    double lq = 4.0 * m * std::log(r) + kolmogorov_kernel(m, dz, dzeta).log_value - base;
    res = std::max(res, std::fabs(std::exp(lq) - 1.0));
  }
  return res;
}

double martin_quotient(int m, double T, const MartinSequence& seq, long k,
                       const Point& z) {
  std::vector<double> xi, eta;
  double tau = 0.0;
  seq.generator(k, xi, eta, tau);
  if (tau >= T)
    throw std::domain_error("martin_quotient: tau_k >= T, normalization kernel vanishes");
  std::vector<double> sp(xi);
  sp.insert(sp.end(), eta.begin(), eta.end());
  Point zk(sp, tau);
  Point base(std::vector<double>(static_cast<size_t>(2 * m), 0.0), T);
  KernelValue num = kolmogorov_kernel(m, z, zk);
  if (num.is_zero()) return 0.0;
  KernelValue den = kolmogorov_kernel(m, base, zk);
  return std::exp(num.log_value - den.log_value);
}

std::function<double(const Point&)> martin_limit_predicted(
    const std::vector<double>& w1, const std::vector<double>& w2) {
  if (w1.size() != w2.size())
    throw std::invalid_argument("martin_limit_predicted: dimension mismatch");
  std::vector<double> v(w1.size());
  double v2 = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    v[i] = 3.0 * w2[i] - 2.0 * w1[i];
    v2 += v[i] * v[i];
  }
  return [v, v2](const Point& z) {
    double e = v2 * z.time;
    for (size_t i = 0; i < v.size(); ++i) e += v[i] * z.spatial[i];
    return std::exp(e);
  };
}

NormalizedSequence normalized_sequence(const MartinSequence& seq, long k) {
  std::vector<double> xi, eta;
  double tau = 0.0;
  seq.generator(k, xi, eta, tau);
  if (tau >= 0.0) throw std::domain_error("normalized_sequence: requires tau_k < 0");
  NormalizedSequence out;
  out.xi.resize(xi.size());
  out.eta.resize(eta.size());
  out.predictor.resize(xi.size());
  for (size_t i = 0; i < xi.size(); ++i) {
    out.xi[i] = xi[i] / (-tau);
    out.eta[i] = eta[i] / (tau * tau);
    out.predictor[i] = 3.0 * out.eta[i] - out.xi[i];
  }
  return out;
}

namespace {

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double fa,
                            double b, double fb, double m, double fm, double whole,
                            double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, fa, flm, m, fm);
  double right = simpson(m, fm, frm, b, fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  double whole = simpson(a, fa, fm, b, fb);
  return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

double kolmogorov_mass(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("kolmogorov_mass: dt > 0");
  // Gaussian scales of the two exponent terms
  double sx = std::sqrt(2.0 * dt);
  double sy = std::sqrt(dt * dt * dt / 6.0);
  double ax = -8.0 * sx, bx = 8.0 * sx;
  Point zeta({0.0, 0.0}, 0.0);
  auto outer = [&](double x) {
    double yc = -0.5 * dt * x;  // center of the y-Gaussian at this x
    auto inner = [&](double y) {
      return kolmogorov_kernel(1, Point({x, y}, dt), zeta).value;
    };
    return adaptive_simpson(inner, yc - 8.0 * sy, yc + 8.0 * sy, 1e-12);
  };
  return adaptive_simpson(outer, ax, bx, 1e-10);
}

double heat_mass(int N, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("heat_mass: dt > 0");
  double s = std::sqrt(2.0 * dt);
  double L = 8.0 * s;
  if (N == 1) {
    auto f = [&](double x) { return heat_kernel(1, Point({x}, dt), Point({0.0}, 0.0)).value; };
    return adaptive_simpson(f, -L, L, 1e-12);
  }
  if (N == 2) {
    Point zeta({0.0, 0.0}, 0.0);
    auto outer = [&](double x) {
      auto inner = [&](double y) { return heat_kernel(2, Point({x, y}, dt), zeta).value; };
      return adaptive_simpson(inner, -L, L, 1e-12);
    };
    return adaptive_simpson(outer, -L, L, 1e-10);
  }
  throw std::invalid_argument("heat_mass: only N = 1, 2 supported");
}

double chapman_kolmogorov_constant(const Point& z, const Point& zeta) {
  double t = z.time, tau = zeta.time;
  if (!(t > tau)) throw std::invalid_argument("chapman_kolmogorov_constant: t > tau");
  double tw = 0.5 * (t + tau);
  double d1 = t - tw, d2 = tw - tau;
  double s1 = std::sqrt(2.0 * d1), s2 = std::sqrt(2.0 * d2);
  double ax = std::min(z.spatial[0] - 8.0 * s1, zeta.spatial[0] - 8.0 * s2);
  double bx = std::max(z.spatial[0] + 8.0 * s1, zeta.spatial[0] + 8.0 * s2);
  double sy1 = std::sqrt(d1 * d1 * d1 / 6.0), sy2 = std::sqrt(d2 * d2 * d2 / 6.0);
  double pad = 8.0 * std::max(sy1, sy2);

  auto outer = [&](double xw) {
    // y-centers of the two factors at this intermediate x
    double c1 = z.spatial[1] + 0.5 * d1 * (z.spatial[0] + xw);
    double c2 = zeta.spatial[1] - 0.5 * d2 * (xw + zeta.spatial[0]);
    double ay = std::min(c1, c2) - pad, by = std::max(c1, c2) + pad;
    auto inner = [&](double yw) {
      Point w({xw, yw}, tw);
      return kolmogorov_kernel(1, z, w).value * kolmogorov_kernel(1, w, zeta).value;
    };
    return adaptive_simpson(inner, ay, by, 1e-13);
  };
  double integral = adaptive_simpson(outer, ax, bx, 1e-11);
  return integral / kolmogorov_kernel(1, z, zeta).value;
}

}  // namespace hypoflow
