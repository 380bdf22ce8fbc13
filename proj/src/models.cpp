#include "hypoflow/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace hypoflow {

std::vector<double> pack(const Point& z) {
  std::vector<double> s(z.spatial);
  s.push_back(z.time);
  return s;
}

Point unpack(const std::vector<double>& s) {
  Point z;
  z.spatial.assign(s.begin(), s.end() - 1);
  z.time = s.back();
  return z;
}

namespace {

GroupLaw product_law(int n) {
  // direct product of Euclidean translations in space and time
  GroupLaw law;
  law.dim = n + 1;
  law.identity = Point(std::vector<double>(static_cast<size_t>(n), 0.0), 0.0);
  law.compose_fn = [](const Point& a, const Point& b) {
    Point out = a;
    for (size_t i = 0; i < out.spatial.size(); ++i) out.spatial[i] += b.spatial[i];
    out.time += b.time;
    return out;
  };
  law.inverse_fn = [](const Point& a) {
    Point out = a;
    for (double& c : out.spatial) c = -c;
    out.time = -out.time;
    return out;
  };
  return law;
}

VectorField basis_field(int dim, int k) {
  std::vector<double> b(static_cast<size_t>(dim), 0.0);
  b[static_cast<size_t>(k)] = 1.0;
  return constant_field(std::move(b));
}

// mumford control legs: (int_0^s cos(x + w u) du, int_0^s sin(x + w u) du).
// The closed form divides a trig difference by w, which cancels badly for
// small |s w|; a fourth-order series takes over below the crossover.
void rotation_increments(double x, double w, double s, double& dy, double& dw) {
  double h = s * w;
  if (std::fabs(h) < 1e-4) {
    double c = std::cos(x), sn = std::sin(x);
    double h2 = h * h;
    dy = s * (c - 0.5 * h * sn - h2 / 6.0 * c + h * h2 / 24.0 * sn);
    dw = s * (sn + 0.5 * h * c - h2 / 6.0 * sn - h * h2 / 24.0 * c);
  } else {
    dy = (std::sin(x + h) - std::sin(x)) / w;
    dw = -(std::cos(x + h) - std::cos(x)) / w;
  }
}

}  // namespace

namespace models {

OperatorModel heat(int n) {
  OperatorModel md;
  md.name = "heat";
  md.n = n;
  md.m = n;
  for (int j = 0; j < n; ++j) md.generators.push_back(basis_field(n, j));
  md.drift_x0 = zero_field(n);
  md.law = product_law(n);
  Dilation dil;
  dil.exponents.assign(static_cast<size_t>(n), 1);
  dil.exponents.push_back(2);
  md.dilation = dil;
  md.layers = LayerStructure{{n}};
  md.exp_closed = [n](const std::vector<double>& omega, double s, const Point& z0) {
    Point z = z0;
    for (int j = 0; j < n; ++j) z.spatial[static_cast<size_t>(j)] += s * omega[static_cast<size_t>(j)];
    z.time -= s;
    return z;
  };
  md.oracle = OracleKind::driftless;
  md.kernel = KernelKind::heat;
  md.has_extremals = true;
  md.min_hormander_order = 1;
  return md;
}

OperatorModel heisenberg_heat() {
  OperatorModel md;
  md.name = "heisenberg_heat";
  md.n = 3;
  md.m = 2;

  VectorField x1;
  x1.dim = 3;
  x1.coeff = [](const double* x, double* out) {
    out[0] = 1.0;
    out[1] = 0.0;
    out[2] = -0.5 * x[1];
  };
  x1.jacobian = [](const double*, double* J) {
    std::memset(J, 0, sizeof(double) * 9);
    J[2 * 3 + 1] = -0.5;
  };
  x1.hessian = zero_hessian(3);

  VectorField x2;
  x2.dim = 3;
  x2.coeff = [](const double* x, double* out) {
    out[0] = 0.0;
    out[1] = 1.0;
    out[2] = 0.5 * x[0];
  };
  x2.jacobian = [](const double*, double* J) {
    std::memset(J, 0, sizeof(double) * 9);
    J[2 * 3 + 0] = 0.5;
  };
  x2.hessian = zero_hessian(3);

  md.generators = {x1, x2};
  md.drift_x0 = zero_field(3);

  GroupLaw law;
  law.dim = 4;
  law.identity = Point({0, 0, 0}, 0.0);
  law.compose_fn = [](const Point& a, const Point& b) {
    const auto& p = a.spatial;
    const auto& q = b.spatial;
    return Point({p[0] + q[0], p[1] + q[1],
                  p[2] + q[2] + 0.5 * (p[0] * q[1] - p[1] * q[0])},
                 a.time + b.time);
  };
  law.inverse_fn = [](const Point& a) {
    return Point({-a.spatial[0], -a.spatial[1], -a.spatial[2]}, -a.time);
  };
  md.law = law;
  md.dilation = Dilation{{1, 1, 2, 2}};
  md.layers = LayerStructure{{2, 1}};
  md.exp_closed = [](const std::vector<double>& w, double s, const Point& z0) {
    const auto& p = z0.spatial;
    return Point({p[0] + w[0] * s, p[1] + w[1] * s,
                  p[2] + 0.5 * s * (p[0] * w[1] - p[1] * w[0])},
                 z0.time - s);
  };
  md.oracle = OracleKind::driftless;
  md.has_extremals = true;
  md.min_hormander_order = 2;
  return md;
}

OperatorModel kolmogorov(int m) {
  OperatorModel md;
  md.name = "kolmogorov";
  md.n = 2 * m;
  md.m = m;
  int n = md.n;
  for (int j = 0; j < m; ++j) md.generators.push_back(basis_field(n, j));

  VectorField x0;
  x0.dim = n;
  x0.coeff = [n, m](const double* x, double* out) {
    std::memset(out, 0, sizeof(double) * static_cast<size_t>(n));
    for (int j = 0; j < m; ++j) out[m + j] = x[j];
  };
  x0.jacobian = [n, m](const double*, double* J) {
    std::memset(J, 0, sizeof(double) * static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int j = 0; j < m; ++j) J[(m + j) * n + j] = 1.0;
  };
  x0.hessian = zero_hessian(n);
  md.drift_x0 = x0;

  GroupLaw law;
  law.dim = n + 1;
  law.identity = Point(std::vector<double>(static_cast<size_t>(n), 0.0), 0.0);
  law.compose_fn = [m](const Point& a, const Point& b) {
    Point out = b;
    for (int j = 0; j < m; ++j) {
      out.spatial[static_cast<size_t>(j)] += a.spatial[static_cast<size_t>(j)];
      out.spatial[static_cast<size_t>(m + j)] +=
          a.spatial[static_cast<size_t>(m + j)] - b.time * a.spatial[static_cast<size_t>(j)];
    }
    out.time += a.time;
    return out;
  };
  law.inverse_fn = [m](const Point& a) {
    Point out = a;
    for (int j = 0; j < m; ++j) {
      out.spatial[static_cast<size_t>(j)] = -a.spatial[static_cast<size_t>(j)];
      out.spatial[static_cast<size_t>(m + j)] =
          -a.spatial[static_cast<size_t>(m + j)] - a.time * a.spatial[static_cast<size_t>(j)];
    }
    out.time = -a.time;
    return out;
  };
  md.law = law;

  Dilation dil;
  dil.exponents.assign(static_cast<size_t>(m), 1);
  dil.exponents.insert(dil.exponents.end(), static_cast<size_t>(m), 3);
  dil.exponents.push_back(2);
  md.dilation = dil;

  md.exp_closed = [m](const std::vector<double>& w, double s, const Point& z0) {
    Point z = z0;
    for (int j = 0; j < m; ++j) {
      double xj = z0.spatial[static_cast<size_t>(j)];
      z.spatial[static_cast<size_t>(j)] = xj + w[static_cast<size_t>(j)] * s;
      z.spatial[static_cast<size_t>(m + j)] +=
          xj * s + 0.5 * w[static_cast<size_t>(j)] * s * s;
    }
    z.time -= s;
    return z;
  };
  md.kernel = KernelKind::kolmogorov;
  md.has_extremals = true;
  md.min_hormander_order = 2;
  return md;
}

OperatorModel mumford() {
  OperatorModel md;
  md.name = "mumford";
  md.n = 3;  // (x, y, w)
  md.m = 1;
  md.generators = {basis_field(3, 0)};

  VectorField x0;
  x0.dim = 3;
  x0.coeff = [](const double* x, double* out) {
    out[0] = 0.0;
    out[1] = std::cos(x[0]);
    out[2] = std::sin(x[0]);
  };
  x0.jacobian = [](const double* x, double* J) {
    std::memset(J, 0, sizeof(double) * 9);
    J[1 * 3 + 0] = -std::sin(x[0]);
    J[2 * 3 + 0] = std::cos(x[0]);
  };
  x0.hessian = [](const double* x, double* H) {
    std::memset(H, 0, sizeof(double) * 27);
    H[(1 * 3 + 0) * 3 + 0] = -std::cos(x[0]);
    H[(2 * 3 + 0) * 3 + 0] = -std::sin(x[0]);
  };
  md.drift_x0 = x0;

  GroupLaw law;
  law.dim = 4;
  law.identity = Point({0, 0, 0}, 0.0);
  law.compose_fn = [](const Point& a, const Point& b) {
    // roto-translation: the (y, w) block of b is rotated by a's angle
    double c = std::cos(a.spatial[0]), s = std::sin(a.spatial[0]);
    return Point({a.spatial[0] + b.spatial[0],
                  a.spatial[1] + b.spatial[1] * c - b.spatial[2] * s,
                  a.spatial[2] + b.spatial[1] * s + b.spatial[2] * c},
                 a.time + b.time);
  };
  law.inverse_fn = [](const Point& a) {
    double c = std::cos(a.spatial[0]), s = std::sin(a.spatial[0]);
    return Point({-a.spatial[0], -(a.spatial[1] * c + a.spatial[2] * s),
                  a.spatial[1] * s - a.spatial[2] * c},
                 -a.time);
  };
  md.law = law;

  md.exp_closed = [](const std::vector<double>& w, double s, const Point& z0) {
    double dy, dw;
    rotation_increments(z0.spatial[0], w[0], s, dy, dw);
    return Point({z0.spatial[0] + s * w[0], z0.spatial[1] + dy, z0.spatial[2] + dw},
                 z0.time - s);
  };
  md.oracle = OracleKind::mumford;
  md.min_hormander_order = 3;
  return md;
}

OperatorModel cmp() {
  OperatorModel md;
  md.name = "cmp";
  md.n = 3;  // (x, y, w)
  md.m = 1;
  md.generators = {basis_field(3, 0)};

  VectorField x0;
  x0.dim = 3;
  x0.coeff = [](const double* x, double* out) {
    out[0] = 0.0;
    out[1] = x[0] * x[0];
    out[2] = x[0];
  };
  x0.jacobian = [](const double* x, double* J) {
    std::memset(J, 0, sizeof(double) * 9);
    J[1 * 3 + 0] = 2.0 * x[0];
    J[2 * 3 + 0] = 1.0;
  };
  x0.hessian = [](const double*, double* H) {
    std::memset(H, 0, sizeof(double) * 27);
    H[(1 * 3 + 0) * 3 + 0] = 2.0;
  };
  md.drift_x0 = x0;

  GroupLaw law;
  law.dim = 4;
  law.identity = Point({0, 0, 0}, 0.0);
  law.compose_fn = [](const Point& a, const Point& b) {
    double x = a.spatial[0];
    return Point({x + b.spatial[0],
                  a.spatial[1] + b.spatial[1] + 2.0 * x * b.spatial[2] - b.time * x * x,
                  a.spatial[2] + b.spatial[2] - b.time * x},
                 a.time + b.time);
  };
  law.inverse_fn = [](const Point& a) {
    double x = a.spatial[0];
    return Point({-x, -a.spatial[1] + 2.0 * x * a.spatial[2] + a.time * x * x,
                  -a.spatial[2] - a.time * x},
                 -a.time);
  };
  md.law = law;
  md.dilation = Dilation{{1, 4, 3, 2}};

  md.exp_closed = [](const std::vector<double>& w, double s, const Point& z0) {
    double x = z0.spatial[0], om = w[0];
    return Point({x + om * s,
                  z0.spatial[1] + x * x * s + x * om * s * s + om * om * s * s * s / 3.0,
                  z0.spatial[2] + x * s + 0.5 * om * s * s},
                 z0.time - s);
  };
  md.oracle = OracleKind::cmp;
  md.min_hormander_order = 3;
  return md;
}

OperatorModel grushin() {
  OperatorModel md;
  md.name = "grushin";
  md.n = 2;  // (x, y)
  md.m = 2;
  VectorField x2;
  x2.dim = 2;
  x2.coeff = [](const double* x, double* out) {
    out[0] = 0.0;
    out[1] = x[0];
  };
  x2.jacobian = [](const double*, double* J) {
    std::memset(J, 0, sizeof(double) * 4);
    J[1 * 2 + 0] = 1.0;
  };
  x2.hessian = zero_hessian(2);
  md.generators = {basis_field(2, 0), x2};
  md.drift_x0 = zero_field(2);
  // no compatible Lie group exists; the Euclidean law only serves the axioms
  md.law = product_law(2);
  md.dilation = Dilation{{1, 2, 2}};
  md.exp_closed = [](const std::vector<double>& w, double s, const Point& z0) {
    double x = z0.spatial[0];
    return Point({x + w[0] * s, z0.spatial[1] + w[1] * x * s + 0.5 * w[0] * w[1] * s * s},
                 z0.time - s);
  };
  md.left_invariant = false;
  md.oracle = OracleKind::driftless;
  md.min_hormander_order = 2;
  return md;
}

OperatorModel grushin_lifted() {
  OperatorModel md;
  md.name = "grushin_lifted";
  md.n = 3;  // (x, y, w)
  md.m = 2;
  VectorField x2;
  x2.dim = 3;
  x2.coeff = [](const double* x, double* out) {
    out[0] = 0.0;
    out[1] = x[0];
    out[2] = 1.0;
  };
  x2.jacobian = [](const double*, double* J) {
    std::memset(J, 0, sizeof(double) * 9);
    J[1 * 3 + 0] = 1.0;
  };
  x2.hessian = zero_hessian(3);
  md.generators = {basis_field(3, 0), x2};
  md.drift_x0 = zero_field(3);

  GroupLaw law;
  law.dim = 4;
  law.identity = Point({0, 0, 0}, 0.0);
  law.compose_fn = [](const Point& a, const Point& b) {
    return Point({a.spatial[0] + b.spatial[0],
                  a.spatial[1] + b.spatial[1] + a.spatial[0] * b.spatial[2],
                  a.spatial[2] + b.spatial[2]},
                 a.time + b.time);
  };
  law.inverse_fn = [](const Point& a) {
    return Point({-a.spatial[0], -a.spatial[1] + a.spatial[0] * a.spatial[2],
                  -a.spatial[2]},
                 -a.time);
  };
  md.law = law;
  md.dilation = Dilation{{1, 2, 1, 2}};
  md.exp_closed = [](const std::vector<double>& w, double s, const Point& z0) {
    double x = z0.spatial[0];
    return Point({x + w[0] * s,
                  z0.spatial[1] + w[1] * x * s + 0.5 * w[0] * w[1] * s * s,
                  z0.spatial[2] + w[1] * s},
                 z0.time - s);
  };
  md.oracle = OracleKind::driftless;
  md.min_hormander_order = 2;
  return md;
}

OperatorModel ou() {
  OperatorModel md;
  md.name = "ou";
  md.n = 1;
  md.m = 1;
  md.generators = {basis_field(1, 0)};

  VectorField x0;
  x0.dim = 1;
  x0.coeff = [](const double* x, double* out) { out[0] = x[0]; };
  x0.jacobian = [](const double*, double* J) { J[0] = 1.0; };
  x0.hessian = zero_hessian(1);
  md.drift_x0 = x0;

  GroupLaw law;
  law.dim = 2;
  law.identity = Point({0}, 0.0);
  law.compose_fn = [](const Point& a, const Point& b) {
    return Point({b.spatial[0] + std::exp(-b.time) * a.spatial[0]}, a.time + b.time);
  };
  law.inverse_fn = [](const Point& a) {
    return Point({-std::exp(a.time) * a.spatial[0]}, -a.time);
  };
  md.law = law;

  md.exp_closed = [](const std::vector<double>& w, double s, const Point& z0) {
    return Point({(z0.spatial[0] + w[0]) * std::exp(s) - w[0]}, z0.time - s);
  };
  md.min_hormander_order = 1;
  return md;
}

OperatorModel linked() {
  OperatorModel md;
  md.name = "linked";
  md.n = 4;  // (x, y, sigma, w): Heisenberg block (x, y, sigma), Kolmogorov block (x, w)
  md.m = 2;

  VectorField x1;
  x1.dim = 4;
  x1.coeff = [](const double* x, double* out) {
    out[0] = 1.0;
    out[1] = 0.0;
    out[2] = x[1];
    out[3] = 0.0;
  };
  x1.jacobian = [](const double*, double* J) {
    std::memset(J, 0, sizeof(double) * 16);
    J[2 * 4 + 1] = 1.0;
  };
  x1.hessian = zero_hessian(4);

  VectorField x2;
  x2.dim = 4;
  x2.coeff = [](const double* x, double* out) {
    out[0] = 0.0;
    out[1] = 1.0;
    out[2] = -x[0];
    out[3] = 0.0;
  };
  x2.jacobian = [](const double*, double* J) {
    std::memset(J, 0, sizeof(double) * 16);
    J[2 * 4 + 0] = -1.0;
  };
  x2.hessian = zero_hessian(4);
  md.generators = {x1, x2};

  VectorField x0;
  x0.dim = 4;
  x0.coeff = [](const double* x, double* out) {
    out[0] = out[1] = out[2] = 0.0;
    out[3] = x[0];
  };
  x0.jacobian = [](const double*, double* J) {
    std::memset(J, 0, sizeof(double) * 16);
    J[3 * 4 + 0] = 1.0;
  };
  x0.hessian = zero_hessian(4);
  md.drift_x0 = x0;

  GroupLaw law;
  law.dim = 5;
  law.identity = Point({0, 0, 0, 0}, 0.0);
  law.compose_fn = [](const Point& a, const Point& b) {
    const auto& p = a.spatial;
    const auto& q = b.spatial;
    return Point({p[0] + q[0], p[1] + q[1],
                  p[2] + q[2] + p[1] * q[0] - p[0] * q[1],
                  p[3] + q[3] - b.time * p[0]},
                 a.time + b.time);
  };
  law.inverse_fn = [](const Point& a) {
    return Point({-a.spatial[0], -a.spatial[1], -a.spatial[2],
                  -a.spatial[3] - a.time * a.spatial[0]},
                 -a.time);
  };
  md.law = law;
  md.dilation = Dilation{{1, 1, 2, 3, 2}};

  md.exp_closed = [](const std::vector<double>& w, double s, const Point& z0) {
    const auto& p = z0.spatial;
    return Point({p[0] + w[0] * s, p[1] + w[1] * s,
                  p[2] + s * (w[0] * p[1] - w[1] * p[0]),
                  p[3] + p[0] * s + 0.5 * w[0] * s * s},
                 z0.time - s);
  };
  md.min_hormander_order = 2;
  return md;
}

std::vector<OperatorModel> catalog() {
  return {heat(), heisenberg_heat(), kolmogorov(), mumford(),  cmp(),
          grushin(), grushin_lifted(), ou(),       linked()};
}

OperatorModel by_name(const std::string& name) {
  for (auto& md : catalog())
    if (md.name == name) return md;
  throw std::invalid_argument("unknown model: " + name);
}

}  // namespace models

namespace {

// lift a spatial field to R^{n+1}; time coefficient is constant
VectorField embed(const VectorField& X, double time_coeff) {
  int n = X.dim;
  int d = n + 1;
  VectorField F;
  F.dim = d;
  F.coeff = [X, n, time_coeff](const double* x, double* out) {
    X.coeff(x, out);
    out[n] = time_coeff;
  };
  if (X.jacobian) {
    auto jac = X.jacobian;
    F.jacobian = [jac, n, d](const double* x, double* J) {
      std::memset(J, 0, sizeof(double) * static_cast<size_t>(d) * static_cast<size_t>(d));
      std::vector<double> Jn(static_cast<size_t>(n) * static_cast<size_t>(n));
      jac(x, Jn.data());
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) J[k * d + i] = Jn[static_cast<size_t>(k) * static_cast<size_t>(n) + static_cast<size_t>(i)];
    };
  }
  if (X.hessian) {
    auto hes = X.hessian;
    F.hessian = [hes, n, d](const double* x, double* H) {
      std::memset(H, 0, sizeof(double) * static_cast<size_t>(d) * static_cast<size_t>(d) * static_cast<size_t>(d));
      std::vector<double> Hn(static_cast<size_t>(n) * static_cast<size_t>(n) * static_cast<size_t>(n));
      hes(x, Hn.data());
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < n; ++i)
            H[(k * d + j) * d + i] =
                Hn[(static_cast<size_t>(k) * static_cast<size_t>(n) + static_cast<size_t>(j)) * static_cast<size_t>(n) + static_cast<size_t>(i)];
    };
  }
  return F;
}

}  // namespace

VectorField drift(const OperatorModel& model) { return embed(model.drift_x0, -1.0); }

VectorField spacetime_generator(const OperatorModel& model, int j) {
  if (j < 0 || j >= model.m)
    throw std::invalid_argument("spacetime_generator: index out of range");
  return embed(model.generators[static_cast<size_t>(j)], 0.0);
}

VectorField control_drift_field(const OperatorModel& model,
                                const std::vector<double>& omega) {
  if (static_cast<int>(omega.size()) != model.m)
    throw std::invalid_argument("control vector length must equal m");
  int n = model.n;
  auto gens = model.generators;
  auto x0 = model.drift_x0;
  VectorField F;
  F.dim = n + 1;
  F.coeff = [gens, x0, omega, n](const double* x, double* out) {
    std::vector<double> tmp(static_cast<size_t>(n));
    x0.coeff(x, out);
    for (size_t j = 0; j < gens.size(); ++j) {
      if (omega[j] == 0.0) continue;
      gens[j].coeff(x, tmp.data());
      for (int i = 0; i < n; ++i) out[i] += omega[j] * tmp[static_cast<size_t>(i)];
    }
    out[n] = -1.0;
  };
  bool analytic = x0.jacobian != nullptr;
  for (const auto& g : gens) analytic = analytic && g.jacobian != nullptr;
  if (analytic) {
    F.jacobian = [gens, x0, omega, n](const double* x, double* J) {
      int d = n + 1;
      std::memset(J, 0, sizeof(double) * static_cast<size_t>(d) * static_cast<size_t>(d));
      std::vector<double> Jn(static_cast<size_t>(n) * static_cast<size_t>(n));
      x0.jacobian(x, Jn.data());
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) J[k * d + i] = Jn[static_cast<size_t>(k * n + i)];
      for (size_t j = 0; j < gens.size(); ++j) {
        if (omega[j] == 0.0) continue;
        gens[j].jacobian(x, Jn.data());
        for (int k = 0; k < n; ++k)
          for (int i = 0; i < n; ++i) J[k * d + i] += omega[j] * Jn[static_cast<size_t>(k * n + i)];
      }
    };
  }
  return F;
}

int hormander_rank(const OperatorModel& model, const Point& z, int max_order) {
  if (max_order < 1) throw std::invalid_argument("hormander_rank: max_order >= 1");
  std::vector<std::vector<VectorField>> levels;
  std::vector<VectorField> first;
  for (int j = 0; j < model.m; ++j) first.push_back(spacetime_generator(model, j));
  first.push_back(drift(model));
  levels.push_back(std::move(first));
  for (int order = 2; order <= max_order; ++order) {
    std::vector<VectorField> level;
    for (int i = 1; i <= order / 2; ++i) {
      int j = order - i;
      for (const auto& a : levels[static_cast<size_t>(i - 1)])
        for (const auto& b : levels[static_cast<size_t>(j - 1)])
          level.push_back(bracket(a, b));
    }
    levels.push_back(std::move(level));
  }

  std::vector<double> state = pack(z);
  std::vector<std::vector<double>> rows;
  for (const auto& level : levels)
    for (const auto& f : level) rows.push_back(f.eval(state));
  return numeric_rank(std::move(rows));
}

double left_invariance_residual(const OperatorModel& model, int j,
                                const Point& zeta, const Point& z,
                                const std::function<double(const Point&)>& f) {
  VectorField F = (j == 0) ? drift(model) : spacetime_generator(model, j - 1);
  auto fs = [&f](const std::vector<double>& s) { return f(unpack(s)); };
  Point zz = compose(model.law, zeta, z);
  double lhs = F.apply(fs, pack(zz));
  auto translated = [&](const std::vector<double>& s) {
    return f(compose(model.law, zeta, unpack(s)));
  };
  double rhs = F.apply(translated, pack(z));
  return std::fabs(lhs - rhs);
}

std::function<double(const Point&)> gauge_shift(
    const std::function<double(const Point&)>& u, double lambda) {
  return [u, lambda](const Point& z) { return std::exp(-lambda * z.time) * u(z); };
}

std::vector<std::function<double(const Point&)>> invariance_test_functions(int n) {
  std::vector<std::function<double(const Point&)>> fam;
  fam.push_back([](const Point& z) {
    double s = 0.0;
    for (double c : z.spatial) s += c * c;
    return s;
  });
  fam.push_back([n](const Point& z) {
    double p = 1.0;
    for (int i = 0; i < std::min(n, 3); ++i) p *= z.spatial[static_cast<size_t>(i)];
    return p;
  });
  fam.push_back([](const Point& z) {
    double x0 = z.spatial[0];
    return x0 * x0 * x0 - 2.0 * x0 + z.time;
  });
  fam.push_back([n](const Point& z) {
    return std::sin(z.spatial[0]) * std::cos(z.spatial[static_cast<size_t>(n - 1)]);
  });
  fam.push_back([n](const Point& z) {
    int i = std::min(1, n - 1);
    return (1.0 + z.spatial[0] * z.spatial[0]) * std::sin(z.spatial[static_cast<size_t>(i)]);
  });
  fam.push_back([n](const Point& z) {
    return z.spatial[0] * z.time + std::cos(z.spatial[static_cast<size_t>(n - 1)]);
  });
  return fam;
}

}  // namespace hypoflow
