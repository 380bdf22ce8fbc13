#include "hypoflow/fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace hypoflow {

static double inf_norm(const double* x, int n) {
  double m = 0.0;
  for (int i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

std::vector<double> VectorField::eval(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dim)
    throw std::invalid_argument("VectorField::eval: dimension mismatch");
  std::vector<double> out(static_cast<size_t>(dim));
  coeff(x.data(), out.data());
  return out;
}

std::vector<double> VectorField::eval_jacobian(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dim)
    throw std::invalid_argument("VectorField::eval_jacobian: dimension mismatch");
  std::vector<double> J(static_cast<size_t>(dim) * static_cast<size_t>(dim));
  if (jacobian) {
    jacobian(x.data(), J.data());
    return J;
  }
  // central differences, step relative to the point's magnitude
  double h = 1e-5 * std::max(1.0, inf_norm(x.data(), dim));
  std::vector<double> xp = x, bp(static_cast<size_t>(dim)), bm(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    double save = xp[static_cast<size_t>(i)];
    xp[static_cast<size_t>(i)] = save + h;
    coeff(xp.data(), bp.data());
    xp[static_cast<size_t>(i)] = save - h;
    coeff(xp.data(), bm.data());
    xp[static_cast<size_t>(i)] = save;
    for (int k = 0; k < dim; ++k)
      J[static_cast<size_t>(k) * static_cast<size_t>(dim) + static_cast<size_t>(i)] =
          (bp[static_cast<size_t>(k)] - bm[static_cast<size_t>(k)]) / (2.0 * h);
  }
  return J;
}

double VectorField::apply(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x, double step) const {
  std::vector<double> b = eval(x);
  std::vector<double> xp = x;
  double acc = 0.0;
  for (int i = 0; i < dim; ++i) {
    if (b[static_cast<size_t>(i)] == 0.0) continue;
    double save = xp[static_cast<size_t>(i)];
    xp[static_cast<size_t>(i)] = save + step;
    double fp = f(xp);
    xp[static_cast<size_t>(i)] = save - step;
    double fm = f(xp);
    xp[static_cast<size_t>(i)] = save;
    acc += b[static_cast<size_t>(i)] * (fp - fm) / (2.0 * step);
  }
  return acc;
}

VectorField zero_field(int dim) {
  VectorField X;
  X.dim = dim;
  X.coeff = [dim](const double*, double* out) { std::memset(out, 0, sizeof(double) * static_cast<size_t>(dim)); };
  X.jacobian = [dim](const double*, double* J) {
    std::memset(J, 0, sizeof(double) * static_cast<size_t>(dim) * static_cast<size_t>(dim));
  };
  X.hessian = zero_hessian(dim);
  return X;
}

VectorField constant_field(std::vector<double> b) {
  int dim = static_cast<int>(b.size());
  VectorField X;
  X.dim = dim;
  X.coeff = [b](const double*, double* out) { std::copy(b.begin(), b.end(), out); };
  X.jacobian = [dim](const double*, double* J) {
    std::memset(J, 0, sizeof(double) * static_cast<size_t>(dim) * static_cast<size_t>(dim));
  };
  X.hessian = zero_hessian(dim);
  return X;
}

std::function<void(const double*, double*)> zero_hessian(int dim) {
  size_t n = static_cast<size_t>(dim);
  return [n](const double*, double* H) { std::memset(H, 0, sizeof(double) * n * n * n); };
}

VectorField bracket(const VectorField& X, const VectorField& Z) {
  if (X.dim != Z.dim)
    throw std::invalid_argument("bracket: dimension mismatch");
  int dim = X.dim;
  size_t n = static_cast<size_t>(dim);

  VectorField B;
  B.dim = dim;
  B.coeff = [X, Z, n](const double* x, double* out) {
    std::vector<double> xv(x, x + n);
    std::vector<double> bx = X.eval(xv), bz = Z.eval(xv);
    std::vector<double> JX = X.eval_jacobian(xv), JZ = Z.eval_jacobian(xv);
    for (size_t k = 0; k < n; ++k) {
      double acc = 0.0;
      for (size_t j = 0; j < n; ++j)
        acc += JZ[k * n + j] * bx[j] - JX[k * n + j] * bz[j];
      out[k] = acc;
    }
  };
  if (X.jacobian && Z.jacobian && X.hessian && Z.hessian) {
    // d_i [X,Z]_k = (JZ JX - JX JZ)_{k,i} + sum_j H(Z)_{k,j,i} X_j - H(X)_{k,j,i} Z_j
    auto jx = X.jacobian;
    auto jz = Z.jacobian;
    auto hx = X.hessian;
    auto hz = Z.hessian;
    auto cx = X.coeff;
    auto cz = Z.coeff;
    B.jacobian = [jx, jz, hx, hz, cx, cz, n](const double* x, double* J) {
      std::vector<double> bx(n), bz(n), JX(n * n), JZ(n * n), HX(n * n * n), HZ(n * n * n);
      cx(x, bx.data());
      cz(x, bz.data());
      jx(x, JX.data());
      jz(x, JZ.data());
      hx(x, HX.data());
      hz(x, HZ.data());
      for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i) {
          double acc = 0.0;
          for (size_t j = 0; j < n; ++j) {
            acc += JZ[k * n + j] * JX[j * n + i] - JX[k * n + j] * JZ[j * n + i];
            acc += HZ[(k * n + j) * n + i] * bx[j] - HX[(k * n + j) * n + i] * bz[j];
          }
          J[k * n + i] = acc;
        }
    };
  }
  return B;
}

double jacobi_residual(const VectorField& X, const VectorField& Z,
                       const VectorField& W, const std::vector<double>& x) {
  VectorField a = bracket(X, bracket(Z, W));
  VectorField b = bracket(Z, bracket(W, X));
  VectorField c = bracket(W, bracket(X, Z));
  std::vector<double> va = a.eval(x), vb = b.eval(x), vc = c.eval(x);
  double m = 0.0;
  for (size_t i = 0; i < va.size(); ++i)
    m = std::max(m, std::fabs(va[i] + vb[i] + vc[i]));
  return m;
}

int numeric_rank(std::vector<std::vector<double>> rows, double rel_pivot) {
  if (rows.empty()) return 0;
  size_t ncols = rows[0].size();
  double max_norm = 0.0;
  for (const auto& r : rows) {
    double nn = 0.0;
    for (double v : r) nn = std::max(nn, std::fabs(v));
    max_norm = std::max(max_norm, nn);
  }
  if (max_norm == 0.0) return 0;
  double tol = rel_pivot * max_norm;

  int rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < ncols && row < rows.size(); ++col) {
    size_t piv = row;
    for (size_t r = row + 1; r < rows.size(); ++r)
      if (std::fabs(rows[r][col]) > std::fabs(rows[piv][col])) piv = r;
    if (std::fabs(rows[piv][col]) <= tol) continue;
    std::swap(rows[piv], rows[row]);
    for (size_t r = row + 1; r < rows.size(); ++r) {
      double f = rows[r][col] / rows[row][col];
      if (f == 0.0) continue;
      for (size_t c = col; c < ncols; ++c) rows[r][c] -= f * rows[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace hypoflow
