#include "hypoflow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hypoflow {

size_t GridField::node_count() const {
  size_t n = 1;
  for (const auto& a : box) n *= static_cast<size_t>(a.points);
  return n;
}

size_t GridField::index(const std::vector<int>& idx) const {
  size_t flat = 0;
  for (size_t a = 0; a < box.size(); ++a)
    flat = flat * static_cast<size_t>(box[a].points) + static_cast<size_t>(idx[a]);
  return flat;
}

GridField make_grid(std::vector<AxisSpec> box,
                    const std::function<double(const std::vector<double>&)>& f,
                    double time) {
  for (const auto& a : box)
    if (a.points < 3) throw std::invalid_argument("make_grid: need >= 3 points per axis");
  GridField g;
  g.box = std::move(box);
  g.time = time;
  g.values.resize(g.node_count());
  std::vector<int> idx(g.box.size(), 0);
  std::vector<double> x(g.box.size());
  for (size_t flat = 0; flat < g.values.size(); ++flat) {
    for (size_t a = 0; a < g.box.size(); ++a) x[a] = g.coord(static_cast<int>(a), idx[a]);
    g.values[flat] = f(x);
    for (int a = static_cast<int>(g.box.size()) - 1; a >= 0; --a) {
      if (++idx[static_cast<size_t>(a)] < g.box[static_cast<size_t>(a)].points) break;
      idx[static_cast<size_t>(a)] = 0;
    }
  }
  return g;
}

namespace {

enum class Scheme { heat1d, heat2d, kolmogorov, grushin };

Scheme pick_scheme(const OperatorModel& model, const GridField& u0) {
  if (model.name == "heat" && model.n == 1 && u0.dims() == 1) return Scheme::heat1d;
  if (model.name == "heat" && model.n == 2 && u0.dims() == 2) return Scheme::heat2d;
  if (model.name == "kolmogorov" && model.m == 1 && u0.dims() == 2) return Scheme::kolmogorov;
  if (model.name == "grushin" && u0.dims() == 2) return Scheme::grushin;
  throw std::invalid_argument(
      "solve_cauchy: supported are heat (N<=2), kolmogorov (m=1) and grushin grids");
}

double max_abs_coord(const AxisSpec& a) { return std::max(std::fabs(a.lo), std::fabs(a.hi)); }

}  // namespace

GridField solve_cauchy(const OperatorModel& model, const GridField& u0, double dt,
                       int steps) {
  if (!(dt > 0.0) || steps < 0)
    throw std::invalid_argument("solve_cauchy: dt > 0, steps >= 0");
  Scheme scheme = pick_scheme(model, u0);

  // stability: every diffusion term needs dt * coeff <= h^2 / 4, the upwind
  // drift needs dt * max|x| <= h_y / 2; together all stencil weights stay
  // nonnegative
  switch (scheme) {
    case Scheme::heat1d:
      if (dt > 0.25 * u0.box[0].h() * u0.box[0].h()) throw CflError("dt exceeds h_x^2/4");
      break;
    case Scheme::heat2d: {
      double hmin = std::min(u0.box[0].h(), u0.box[1].h());
      if (dt > 0.25 * hmin * hmin) throw CflError("dt exceeds min(h^2)/4");
      break;
    }
    case Scheme::kolmogorov: {
      double hx = u0.box[0].h(), hy = u0.box[1].h();
      if (dt > 0.25 * hx * hx) throw CflError("dt exceeds h_x^2/4");
      double amax = max_abs_coord(u0.box[0]);
      if (amax > 0.0 && dt > 0.5 * hy / amax)
        throw CflError("dt exceeds h_y / (2 max|x|) for the upwind drift");
      break;
    }
    case Scheme::grushin: {
      double hx = u0.box[0].h(), hy = u0.box[1].h();
      if (dt > 0.25 * hx * hx) throw CflError("dt exceeds h_x^2/4");
      double c = max_abs_coord(u0.box[0]);
      if (c > 0.0 && dt * c * c > 0.25 * hy * hy)
        throw CflError("dt exceeds h_y^2 / (4 max x^2)");
      break;
    }
  }

  GridField cur = u0;
  GridField next = u0;

  const int nx = u0.box[0].points;
  const int ny = u0.dims() == 2 ? u0.box[1].points : 1;
  const double hx = u0.box[0].h();
  const double hy = u0.dims() == 2 ? u0.box[1].h() : 0.0;

  auto at = [&](const GridField& g, int i, int j) -> double {
    return g.values[static_cast<size_t>(i) * static_cast<size_t>(ny) + static_cast<size_t>(j)];
  };
  auto put = [&](GridField& g, int i, int j, double v) {
    g.values[static_cast<size_t>(i) * static_cast<size_t>(ny) + static_cast<size_t>(j)] = v;
  };

  for (int step = 0; step < steps; ++step) {
    if (scheme == Scheme::heat1d) {
      for (int i = 1; i + 1 < nx; ++i) {
        double lap = (cur.values[static_cast<size_t>(i - 1)] - 2.0 * cur.values[static_cast<size_t>(i)] +
                      cur.values[static_cast<size_t>(i + 1)]) / (hx * hx);
        next.values[static_cast<size_t>(i)] = cur.values[static_cast<size_t>(i)] + dt * lap;
      }
    } else if (scheme == Scheme::kolmogorov) {
      // The y axis carries transport only; a Dirichlet condition there is
      // over-determined, so the missing upwind neighbour at the y edges is
      // closed with a zero gradient. This keeps y-independent data exactly
      // y-independent on the full grid.
      for (int i = 1; i + 1 < nx; ++i) {
        double x = u0.coord(0, i);
        for (int j = 0; j < ny; ++j) {
          double u = at(cur, i, j);
          double rhs = (at(cur, i - 1, j) - 2.0 * u + at(cur, i + 1, j)) / (hx * hx);
          if (x > 0.0 && j + 1 < ny)
            rhs += x * (at(cur, i, j + 1) - u) / hy;
          else if (x < 0.0 && j > 0)
            rhs += x * (u - at(cur, i, j - 1)) / hy;
          put(next, i, j, u + dt * rhs);
        }
      }
    } else {
      for (int i = 1; i + 1 < nx; ++i) {
        double x = u0.coord(0, i);
        for (int j = 1; j + 1 < ny; ++j) {
          double u = at(cur, i, j);
          double dxx = (at(cur, i - 1, j) - 2.0 * u + at(cur, i + 1, j)) / (hx * hx);
          double rhs = dxx;
          if (scheme == Scheme::heat2d)
            rhs += (at(cur, i, j - 1) - 2.0 * u + at(cur, i, j + 1)) / (hy * hy);
          else  // grushin
            rhs += x * x * (at(cur, i, j - 1) - 2.0 * u + at(cur, i, j + 1)) / (hy * hy);
          put(next, i, j, u + dt * rhs);
        }
      }
    }
    for (double v : next.values)
      if (!std::isfinite(v))
        throw std::runtime_error("solve_cauchy: non-finite value at step " +
                                 std::to_string(step));
    std::swap(cur.values, next.values);
    cur.time += dt;
  }
  return cur;
}

double y_independence_deviation(const GridField& field, int axis) {
  if (axis < 0 || axis >= field.dims())
    throw std::invalid_argument("y_independence_deviation: axis out of range");
  double dev = 0.0;
  std::vector<int> idx(field.box.size(), 0);
  for (size_t flat = 0; flat < field.values.size(); ++flat) {
    if (idx[static_cast<size_t>(axis)] + 1 < field.box[static_cast<size_t>(axis)].points) {
      std::vector<int> up = idx;
      ++up[static_cast<size_t>(axis)];
      dev = std::max(dev, std::fabs(field.values[field.index(up)] - field.values[flat]));
    }
    for (int a = static_cast<int>(field.box.size()) - 1; a >= 0; --a) {
      if (++idx[static_cast<size_t>(a)] < field.box[static_cast<size_t>(a)].points) break;
      idx[static_cast<size_t>(a)] = 0;
    }
  }
  return dev;
}

bool liouville_growth_check(const std::vector<std::pair<double, double>>& u_samples,
                            double eps) {
  if (u_samples.size() < 3)
    throw std::invalid_argument("liouville_growth_check: need at least 3 samples");
  if (!(eps > 0.0)) throw std::invalid_argument("liouville_growth_check: eps > 0");
  double st = 0.0, sl = 0.0, stt = 0.0, stl = 0.0;
  double n = static_cast<double>(u_samples.size());
  for (const auto& [t, u] : u_samples) {
    double lu = std::log(std::max(u, 1e-300));
    st += t;
    sl += lu;
    stt += t * t;
    stl += t * lu;
  }
  double denom = n * stt - st * st;
  if (denom == 0.0) throw std::invalid_argument("liouville_growth_check: degenerate t samples");
  double slope = (n * stl - st * sl) / denom;
  return slope <= eps + 1e-9;
}

double ExtremalSolution::parabolic(const Point& z) const {
  double e = -lambda * z.time;  // |alpha|^2 t
  for (size_t i = 0; i < alpha.size(); ++i) e += alpha[i] * z.spatial[i];
  return std::exp(e);
}

double ExtremalSolution::stationary(const std::vector<double>& x) const {
  double e = 0.0;
  for (size_t i = 0; i < alpha.size(); ++i) e += alpha[i] * x[i];
  return std::exp(e);
}

std::function<double(const Point&)> ExtremalSolution::as_function() const {
  ExtremalSolution copy = *this;
  return [copy](const Point& z) { return copy.parabolic(z); };
}

ExtremalSolution extremal(const OperatorModel& model, const std::vector<double>& alpha) {
  if (!model.has_extremals)
    throw std::invalid_argument("extremal: model has no exponential solution catalog");
  if (static_cast<int>(alpha.size()) != model.n)
    throw std::invalid_argument("extremal: alpha must have length N");
  for (int i = model.m; i < model.n; ++i)
    if (alpha[static_cast<size_t>(i)] != 0.0)
      throw std::invalid_argument("extremal: alpha supported outside the generator coordinates");
  ExtremalSolution sol;
  sol.alpha = alpha;
  double a2 = 0.0;
  for (double a : alpha) a2 += a * a;
  sol.lambda = -a2;
  return sol;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string grid_to_csv(const GridField& field) {
  std::ostringstream out;
  out << "# gridfield\n";
  out << "# time," << fmt17(field.time) << "\n";
  for (size_t a = 0; a < field.box.size(); ++a)
    out << "# axis," << a << "," << fmt17(field.box[a].lo) << "," << fmt17(field.box[a].hi)
        << "," << field.box[a].points << "\n";
  for (size_t a = 0; a < field.box.size(); ++a) out << "x" << a << ",";
  out << "value\n";
  std::vector<int> idx(field.box.size(), 0);
  for (size_t flat = 0; flat < field.values.size(); ++flat) {
    for (size_t a = 0; a < field.box.size(); ++a)
      out << fmt17(field.coord(static_cast<int>(a), idx[a])) << ",";
    out << fmt17(field.values[flat]) << "\n";
    for (int a = static_cast<int>(field.box.size()) - 1; a >= 0; --a) {
      if (++idx[static_cast<size_t>(a)] < field.box[static_cast<size_t>(a)].points) break;
      idx[static_cast<size_t>(a)] = 0;
    }
  }
  return out.str();
}

GridField grid_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  GridField g;
  bool have_time = false;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# time,", 0) == 0) {
        g.time = std::stod(line.substr(7));
        have_time = true;
      } else if (line.rfind("# axis,", 0) == 0) {
        std::istringstream fields(line.substr(7));
        std::string tok;
        std::vector<std::string> toks;
        while (std::getline(fields, tok, ',')) toks.push_back(tok);
        if (toks.size() != 4) throw std::invalid_argument("grid_from_csv: bad axis line");
        AxisSpec ax;
        ax.lo = std::stod(toks[1]);
        ax.hi = std::stod(toks[2]);
        ax.points = std::stoi(toks[3]);
        g.box.push_back(ax);
      }
      continue;
    }
    if (line[0] == 'x') continue;  // column header
    size_t last = line.rfind(',');
    if (last == std::string::npos) throw std::invalid_argument("grid_from_csv: bad row");
    values.push_back(std::stod(line.substr(last + 1)));
  }
  if (!have_time || g.box.empty())
    throw std::invalid_argument("grid_from_csv: missing metadata");
  g.values = std::move(values);
  if (g.values.size() != g.node_count())
    throw std::invalid_argument("grid_from_csv: node count mismatch");
  return g;
}

}  // namespace hypoflow
