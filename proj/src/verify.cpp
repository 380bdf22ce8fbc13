#include "hypoflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hypoflow/flows.hpp"
#include "hypoflow/kernels.hpp"
#include "hypoflow/reach.hpp"
#include "hypoflow/rng.hpp"
#include "hypoflow/solver.hpp"

namespace hypoflow::verify {

namespace {

Point random_point(Rng& rng, int n, double lo, double hi) {
  return Point(rng.vector(n, lo, hi), rng.uniform(lo, hi));
}

std::string tag(const OperatorModel& md, const std::string& suite,
                const std::string& check) {
  return md.name + "." + suite + "." + check;
}

std::string inputs(const OperatorModel& md, std::uint64_t seed, const std::string& extra) {
  std::ostringstream os;
  os << md.name << "|seed=" << seed << "|" << extra;
  return os.str();
}

void mark_empty(Report& report, const OperatorModel& md, const std::string& suite) {
  report.check_true(tag(md, suite, "not_applicable_trivial_pass"),
                    inputs(md, 0, "empty suite"), true);
}

}  // namespace

void groups_suite(Report& report, const OperatorModel& md, std::uint64_t seed,
                  int tuples) {
  Rng rng(seed);
  double axioms = 0.0, autom = 0.0;
  for (int i = 0; i < tuples; ++i) {
    Point a = random_point(rng, md.n, -10, 10);
    Point b = random_point(rng, md.n, -10, 10);
    Point c = random_point(rng, md.n, -10, 10);
    axioms = std::max(axioms, associativity_residual(md.law, a, b, c));
    axioms = std::max(axioms, identity_residual(md.law, a));
    axioms = std::max(axioms, inverse_residual(md.law, a));
    if (md.dilation)
      autom = std::max(autom, automorphism_residual(md.law, *md.dilation,
                                                    rng.uniform(0.1, 3.0), a, b));
  }
  report.check_le(tag(md, "groups", "axioms"), inputs(md, seed, "tuples=" + std::to_string(tuples)),
                  axioms, 1e-10);
  if (md.dilation) {
    report.check_le(tag(md, "groups", "dilation_automorphism"),
                    inputs(md, seed, "tuples=" + std::to_string(tuples)), autom, 1e-10);
    double comp = 0.0;
    for (int i = 0; i < 100; ++i) {
      Point z = random_point(rng, md.n, -10, 10);
      double r = rng.uniform(0.5, 2.0), s = rng.uniform(0.5, 2.0);
      Point a = dilate(*md.dilation, r, dilate(*md.dilation, s, z));
      Point b = dilate(*md.dilation, r * s, z);
      comp = std::max(comp, dist_inf(a, b) / std::max(1.0, max_abs(b)));
    }
    report.check_le(tag(md, "groups", "dilation_composition"), inputs(md, seed, "n=100"),
                    comp, 1e-12);
  }
  if (md.layers) {
    int m = md.layers->sizes[0];
    double res = 0.0;
    for (int i = 0; i < 200; ++i) {
      Point a = random_point(rng, md.n, -10, 10);
      Point b = random_point(rng, md.n, -10, 10);
      Point ab = compose(md.law, a, b);
      for (int j = 0; j < m; ++j)
        res = std::max(res, std::fabs(ab.spatial[static_cast<size_t>(j)] -
                                      (a.spatial[static_cast<size_t>(j)] +
                                       b.spatial[static_cast<size_t>(j)])));
    }
    report.check_le(tag(md, "groups", "first_layer_additivity"), inputs(md, seed, "n=200"),
                    res, 0.0);
  }
  if (md.name == "heisenberg_heat") {
    double res = 0.0;
    for (int i = 0; i < 200; ++i) {
      Point a({0.0, 0.0, rng.uniform(-10, 10)}, 0.0);
      Point b = random_point(rng, 3, -10, 10);
      Point sum({a.spatial[0] + b.spatial[0], a.spatial[1] + b.spatial[1],
                 a.spatial[2] + b.spatial[2]},
                a.time + b.time);
      res = std::max(res, dist_inf(compose(md.law, a, b), sum));
      res = std::max(res, dist_inf(compose(md.law, b, a), sum));
    }
    report.check_le(tag(md, "groups", "last_layer_centrality"), inputs(md, seed, "n=200"),
                    res, 1e-12);
  }
}

void fields_suite(Report& report, const OperatorModel& md, std::uint64_t seed) {
  Rng rng(seed);

  // full rank at the minimal order, including the origin
  int order = md.min_hormander_order;
  bool full = true;
  for (int i = 0; i < 100; ++i) {
    Point z = i == 0 ? Point(std::vector<double>(static_cast<size_t>(md.n), 0.0), 0.0)
                     : random_point(rng, md.n, -3, 3);
    if (hormander_rank(md, z, order) != md.n + 1) full = false;
  }
  report.check_true(tag(md, "fields", "rank_full_at_order_" + std::to_string(order)),
                    inputs(md, seed, "points=100"), full);
  if (order > 1) {
    Point origin(std::vector<double>(static_cast<size_t>(md.n), 0.0), 0.0);
    report.check_true(tag(md, "fields", "rank_strictly_lower_below_minimal_order"),
                      inputs(md, seed, "origin"),
                      hormander_rank(md, origin, order - 1) < md.n + 1);
  }

  if (md.m >= 2) {
    auto X = spacetime_generator(md, 0);
    auto Z = spacetime_generator(md, 1);
    auto W = drift(md);
    double jac = 0.0;
    for (int i = 0; i < 100; ++i)
      jac = std::max(jac, jacobi_residual(X, Z, W, pack(random_point(rng, md.n, -3, 3))));
    report.check_le(tag(md, "fields", "jacobi_identity"), inputs(md, seed, "points=100"),
                    jac, 1e-8);
  }

  if (md.left_invariant) {
    auto fam = invariance_test_functions(md.n);
    double worst = 0.0;  // residual normalized by its own tolerance scale
    for (int i = 0; i < 10; ++i) {
      Point zeta = random_point(rng, md.n, -2, 2);
      Point z = random_point(rng, md.n, -2, 2);
      for (int j = 0; j <= md.m; ++j)
        for (const auto& f : fam) {
          double scale = 1.0 + std::fabs(f(compose(md.law, zeta, z)));
          worst = std::max(worst,
                           left_invariance_residual(md, j, zeta, z, f) / scale);
        }
    }
    report.check_le(tag(md, "fields", "left_invariance"),
                    inputs(md, seed, "points=10x6fns"), worst, 1e-5);
  }

  if (md.name == "heisenberg_heat") {
    auto b12 = bracket(spacetime_generator(md, 0), spacetime_generator(md, 1));
    double res = 0.0;
    for (int i = 0; i < 20; ++i) {
      auto v = b12.eval(pack(random_point(rng, 3, -5, 5)));
      res = std::max({res, std::fabs(v[0]), std::fabs(v[1]), std::fabs(v[2] - 1.0),
                      std::fabs(v[3])});
    }
    report.check_le(tag(md, "fields", "bracket_x1_x2_is_dz"), inputs(md, seed, "points=20"),
                    res, 1e-12);
  }
  if (md.name == "kolmogorov" && md.m == 1) {
    auto b = bracket(spacetime_generator(md, 0), drift(md));
    double res = 0.0;
    for (int i = 0; i < 20; ++i) {
      auto v = b.eval(pack(random_point(rng, 2, -5, 5)));
      res = std::max({res, std::fabs(v[0]), std::fabs(v[1] - 1.0), std::fabs(v[2])});
    }
    report.check_le(tag(md, "fields", "bracket_dx_xdy_is_dy"), inputs(md, seed, "points=20"),
                    res, 1e-12);
  }
  if (md.name == "linked") {
    double res = 0.0;
    auto b12 = bracket(spacetime_generator(md, 0), spacetime_generator(md, 1));
    auto b1y = bracket(spacetime_generator(md, 0), drift(md));
    for (int i = 0; i < 20; ++i) {
      auto x = pack(random_point(rng, 4, -4, 4));
      auto v = b12.eval(x);
      res = std::max({res, std::fabs(v[0]), std::fabs(v[1]), std::fabs(v[2] + 2.0),
                      std::fabs(v[3]), std::fabs(v[4])});
      auto w = b1y.eval(x);
      res = std::max({res, std::fabs(w[0]), std::fabs(w[1]), std::fabs(w[2]),
                      std::fabs(w[3] - 1.0), std::fabs(w[4])});
    }
    report.check_le(tag(md, "fields", "link_brackets"), inputs(md, seed, "points=20"), res,
                    1e-8);
  }
}

void flows_suite(Report& report, const OperatorModel& md, std::uint64_t seed, int cases) {
  Rng rng(seed);
  double cf = 0.0, sg = 0.0, rt = 0.0, tdrift = 0.0;
  for (int i = 0; i < cases; ++i) {
    Point z = random_point(rng, md.n, -2, 2);
    auto omega = rng.vector(md.m, -2, 2);
    double s = rng.uniform(0.0, 2.0);
    cf = std::max(cf, dist_inf(exp_map(md, omega, s, z), exp_map_rk4(md, omega, s, z)));
    double s1 = rng.uniform(0, 1), s2 = rng.uniform(0, 1);
    sg = std::max(sg, dist_inf(exp_map(md, omega, s1 + s2, z),
                               exp_map(md, omega, s2, exp_map(md, omega, s1, z))));
    if (md.left_invariant) rt = std::max(rt, right_translation_residual(md, omega, s, z));
    Point end = exp_map(md, omega, s, z);
    tdrift = std::max(tdrift, std::fabs(end.time - (z.time - s)));
  }
  std::string in = inputs(md, seed, "cases=" + std::to_string(cases));
  report.check_le(tag(md, "flows", "closed_form_vs_rk4"), in, cf, 1e-8);
  report.check_le(tag(md, "flows", "semigroup"), in, sg, 1e-8);
  if (md.left_invariant)
    report.check_le(tag(md, "flows", "right_translation"), in, rt, 1e-8);
  report.check_le(tag(md, "flows", "time_coordinate"), in, tdrift, 1e-12);

  // harnack chain vs the one-shot flow
  double chain_res = 0.0;
  for (int i = 0; i < 10; ++i) {
    auto omega = rng.vector(md.m, -1, 1);
    Point z0 = random_point(rng, md.n, -2, 2);
    auto chain = harnack_chain(md, omega, 0.4, 4, z0);
    for (int k = 0; k <= 4; ++k)
      chain_res = std::max(chain_res, dist_inf(chain[static_cast<size_t>(k)],
                                               exp_map(md, omega, 0.4 * k, z0)));
  }
  report.check_le(tag(md, "flows", "harnack_chain_semigroup"), in, chain_res, 1e-8);
}

void loops_suite(Report& report, const OperatorModel& md, std::uint64_t seed, int cases) {
  Rng rng(seed);
  if (md.name == "heisenberg_heat") {
    Point exact = heisenberg_loop(md, 1.0, 1.0, Point({0, 0, 0}, 0.0));
    report.check_le(tag(md, "loops", "loop_origin_c1_s1"), inputs(md, seed, "c=1,s=1"),
                    dist_inf(exact, Point({0, 0, 1}, -4.0)), 1e-10);
    double worst = 0.0;
    for (int i = 0; i < cases; ++i) {
      double c = rng.uniform(-2, 2), s = rng.uniform(0.1, 1.5);
      Point z = random_point(rng, 3, -3, 3);
      Point got = heisenberg_loop(md, c, s, z);
      Point want({z.spatial[0], z.spatial[1], z.spatial[2] + c * c * s * s},
                 z.time - 4.0 * s);
      worst = std::max(worst, dist_inf(got, want));
    }
    report.check_le(tag(md, "loops", "loop_identity"),
                    inputs(md, seed, "cases=" + std::to_string(cases)), worst, 1e-8);
    report.check_le(tag(md, "loops", "bch_residual"), inputs(md, seed, "s=1e-2"),
                    bch_loop_residual(md, 1, 2, 1e-2, Point({0, 0, 0}, 0.0)), 1e-3);
  } else if (md.name == "mumford") {
    double worst_f = 0.0, worst_l = 0.0;
    for (int i = 0; i < cases; ++i) {
      double s = rng.uniform(0.1, 3.0);
      Point z = random_point(rng, 3, -3, 3);
      Point f = mumford_loop_forward(md, s, z);
      worst_f = std::max(worst_f,
                         dist_inf(f, Point({z.spatial[0] + 2 * M_PI, z.spatial[1],
                                            z.spatial[2]},
                                           z.time - s)));
      Point l = mumford_loop(md, s, z);
      worst_l = std::max(worst_l, dist_inf(l, Point({z.spatial[0], z.spatial[1],
                                                     z.spatial[2]},
                                                    z.time - 2.0 * s)));
    }
    std::string in = inputs(md, seed, "cases=" + std::to_string(cases));
    report.check_le(tag(md, "loops", "forward_leg"), in, worst_f, 1e-8);
    report.check_le(tag(md, "loops", "round_trip"), in, worst_l, 1e-8);
    // commutator loop converges at first order in s
    double r1 = bch_loop_residual_general(md, {1.0}, {0.0}, 0.04, Point({0.7, 0, 0}, 0.0));
    double r2 = bch_loop_residual_general(md, {1.0}, {0.0}, 0.02, Point({0.7, 0, 0}, 0.0));
    double r3 = bch_loop_residual_general(md, {1.0}, {0.0}, 0.01, Point({0.7, 0, 0}, 0.0));
    report.check_true(tag(md, "loops", "bch_rate_linear"), inputs(md, seed, "s=.04,.02,.01"),
                      r2 <= 0.65 * r1 && r3 <= 0.65 * r2);
  } else if (md.name == "kolmogorov") {
    double res = bch_loop_residual_general(md, std::vector<double>(static_cast<size_t>(md.m), 1.0),
                                           std::vector<double>(static_cast<size_t>(md.m), 0.0),
                                           1e-2, random_point(rng, md.n, -2, 2));
    report.check_le(tag(md, "loops", "bch_drift_bracket"), inputs(md, seed, "s=1e-2"), res,
                    1e-8);
  } else if (md.name == "heat") {
    double res = bch_loop_residual(md, 1, md.m >= 2 ? 2 : 1, 0.05,
                                   random_point(rng, md.n, -2, 2));
    report.check_le(tag(md, "loops", "bch_flat"), inputs(md, seed, "s=0.05"), res, 1e-10);
  } else {
    mark_empty(report, md, "loops");
  }
}

void kernel_suite(Report& report, const OperatorModel& md, std::uint64_t seed) {
  Rng rng(seed);
  if (md.kernel == KernelKind::kolmogorov) {
    int m = md.m;
    Point zeta(std::vector<double>(static_cast<size_t>(2 * m), 0.0), 0.0);
    auto u = [&](const Point& z) { return kolmogorov_kernel(m, z, zeta).value; };

    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      double t = rng.uniform(0.6, 1.5);
      double sy = std::sqrt(t * t * t / 6.0);
      std::vector<double> sp(static_cast<size_t>(2 * m));
      for (int j = 0; j < m; ++j) {
        sp[static_cast<size_t>(j)] = rng.uniform(-1, 1);
        sp[static_cast<size_t>(m + j)] =
            -0.5 * t * sp[static_cast<size_t>(j)] + rng.uniform(-sy, sy);
      }
      Point z(sp, t);
      worst = std::max(worst, std::fabs(pde_residual(md, u, z, 5e-4)) / u(z));
    }
    report.check_le(tag(md, "kernel", "pde_residual_relative"),
                    inputs(md, seed, "points=100,h=5e-4"), worst, 1e-4);

    double inv = 0.0;
    for (int i = 0; i < 50; ++i) {
      Point g(rng.vector(2 * m, -2, 2), rng.uniform(-2, 2));
      Point zt(rng.vector(2 * m, -1, 1), rng.uniform(-1, 0));
      Point z(rng.vector(2 * m, -1, 1), zt.time + rng.uniform(0.3, 1.5));
      inv = std::max(inv, kernel_invariance_residual(m, g, z, zt));
    }
    report.check_le(tag(md, "kernel", "translation_and_dilation_invariance"),
                    inputs(md, seed, "cases=50"), inv, 1e-10);

    if (m == 1) {
      double target = std::sqrt(2.0 * M_PI);
      double mass = kolmogorov_mass(1.0);
      report.check_le(tag(md, "kernel", "mass_is_sqrt_2pi"), inputs(md, seed, "dt=1"),
                      std::fabs(mass - target), 0.01 * target);
      double c1 = chapman_kolmogorov_constant(Point({0.4, -0.2}, 0.9), Point({-0.1, 0.3}, -0.4));
      double c2 = chapman_kolmogorov_constant(Point({1.0, 0.5}, 1.4), Point({0.0, 0.0}, 0.0));
      double c3 = chapman_kolmogorov_constant(Point({-0.7, 0.2}, 0.5), Point({0.3, -0.1}, -0.6));
      double spread = std::max(std::fabs(c2 / c1 - 1.0), std::fabs(c3 / c1 - 1.0));
      report.check_le(tag(md, "kernel", "chapman_kolmogorov_single_constant"),
                      inputs(md, seed, "configs=3"), spread, 0.01);
    }
    report.check_true(tag(md, "kernel", "zero_on_or_before_pole_time"),
                      inputs(md, seed, "t<=tau"),
                      kolmogorov_kernel(m, zeta, zeta).value == 0.0 &&
                          kolmogorov_kernel(m, Point(zeta.spatial, -1.0), zeta).value == 0.0);
  } else if (md.kernel == KernelKind::heat) {
    Point zeta(std::vector<double>(static_cast<size_t>(md.n), 0.0), 0.0);
    auto u = [&](const Point& z) { return heat_kernel(md.n, z, zeta).value; };
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      Point z(rng.vector(md.n, -1, 1), rng.uniform(0.6, 1.5));
      worst = std::max(worst, std::fabs(pde_residual(md, u, z, 5e-4)) / u(z));
    }
    report.check_le(tag(md, "kernel", "pde_residual_relative"),
                    inputs(md, seed, "points=100,h=5e-4"), worst, 1e-4);
    if (md.n <= 2)
      report.check_le(tag(md, "kernel", "unit_mass"), inputs(md, seed, "dt=0.8"),
                      std::fabs(heat_mass(md.n, 0.8) - 1.0), 1e-6);
  } else {
    mark_empty(report, md, "kernel");
  }
}

void separation_suite(Report& report, const OperatorModel& md, std::uint64_t seed) {
  Rng rng(seed);
  if (md.has_extremals) {
    double worst_dev = 0.0, worst_val = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> alpha(static_cast<size_t>(md.n), 0.0);
      for (int j = 0; j < md.m; ++j) alpha[static_cast<size_t>(j)] = rng.uniform(-1, 1);
      auto sol = extremal(md, alpha);
      auto u = sol.as_function();
      std::vector<Point> samples;
      for (int i = 0; i < 100; ++i) samples.push_back(random_point(rng, md.n, -2, 2));
      double s = rng.uniform(0.2, 1.5);
      auto r = separation_ratio(md, u, std::vector<double>(static_cast<size_t>(md.m), 0.0),
                                s, samples);
      worst_dev = std::max(worst_dev, r.max_deviation / r.mean);
      worst_val = std::max(worst_val, std::fabs(r.mean - std::exp(s * sol.lambda)));
    }
    std::string in = inputs(md, seed, "extremals=5,samples=100");
    report.check_le(tag(md, "separation", "ratio_constant"), in, worst_dev, 1e-12);
    report.check_le(tag(md, "separation", "ratio_value"), in, worst_val, 1e-10);

    double resid = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> alpha(static_cast<size_t>(md.n), 0.0);
      for (int j = 0; j < md.m; ++j) alpha[static_cast<size_t>(j)] = rng.uniform(-1, 1);
      auto u = extremal(md, alpha).as_function();
      for (int i = 0; i < 100; ++i) {
        Point z = random_point(rng, md.n, -1.5, 1.5);
        resid = std::max(resid, std::fabs(pde_residual(md, u, z)) / u(z));
      }
    }
    report.check_le(tag(md, "separation", "extremal_pde_residual"),
                    inputs(md, seed, "extremals=3,points=100"), resid, 1e-6);

    // growth labels on the catalog: only the constant member stays
    // subexponential at x = 0 for every positive epsilon
    bool labels_ok = true;
    {
      std::vector<double> zero(static_cast<size_t>(md.n), 0.0);
      Point origin(zero, 0.0);
      auto samples_of = [&](const ExtremalSolution& sol) {
        std::vector<std::pair<double, double>> samples;
        for (int i = 0; i < 12; ++i) {
          Point z = origin;
          z.time = 0.5 * i;
          samples.push_back({z.time, sol.parabolic(z)});
        }
        return samples;
      };
      auto flat = extremal(md, zero);
      for (double eps : {1e-6, 0.1, 1.0})
        if (!liouville_growth_check(samples_of(flat), eps)) labels_ok = false;
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<double> alpha(zero);
        for (int j = 0; j < md.m; ++j) alpha[static_cast<size_t>(j)] = rng.uniform(0.3, 1.0);
        auto sol = extremal(md, alpha);
        if (liouville_growth_check(samples_of(sol), -sol.lambda / 2.0)) labels_ok = false;
      }
    }
    report.check_true(tag(md, "separation", "liouville_label_constant_only"),
                      inputs(md, seed, "eps sweep"), labels_ok);
  } else if (md.name == "ou") {
    double resid = 0.0;
    for (int i = 0; i < 100; ++i) {
      double lambda = rng.uniform(-1, 1);
      auto u = [lambda](const Point& z) { return ou_minimal(lambda, z.spatial[0], z.time); };
      Point z({rng.uniform(-2, 2)}, rng.uniform(-1, 0));
      resid = std::max(resid, std::fabs(pde_residual(md, u, z, 1e-4)) / u(z));
    }
    report.check_le(tag(md, "separation", "minimal_solution_pde_residual"),
                    inputs(md, seed, "points=100,h=1e-4"), resid, 1e-6);
  } else {
    mark_empty(report, md, "separation");
  }
}

void reach_suite(Report& report, const OperatorModel& md, std::uint64_t seed, int n_paths) {
  if (md.oracle == OracleKind::none) {
    mark_empty(report, md, "reach");
    return;
  }
  Point z0(std::vector<double>(static_cast<size_t>(md.n), 0.0), 0.0);
  auto cloud = sample_attainable(md, z0, n_paths, 4, 2.0, 1.0, seed);
  int sound = 0;
  bool in_time = true;
  for (const auto& e : cloud.endpoints) {
    auto mv = membership(md, z0, e, 1e-6);
    if (mv.verdict == Verdict::inside || mv.verdict == Verdict::boundary) ++sound;
    if (e.time < z0.time - cloud.horizon - 1e-12 || e.time > z0.time) in_time = false;
  }
  std::string in = inputs(md, seed, "paths=" + std::to_string(n_paths) + ",segments=4,bound=2,horizon=1");
  report.check_true(tag(md, "reach", "all_endpoints_in_attainable_set"), in,
                    sound == static_cast<int>(cloud.endpoints.size()));
  report.check_true(tag(md, "reach", "no_dropped_paths"), in, cloud.dropped == 0);
  report.check_true(tag(md, "reach", "endpoint_times_in_horizon"), in, in_time);

  if (md.oracle == OracleKind::cmp) {
    Point c0({1.0, 0.0, 0.0}, 0.0);
    auto mv = membership(md, c0, exp_map(md, {0.0}, 1.0, c0));
    report.check_true(tag(md, "reach", "drift_point_on_boundary"), inputs(md, seed, "s=1"),
                      mv.verdict == Verdict::boundary && std::fabs(mv.margin) <= 1e-9);
  }
  if (md.oracle == OracleKind::cmp) {
    Rng rng(seed + 1);
    bool covariant = true;
    for (int i = 0; i < 100; ++i) {
      Point z = random_point(rng, 3, -2, 2);
      double r = rng.uniform(0.2, 3.0);
      auto v1 = membership(md, z0, z);
      auto v2 = membership(md, z0, dilate(*md.dilation, r, z));
      if (std::fabs(v1.margin) <= 1e-7 || std::fabs(v2.margin) <= 1e-7) continue;
      if (v1.verdict != v2.verdict) covariant = false;
    }
    report.check_true(tag(md, "reach", "dilation_covariance"), inputs(md, seed, "cases=100"),
                      covariant);
  }
}

void martin_suite(Report& report, const OperatorModel& md, std::uint64_t seed) {
  if (md.name != "kolmogorov") {
    mark_empty(report, md, "martin");
    return;
  }
  int m = md.m;
  std::vector<double> w1(static_cast<size_t>(m), 0.0);
  std::vector<double> w2(static_cast<size_t>(m), 0.0);
  w2[0] = 1.0 / 3.0;
  MartinSequence seq;
  seq.m = m;
  seq.T = 0.0;
  seq.generator = [w1, w2](long k, std::vector<double>& xi, std::vector<double>& eta,
                           double& tau) {
    double kd = static_cast<double>(k);
    xi.resize(w1.size());
    eta.resize(w2.size());
    for (size_t i = 0; i < w1.size(); ++i) {
      xi[i] = 2.0 * kd * w1[i];
      eta[i] = kd * kd * w2[i];
    }
    tau = -kd;
  };
  auto pred = martin_limit_predicted(w1, w2);

  std::vector<Point> pts;
  if (m == 1) {
    pts = {Point({1, 5}, -1), Point({0.5, 0}, -0.5), Point({0, 1}, -1),
           Point({-1, 2}, -0.5), Point({0.3, -2}, -0.8)};
  } else {
    Rng rng(seed);
    for (int i = 0; i < 5; ++i) {
      std::vector<double> sp = rng.vector(2 * m, -1, 1);
      pts.emplace_back(sp, rng.uniform(-1.0, -0.3));
    }
  }
  bool decreasing = true;
  double final_err = 0.0;
  for (const auto& z : pts) {
    double e100 = std::fabs(martin_quotient(m, 0.0, seq, 100, z) - pred(z));
    double e1k = std::fabs(martin_quotient(m, 0.0, seq, 1000, z) - pred(z));
    double e10k = std::fabs(martin_quotient(m, 0.0, seq, 10000, z) - pred(z));
    if (!(e1k < e100 && e10k < e1k)) decreasing = false;
    final_err = std::max(final_err, e1k);
  }
  std::string in = inputs(md, seed, "family=(2kw1,k^2w2,-k),k=100,1000,10000");
  report.check_true(tag(md, "martin", "error_decreases_in_k"), in, decreasing);
  report.check_le(tag(md, "martin", "error_at_k_1000"), in, final_err, 2e-2);

  MartinSequence zseq;
  zseq.m = m;
  zseq.T = 0.0;
  zseq.generator = [m](long k, std::vector<double>& xi, std::vector<double>& eta, double& tau) {
    xi.assign(static_cast<size_t>(m), static_cast<double>(k));
    eta.assign(static_cast<size_t>(m), 0.0);
    tau = -1.0;
  };
  Point zz(std::vector<double>(static_cast<size_t>(2 * m), 0.0), -0.5);
  zz.spatial[0] = 0.5;
  report.check_le(tag(md, "martin", "unbounded_predictor_vanishes"),
                  inputs(md, seed, "family=(kw,0,-1),k=200"),
                  martin_quotient(m, 0.0, zseq, 200, zz), 1e-8);

  MartinSequence bseq;
  bseq.m = m;
  bseq.T = 0.0;
  bseq.generator = [m](long k, std::vector<double>& xi, std::vector<double>& eta, double& tau) {
    xi.assign(static_cast<size_t>(m), static_cast<double>(k));
    eta.assign(static_cast<size_t>(m), 0.0);
    tau = -1.0 + 1.0 / static_cast<double>(k + 1);
  };
  Point below(std::vector<double>(static_cast<size_t>(2 * m), 0.0), -1.5);
  bool zeros = true;
  for (long k : {1L, 10L, 100L, 1000L})
    if (martin_quotient(m, 0.0, bseq, k, below) != 0.0) zeros = false;
  report.check_true(tag(md, "martin", "bounded_tau_exact_zeros"),
                    inputs(md, seed, "tau->-1,t=-1.5"), zeros);

  // invariant Harnack shape of the predicted limits
  Rng rng(seed + 2);
  double harnack = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> v(static_cast<size_t>(m));
    for (auto& c : v) c = rng.uniform(-1.5, 1.5);
    std::vector<double> wzero(static_cast<size_t>(m), 0.0), wthird(static_cast<size_t>(m));
    for (size_t j = 0; j < v.size(); ++j) wthird[j] = v[j] / 3.0;
    auto uu = martin_limit_predicted(wzero, wthird);
    double v2 = 0.0;
    for (double c : v) v2 += c * c;
    std::vector<double> sp = rng.vector(2 * m, -3, 3);
    double t = rng.uniform(-2, 2), tau = rng.uniform(0.1, 2.0);
    std::vector<double> shifted = sp;
    for (int j = 0; j < m; ++j) shifted[static_cast<size_t>(m + j)] += tau * sp[static_cast<size_t>(j)];
    double lhs = uu(Point(shifted, t - tau)) / uu(Point(sp, t));
    harnack = std::max(harnack, std::fabs(lhs / std::exp(-tau * v2) - 1.0));
  }
  report.check_le(tag(md, "martin", "invariant_harnack_shape"),
                  inputs(md, seed, "cases=100"), harnack, 1e-12);
}

void solver_suite(Report& report, const OperatorModel& md, std::uint64_t seed) {
  Rng rng(seed);
  if (md.name == "kolmogorov" && md.m == 1) {
    double v = 0.5;
    GridField u0 = make_grid({{-3.5, 3.5, 71}, {-1, 1, 21}},
                             [v](const std::vector<double>& x) { return std::exp(v * x[0]); });
    GridField out = solve_cauchy(md, u0, 0.002, 125);
    double worst = 0.0;
    int nx = out.box[0].points, ny = out.box[1].points;
    for (int i = 0; i < nx; ++i) {
      double x = out.coord(0, i);
      if (std::fabs(x) > 1.5) continue;
      for (int j = 0; j < ny; ++j) {
        double exact = std::exp(v * x + v * v * out.time);
        worst = std::max(worst, std::fabs(out.values[out.index({i, j})] - exact) / exact);
      }
    }
    std::string in = inputs(md, seed, "box=7x2,h=0.1,dt=0.002,t=0.25,margin=2");
    report.check_le(tag(md, "solver", "extremal_interior_error"), in, worst, 1e-3);
    report.check_le(tag(md, "solver", "y_independence"), in,
                    y_independence_deviation(out, 1), 1e-10);

    GridField c0 = make_grid({{-2, 2, 21}, {-1, 1, 11}},
                             [](const std::vector<double>&) { return 1.0; });
    GridField cout_ = solve_cauchy(md, c0, 0.002, 100);
    bool constant = true;
    for (double val : cout_.values)
      if (val != 1.0) constant = false;
    report.check_true(tag(md, "solver", "constants_preserved_exactly"),
                      inputs(md, seed, "steps=100"), constant);

    GridField r0 = make_grid({{-2, 2, 21}, {-1, 1, 11}}, [&rng](const std::vector<double>&) {
      return rng.uniform(0.0, 5.0);
    });
    GridField rout = solve_cauchy(md, r0, 0.002, 200);
    bool nonneg = true;
    for (double val : rout.values)
      if (val < 0.0) nonneg = false;
    report.check_true(tag(md, "solver", "nonnegativity_preserved"),
                      inputs(md, seed, "steps=200"), nonneg);

    // discrete separation ratio across 50 steps
    GridField early = solve_cauchy(md, u0, 0.002, 75);
    double predicted = std::exp(-v * v * 0.002 * 50);
    double dev = 0.0;
    for (int i = 0; i < nx; ++i) {
      if (std::fabs(u0.coord(0, i)) > 1.5) continue;
      double ratio = early.values[early.index({i, ny / 2})] /
                     out.values[out.index({i, ny / 2})];
      dev = std::max(dev, std::fabs(ratio - predicted));
    }
    report.check_le(tag(md, "solver", "discrete_separation_ratio"),
                    inputs(md, seed, "steps=50"), dev, 1e-3);
  } else if (md.name == "heat" && md.n <= 2) {
    GridField c0 =
        md.n == 1
            ? make_grid({{-2, 2, 21}}, [](const std::vector<double>&) { return 2.0; })
            : make_grid({{-2, 2, 21}, {-2, 2, 21}},
                        [](const std::vector<double>&) { return 2.0; });
    GridField cout_ = solve_cauchy(md, c0, 0.002, 100);
    bool constant = true;
    for (double val : cout_.values)
      if (val != 2.0) constant = false;
    report.check_true(tag(md, "solver", "constants_preserved_exactly"),
                      inputs(md, seed, "steps=100"), constant);
  } else if (md.name == "grushin") {
    GridField c0 = make_grid({{-1, 1, 11}, {-1, 1, 11}},
                             [](const std::vector<double>&) { return 3.0; });
    GridField cout_ = solve_cauchy(md, c0, 0.0005, 100);
    bool constant = true;
    for (double val : cout_.values)
      if (val != 3.0) constant = false;
    report.check_true(tag(md, "solver", "constants_preserved_exactly"),
                      inputs(md, seed, "steps=100"), constant);
  } else {
    mark_empty(report, md, "solver");
  }
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "groups", "fields", "flows", "loops", "kernel", "separation", "reach", "martin",
      "solver"};
  return names;
}

bool is_suite(const std::string& name) {
  for (const auto& s : suite_names())
    if (s == name) return true;
  return false;
}

void run_suite(Report& report, const std::string& name, const OperatorModel& md,
               std::uint64_t seed) {
  if (name == "groups") groups_suite(report, md, seed);
  else if (name == "fields") fields_suite(report, md, seed);
  else if (name == "flows") flows_suite(report, md, seed);
  else if (name == "loops") loops_suite(report, md, seed);
  else if (name == "kernel") kernel_suite(report, md, seed);
  else if (name == "separation") separation_suite(report, md, seed);
  else if (name == "reach") reach_suite(report, md, seed);
  else if (name == "martin") martin_suite(report, md, seed);
  else if (name == "solver") solver_suite(report, md, seed);
  else throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace hypoflow::verify
