#include <doctest.h>

#include <cmath>

#include "hypoflow/flows.hpp"
#include "hypoflow/kernels.hpp"
#include "hypoflow/models.hpp"
#include "test_util.hpp"

using namespace hypoflow;
using hftest::pt;
using hftest::rand_point;

TEST_SUITE_BEGIN("fields");

TEST_CASE("drift is X0 - d_t") {
  auto heat = models::heat(2);
  auto Yh = drift(heat).eval({0.4, -1.0, 3.0});
  CHECK(Yh[0] == 0.0);
  CHECK(Yh[1] == 0.0);
  CHECK(Yh[2] == -1.0);

  auto mum = models::mumford();
  auto Ym = drift(mum).eval({0.0, 5.0, -2.0, 1.0});
  CHECK(Ym[0] == 0.0);
  CHECK(Ym[1] == doctest::Approx(1.0));
  CHECK(Ym[2] == doctest::Approx(0.0));
  CHECK(Ym[3] == -1.0);

  auto kol = models::kolmogorov(1);
  auto Yk = drift(kol).eval({2.0, 5.0, 0.3});
  CHECK(Yk[0] == 0.0);
  CHECK(Yk[1] == 2.0);
  CHECK(Yk[2] == -1.0);
}

TEST_CASE("bracket facts with analytic Jacobians") {
  auto hh = models::heisenberg_heat();
  auto b12 = bracket(spacetime_generator(hh, 0), spacetime_generator(hh, 1));
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    auto v = b12.eval(pack(rand_point(rng, 3, -5, 5)));
    CHECK(std::fabs(v[0]) <= 1e-12);
    CHECK(std::fabs(v[1]) <= 1e-12);
    CHECK(std::fabs(v[2] - 1.0) <= 1e-12);
    CHECK(std::fabs(v[3]) <= 1e-12);
  }

  auto kol = models::kolmogorov(1);
  auto b1y = bracket(spacetime_generator(kol, 0), drift(kol));
  for (int i = 0; i < 20; ++i) {
    auto v = b1y.eval(pack(rand_point(rng, 2, -5, 5)));
    CHECK(std::fabs(v[0]) <= 1e-12);
    CHECK(std::fabs(v[1] - 1.0) <= 1e-12);
    CHECK(std::fabs(v[2]) <= 1e-12);
  }
}

TEST_CASE("bracket of a field with itself vanishes") {
  auto mum = models::mumford();
  auto v = bracket(drift(mum), drift(mum)).eval(pack(pt({0.3, 1.0, -1.0}, 0.2)));
  for (double c : v) CHECK(c == 0.0);
}

TEST_CASE("bracket antisymmetry is exact for analytic fields") {
  auto lk = models::linked();
  auto a = bracket(spacetime_generator(lk, 0), drift(lk));
  auto b = bracket(drift(lk), spacetime_generator(lk, 0));
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    auto x = pack(rand_point(rng, 4, -5, 5));
    auto va = a.eval(x), vb = b.eval(x);
    for (size_t k = 0; k < va.size(); ++k) CHECK(va[k] + vb[k] == 0.0);
  }
}

TEST_CASE("bracket rejects dimension mismatch") {
  auto kol = models::kolmogorov(1);
  auto mum = models::mumford();
  CHECK_THROWS_AS(bracket(drift(kol), drift(mum)), std::invalid_argument);
}

TEST_CASE("Jacobi identity at 100 random points") {
  auto lk = models::linked();
  auto X = spacetime_generator(lk, 0);
  auto Z = spacetime_generator(lk, 1);
  auto W = drift(lk);
  Rng rng(21);
  for (int i = 0; i < 100; ++i)
    CHECK(jacobi_residual(X, Z, W, pack(rand_point(rng, 4, -3, 3))) <= 1e-8);

  auto mum = models::mumford();
  auto Xm = spacetime_generator(mum, 0);
  auto Ym = drift(mum);
  auto Bm = bracket(Xm, Ym);
  for (int i = 0; i < 100; ++i)
    CHECK(jacobi_residual(Xm, Ym, Bm, pack(rand_point(rng, 3, -3, 3))) <= 1e-8);
}

TEST_CASE("numeric Jacobian fallback agrees with the analytic one") {
  auto cmp = models::cmp();
  VectorField numeric = cmp.drift_x0;
  numeric.jacobian = nullptr;
  numeric.hessian = nullptr;
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    auto x = rng.vector(3, -3, 3);
    auto ja = cmp.drift_x0.eval_jacobian(x);
    auto jn = numeric.eval_jacobian(x);
    for (size_t k = 0; k < ja.size(); ++k) CHECK(std::fabs(ja[k] - jn[k]) <= 1e-7);
  }
}

TEST_CASE("Hormander rank at the per-model minimal order, strict one order below") {
  Rng rng(77);
  for (auto& md : models::catalog()) {
    INFO(md.name);
    int order = md.min_hormander_order;
    for (int i = 0; i < 100; ++i) {
      Point z = rand_point(rng, md.n, -3, 3);
      if (i == 0) z = Point(std::vector<double>(static_cast<size_t>(md.n), 0.0), 0.0);
      CHECK(hormander_rank(md, z, order) == md.n + 1);
    }
    if (order > 1) {
      // degenerate models miss directions one order below
      Point origin(std::vector<double>(static_cast<size_t>(md.n), 0.0), 0.0);
      CHECK(hormander_rank(md, origin, order - 1) < md.n + 1);
    }
  }
}

TEST_CASE("minimal Hormander order is discovered, not assumed") {
  // search upward for the first order giving full rank on a point sample
  // that includes the origin (where degeneracies concentrate)
  Rng rng(271);
  for (auto& md : models::catalog()) {
    INFO(md.name);
    int found = -1;
    for (int order = 1; order <= 4 && found < 0; ++order) {
      bool full = true;
      for (int i = 0; i < 30 && full; ++i) {
        Point z = i == 0 ? Point(std::vector<double>(static_cast<size_t>(md.n), 0.0), 0.0)
                         : rand_point(rng, md.n, -3, 3);
        if (hormander_rank(md, z, order) != md.n + 1) full = false;
      }
      if (full) found = order;
    }
    CHECK(found == md.min_hormander_order);
  }
}

TEST_CASE("heat rank is full at order one everywhere") {
  auto heat = models::heat(2);
  Rng rng(13);
  for (int i = 0; i < 100; ++i)
    CHECK(hormander_rank(heat, rand_point(rng, 2), 1) == 3);
}

TEST_CASE("mumford needs third-order brackets at x = 0") {
  auto mum = models::mumford();
  Point z = pt({0.0, 0.7, -0.2}, 1.0);
  CHECK(hormander_rank(mum, z, 3) == 4);
  CHECK(hormander_rank(mum, z, 2) == 3);
}

TEST_CASE("linked model bracket structure") {
  auto lk = models::linked();
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    auto x = pack(rand_point(rng, 4, -4, 4));
    // generator bracket acts on the Heisenberg vertical only
    auto v = bracket(spacetime_generator(lk, 0), spacetime_generator(lk, 1)).eval(x);
    CHECK(std::fabs(v[0]) <= 1e-8);
    CHECK(std::fabs(v[1]) <= 1e-8);
    CHECK(std::fabs(v[2] + 2.0) <= 1e-8);
    CHECK(std::fabs(v[3]) <= 1e-8);
    CHECK(std::fabs(v[4]) <= 1e-8);
    // drift bracket reproduces d_w
    auto w = bracket(spacetime_generator(lk, 0), drift(lk)).eval(x);
    CHECK(std::fabs(w[0]) <= 1e-8);
    CHECK(std::fabs(w[1]) <= 1e-8);
    CHECK(std::fabs(w[2]) <= 1e-8);
    CHECK(std::fabs(w[3] - 1.0) <= 1e-8);
    CHECK(std::fabs(w[4]) <= 1e-8);
    // the second generator commutes with the drift
    auto u = bracket(spacetime_generator(lk, 1), drift(lk)).eval(x);
    for (double c : u) CHECK(std::fabs(c) <= 1e-8);
  }
}

TEST_CASE("left invariance residual across the invariant catalog") {
  Rng rng(42);
  for (auto& md : models::catalog()) {
    if (!md.left_invariant) continue;
    INFO(md.name);
    auto fam = invariance_test_functions(md.n);
    for (int i = 0; i < 10; ++i) {
      Point zeta = rand_point(rng, md.n, -2, 2);
      Point z = rand_point(rng, md.n, -2, 2);
      for (int j = 0; j <= md.m; ++j)
        for (auto& f : fam) {
          double tol = 1e-5 * (1.0 + std::fabs(f(compose(md.law, zeta, z))));
          CHECK(left_invariance_residual(md, j, zeta, z, f) <= tol);
        }
    }
  }
}

TEST_CASE("left invariance spec examples") {
  auto heat = models::heat(2);
  auto f2 = [](const Point& z) { return z.spatial[0] * z.spatial[0] + z.spatial[1] * z.spatial[1]; };
  CHECK(left_invariance_residual(heat, 1, pt({2.0, -3.0}, 1.0), pt({0.5, 0.25}, -1.0), f2) <= 1e-6);

  auto hh = models::heisenberg_heat();
  auto prod = [](const Point& z) { return z.spatial[0] * z.spatial[1] * z.spatial[2]; };
  CHECK(left_invariance_residual(hh, 1, pt({1, 2, 3}, 0.0), pt({0.3, -0.4, 0.1}, 0.2), prod) <= 1e-5);
  CHECK(left_invariance_residual(hh, 2, pt({1, 2, 3}, 0.0), pt({0.3, -0.4, 0.1}, 0.2), prod) <= 1e-5);

  auto kol = models::kolmogorov(1);
  auto sc = [](const Point& z) { return std::sin(z.spatial[0]) * std::cos(z.spatial[1]); };
  CHECK(left_invariance_residual(kol, 1, pt({1, 1}, 1.0), pt({0.2, 0.4}, -0.3), sc) <= 1e-5);
  CHECK(left_invariance_residual(kol, 0, pt({1, 1}, 1.0), pt({0.2, 0.4}, -0.3), sc) <= 1e-5);
}

TEST_CASE("grushin genuinely fails the invariance identities") {
  // the degenerate direction x = 0 admits no compatible group; the
  // translation law it carries for the axiom checks is not invariant
  auto gr = models::grushin();
  REQUIRE_FALSE(gr.left_invariant);
  auto f = [](const Point& z) { return z.spatial[1] * z.spatial[1]; };
  double res = left_invariance_residual(gr, 2, pt({1.0, 0.0}, 0.0), pt({0.5, 0.2}, 0.1), f);
  CHECK(res > 1e-3);
  CHECK(right_translation_residual(gr, {0.0, 1.0}, 1.0, pt({1.0, 0.0}, 0.0)) > 1e-3);
}

TEST_CASE("gauge shift") {
  auto one = [](const Point&) { return 1.0; };
  auto same = gauge_shift(one, 0.0);
  CHECK(same(pt({1, 2}, 3.0)) == 1.0);

  auto shifted = gauge_shift(one, 1.0);
  CHECK(shifted(pt({0}, 2.0)) == doctest::Approx(std::exp(-2.0)));

  // heat: e^{lambda t} solves Lw = lambda w; the shift makes it L-harmonic
  auto heat = models::heat(1);
  double lambda = 0.7;
  auto u = [lambda](const Point& z) { return std::exp(lambda * z.time); };
  auto v = gauge_shift(u, lambda);
  CHECK(v(pt({0.3}, -1.2)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gauge shift turns eigen-solutions into solutions") {
  auto hh = models::heisenberg_heat();
  // stationary factor with lambda = -|alpha|^2 solves Lw = lambda w after
  // undoing the time factor; the shift restores a genuine solution
  std::vector<double> alpha = {0.5, -0.3, 0.0};
  double lambda = -(0.25 + 0.09);
  auto stationary = [&alpha](const Point& z) {
    return std::exp(alpha[0] * z.spatial[0] + alpha[1] * z.spatial[1]);
  };
  auto shifted = gauge_shift(stationary, lambda);
  Rng rng(61);
  for (int i = 0; i < 50; ++i) {
    Point z(rng.vector(3, -1.5, 1.5), rng.uniform(-1, 1));
    CHECK(std::fabs(pde_residual(hh, shifted, z)) <= 1e-6 * shifted(z));
  }
}

TEST_SUITE_END();
