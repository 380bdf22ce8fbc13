#include <doctest.h>

#include <cmath>

#include "hypoflow/flows.hpp"
#include "test_util.hpp"

using namespace hypoflow;
using hftest::pt;
using hftest::rand_point;

TEST_SUITE_BEGIN("flows");

TEST_CASE("integrate_admissible basics") {
  auto heat = models::heat(2);
  ControlSchedule rest;
  rest.segments.push_back({1.0, {0.0, 0.0}});
  Path p = integrate_admissible(heat, rest, pt({1.0, -2.0}, 0.5), 1e-2);
  CHECK(dist_inf(p.endpoint(), pt({1.0, -2.0}, -0.5)) <= 1e-12);

  auto kol = models::kolmogorov(1);
  ControlSchedule drift_only;
  drift_only.segments.push_back({1.0, {0.0}});
  Path pk = integrate_admissible(kol, drift_only, pt({1, 0}, 0), 1e-3);
  CHECK(dist_inf(pk.endpoint(), pt({1, 1}, -1)) <= 1e-10);

  auto mum = models::mumford();
  ControlSchedule unit;
  unit.segments.push_back({M_PI / 2, {1.0}});
  Path pm = integrate_admissible(mum, unit, pt({0, 0, 0}, 0), 1e-3);
  CHECK(dist_inf(pm.endpoint(), pt({M_PI / 2, 1.0, 1.0}, -M_PI / 2)) <= 1e-8);
}

TEST_CASE("integrate_admissible validates inputs") {
  auto heat = models::heat(2);
  ControlSchedule s;
  s.segments.push_back({0.05, {0.0, 0.0}});
  CHECK_THROWS_AS(integrate_admissible(heat, s, pt({0, 0}, 0), 0.1), std::invalid_argument);
  ControlSchedule bad;
  bad.segments.push_back({-1.0, {0.0, 0.0}});
  CHECK_THROWS_AS(integrate_admissible(heat, bad, pt({0, 0}, 0), 1e-2), std::invalid_argument);
}

TEST_CASE("integration blow-up reports the offending curve parameter") {
  // x' = x + 1 grows like e^s and overflows within the schedule
  auto ou = models::ou();
  ControlSchedule runaway;
  runaway.segments.push_back({800.0, {1.0}});
  try {
    integrate_admissible(ou, runaway, pt({1.0}, 0.0), 1.0);
    FAIL("expected FlowBlowup");
  } catch (const FlowBlowup& e) {
    CHECK(e.s > 0.0);
    CHECK(e.s <= 800.0);
  }
}

TEST_CASE("non-default dimensions: kolmogorov m=2 and heat N=1,3") {
  Rng rng(314);
  for (auto md : {models::kolmogorov(2), models::heat(1), models::heat(3)}) {
    INFO(md.name, " n=", md.n);
    for (int i = 0; i < 20; ++i) {
      Point z = rand_point(rng, md.n, -2, 2);
      auto omega = rng.vector(md.m, -2, 2);
      double s = rng.uniform(0.0, 2.0);
      CHECK(dist_inf(exp_map(md, omega, s, z), exp_map_rk4(md, omega, s, z)) <= 1e-8);
      CHECK(right_translation_residual(md, omega, s, z) <= 1e-8);
      Point a = rand_point(rng, md.n), b = rand_point(rng, md.n), c = rand_point(rng, md.n);
      CHECK(associativity_residual(md.law, a, b, c) <= 1e-10);
      CHECK(inverse_residual(md.law, a) <= 1e-10);
    }
    CHECK(hormander_rank(md, rand_point(rng, md.n, -2, 2), md.min_hormander_order) ==
          md.n + 1);
  }
}

TEST_CASE("time coordinate after integration equals t0 - total duration") {
  auto cmp = models::cmp();
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    ControlSchedule sched;
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
      double d = rng.uniform(0.1, 0.6);
      total += d;
      sched.segments.push_back({d, {rng.uniform(-2, 2)}});
    }
    Point z0 = rand_point(rng, 3, -2, 2);
    Path p = integrate_admissible(cmp, sched, z0, 1e-2);
    CHECK(std::fabs(p.endpoint().time - (z0.time - total)) <= 1e-12);
    for (const auto& sample : p.samples)
      CHECK(std::fabs(sample.z.time - (z0.time - sample.s)) <= 1e-12);
  }
}

TEST_CASE("exp_map closed forms") {
  auto mum = models::mumford();
  Point a = exp_map(mum, {0.0}, 0.8, pt({0.5, 1.0, -1.0}, 0.3));
  CHECK(a.spatial[0] == doctest::Approx(0.5));
  CHECK(a.spatial[1] == doctest::Approx(1.0 + 0.8 * std::cos(0.5)));
  CHECK(a.spatial[2] == doctest::Approx(-1.0 + 0.8 * std::sin(0.5)));
  CHECK(a.time == doctest::Approx(0.3 - 0.8));

  auto hh = models::heisenberg_heat();
  double c = 1.3, s = 0.6;
  Point h = exp_map(hh, {c, 0.0}, s, pt({0.2, -0.7, 0.1}, 0.0));
  CHECK(h.spatial[0] == doctest::Approx(0.2 + c * s));
  CHECK(h.spatial[1] == doctest::Approx(-0.7));
  CHECK(h.spatial[2] == doctest::Approx(0.1 - c * s * (-0.7) / 2.0).epsilon(1e-12));
  CHECK(h.time == doctest::Approx(-0.6));

  auto cmp = models::cmp();
  Point q = exp_map(cmp, {0.0}, 1.0, pt({1, 0, 0}, 0));
  CHECK(dist_inf(q, pt({1, 1, 1}, -1)) <= 1e-14);

  auto heat = models::heat(2);
  CHECK(dist_inf(exp_map(heat, {0, 0}, 0.0, pt({1, 2}, 3)), pt({1, 2}, 3)) == 0.0);
  CHECK_THROWS_AS(exp_map(heat, {0, 0}, -1.0, pt({1, 2}, 3)), std::invalid_argument);
  CHECK_THROWS_AS(exp_map(heat, {0.0}, 1.0, pt({1, 2}, 3)), std::invalid_argument);
}

TEST_CASE("exp_map falls back to RK4 when no closed form is attached") {
  auto heat = models::heat(2);
  auto stripped = heat;
  stripped.exp_closed = nullptr;
  Point z = pt({0.4, -1.0}, 0.2);
  CHECK(dist_inf(exp_map(stripped, {1.0, -0.5}, 1.3, z),
                 exp_map(heat, {1.0, -0.5}, 1.3, z)) <= 1e-10);
}

TEST_CASE("mumford flow is continuous across the small-omega series branch") {
  auto mum = models::mumford();
  Point z = pt({0.8, -0.4, 1.2}, 0.3);
  double s = 1.7;
  Point base = exp_map(mum, {0.0}, s, z);
  for (double w : {1e-12, 1e-10, 1e-9, 5e-9, 1e-7, 1e-5}) {
    Point got = exp_map(mum, {w}, s, z);
    // the exact increment differs from the zero-control flow by O(s^2 w)
    CHECK(dist_inf(got, base) <= 10.0 * s * s * w + 1e-13);
    CHECK(dist_inf(got, exp_map_rk4(mum, {w}, s, z)) <= 1e-10);
  }
}

TEST_CASE("closed form agrees with RK4 over s in [0,2], 100 cases per model") {
  for (auto& md : models::catalog()) {
    INFO(md.name);
    Rng rng(1000);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      Point z = rand_point(rng, md.n, -2, 2);
      auto omega = rng.vector(md.m, -2, 2);
      double s = rng.uniform(0.0, 2.0);
      worst = std::max(worst, dist_inf(exp_map(md, omega, s, z),
                                       exp_map_rk4(md, omega, s, z)));
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("semigroup property of constant-control flows") {
  for (auto& md : models::catalog()) {
    INFO(md.name);
    Rng rng(2000);
    for (int i = 0; i < 100; ++i) {
      Point z = rand_point(rng, md.n, -2, 2);
      auto omega = rng.vector(md.m, -2, 2);
      double s1 = rng.uniform(0, 1), s2 = rng.uniform(0, 1);
      Point once = exp_map(md, omega, s1 + s2, z);
      Point twice = exp_map(md, omega, s2, exp_map(md, omega, s1, z));
      CHECK(dist_inf(once, twice) <= 1e-8);
    }
  }
}

TEST_CASE("closed forms remain valid for backward flows") {
  // the commutator loops run the middle legs backward in the curve parameter
  Rng rng(55);
  for (auto& md : models::catalog()) {
    INFO(md.name);
    for (int i = 0; i < 20; ++i) {
      Point z = rand_point(rng, md.n, -2, 2);
      auto omega = rng.vector(md.m, -1.5, 1.5);
      double s = rng.uniform(0.1, 1.5);
      Point back = md.exp_closed(omega, -s, z);
      CHECK(dist_inf(back, exp_map_rk4(md, omega, -s, z)) <= 1e-8);
      // backward then forward returns to the start
      CHECK(dist_inf(exp_map(md, omega, s, back), z) <= 1e-9);
    }
  }
}

TEST_CASE("RK4 disagreement shrinks at fourth order") {
  auto mum = models::mumford();
  Point z = pt({0.3, -0.5, 0.2}, 0.0);
  Point exact = exp_map(mum, {1.0}, 2.0, z);
  double e1 = dist_inf(exp_map_rk4(mum, {1.0}, 2.0, z, 0.02), exact);
  double e2 = dist_inf(exp_map_rk4(mum, {1.0}, 2.0, z, 0.01), exact);
  CHECK(e1 / e2 >= 8.0);

  auto ou = models::ou();
  Point zo = pt({0.7}, 0.0);
  Point exo = exp_map(ou, {0.5}, 2.0, zo);
  double f1 = dist_inf(exp_map_rk4(ou, {0.5}, 2.0, zo, 0.02), exo);
  double f2 = dist_inf(exp_map_rk4(ou, {0.5}, 2.0, zo, 0.01), exo);
  CHECK(f1 / f2 >= 8.0);
}

TEST_CASE("right-translation identity for the invariant models") {
  for (auto& md : models::catalog()) {
    if (!md.left_invariant) continue;
    INFO(md.name);
    Rng rng(3000);
    for (int i = 0; i < 50; ++i) {
      Point z = rand_point(rng, md.n, -2, 2);
      auto omega = rng.vector(md.m, -2, 2);
      double s = rng.uniform(0, 2);
      CHECK(right_translation_residual(md, omega, s, z) <= 1e-8);
    }
  }
  auto heat = models::heat(2);
  CHECK(right_translation_residual(heat, {0.7, -0.2}, 1.5, pt({1, 2}, 3)) <= 1e-12);
  auto mum = models::mumford();
  CHECK(right_translation_residual(mum, {1.0}, 1.0, pt({1, 2, 3}, 0)) <= 1e-8);
  auto kol = models::kolmogorov(1);
  CHECK(right_translation_residual(kol, {2.0}, 0.5, pt({1, 1}, 0)) <= 1e-8);
}

TEST_CASE("Heisenberg four-leg loop") {
  auto hh = models::heisenberg_heat();
  Point origin = pt({0, 0, 0}, 0);
  Point l = heisenberg_loop(hh, 1.0, 1.0, origin);
  CHECK(dist_inf(l, pt({0, 0, 1}, -4)) <= 1e-10);

  Point z0 = pt({0.4, -1.1, 2.0}, 0.7);
  Point l0 = heisenberg_loop(hh, 0.0, 0.5, z0);
  CHECK(dist_inf(l0, pt({0.4, -1.1, 2.0}, 0.7 - 2.0)) <= 1e-12);

  Point l2 = heisenberg_loop(hh, 2.0, 0.5, pt({1, 1, 1}, 0));
  CHECK(dist_inf(l2, pt({1, 1, 2}, -2)) <= 1e-10);

  // cross-check one leg sequence against RK4 composition
  Point rk = pt({1, 1, 1}, 0);
  for (auto& w : {std::vector<double>{2, 0}, {0, 2}, {-2, 0}, {0, -2}})
    rk = exp_map_rk4(hh, w, 0.5, rk, 1e-3);
  CHECK(dist_inf(rk, l2) <= 1e-8);

  Rng rng(50);
  for (int i = 0; i < 50; ++i) {
    double c = rng.uniform(-2, 2), s = rng.uniform(0.1, 1.5);
    Point z = rand_point(rng, 3, -3, 3);
    Point got = heisenberg_loop(hh, c, s, z);
    Point want = pt({z.spatial[0], z.spatial[1], z.spatial[2] + c * c * s * s},
                    z.time - 4 * s);
    CHECK(dist_inf(got, want) <= 1e-8);
  }

  auto heat = models::heat(2);
  CHECK_THROWS_AS(heisenberg_loop(heat, 1, 1, pt({0, 0}, 0)), std::invalid_argument);
}

TEST_CASE("Mumford full-turn legs") {
  auto mum = models::mumford();
  Point origin = pt({0, 0, 0}, 0);
  Point fwd = mumford_loop_forward(mum, 1.0, origin);
  CHECK(dist_inf(fwd, pt({2 * M_PI, 0, 0}, -1)) <= 1e-8);
  Point loop = mumford_loop(mum, 1.0, origin);
  CHECK(dist_inf(loop, pt({0, 0, 0}, -2)) <= 1e-8);

  Rng rng(60);
  for (int i = 0; i < 50; ++i) {
    double s = rng.uniform(0.1, 3.0);
    Point z = rand_point(rng, 3, -3, 3);
    Point f = mumford_loop_forward(mum, s, z);
    CHECK(dist_inf(f, pt({z.spatial[0] + 2 * M_PI, z.spatial[1], z.spatial[2]},
                         z.time - s)) <= 1e-8);
    Point l = mumford_loop(mum, s, z);
    CHECK(dist_inf(l, pt({z.spatial[0], z.spatial[1], z.spatial[2]}, z.time - 2 * s)) <= 1e-8);
  }

  Point big = mumford_loop(mum, 2 * M_PI, pt({0.3, 1.0, -2.0}, 0.5));
  CHECK(big.time == doctest::Approx(0.5 - 4 * M_PI));
}

TEST_CASE("Harnack chains follow the semigroup") {
  auto heat = models::heat(1);
  auto chain = harnack_chain(heat, {0.0}, 1.0, 3, pt({2.5}, 0.0));
  REQUIRE(chain.size() == 4);
  for (int i = 0; i <= 3; ++i)
    CHECK(dist_inf(chain[static_cast<size_t>(i)], pt({2.5}, -static_cast<double>(i))) <= 1e-12);

  auto kol = models::kolmogorov(1);
  auto ck = harnack_chain(kol, {0.0}, 1.0, 2, pt({1, 0}, 0));
  CHECK(dist_inf(ck[1], pt({1, 1}, -1)) <= 1e-12);
  CHECK(dist_inf(ck[2], pt({1, 2}, -2)) <= 1e-12);

  auto mum = models::mumford();
  auto cm = harnack_chain(mum, {1.0}, M_PI, 2, pt({0, 0, 0}, 0));
  CHECK(dist_inf(cm[2], exp_map(mum, {1.0}, 2 * M_PI, pt({0, 0, 0}, 0))) <= 1e-8);

  for (auto& md : models::catalog()) {
    Rng rng(123);
    auto omega = rng.vector(md.m, -1, 1);
    Point z0 = rand_point(rng, md.n, -2, 2);
    auto c = harnack_chain(md, omega, 0.3, 4, z0);
    for (int i = 0; i <= 4; ++i)
      CHECK(dist_inf(c[static_cast<size_t>(i)], exp_map(md, omega, 0.3 * i, z0)) <= 1e-8);
  }
}

TEST_CASE("separation ratios of exponential solutions") {
  auto heat = models::heat(2);
  std::vector<double> v = {0.8, -0.3};
  auto u = [&v](const Point& z) {
    double e = z.time * (v[0] * v[0] + v[1] * v[1]);
    for (size_t i = 0; i < v.size(); ++i) e += v[i] * z.spatial[i];
    return std::exp(e);
  };
  Rng rng(70);
  std::vector<Point> samples;
  for (int i = 0; i < 100; ++i) samples.push_back(rand_point(rng, 2, -2, 2));
  double s = 0.9;
  auto r = separation_ratio(heat, u, {0.0, 0.0}, s, samples);
  double expected = std::exp(-s * (v[0] * v[0] + v[1] * v[1]));
  CHECK(std::fabs(r.mean - expected) <= 1e-12 * expected);
  CHECK(r.max_deviation <= 1e-12 * r.mean);

  auto ones = [](const Point&) { return 1.0; };
  auto r1 = separation_ratio(heat, ones, {0.4, 0.1}, 0.5, samples);
  CHECK(r1.mean == doctest::Approx(1.0));
  CHECK(r1.max_deviation == 0.0);

  auto kol = models::kolmogorov(1);
  double vk = 0.6;
  auto uk = [vk](const Point& z) { return std::exp(vk * z.spatial[0] + vk * vk * z.time); };
  std::vector<Point> ks;
  for (int i = 0; i < 100; ++i) ks.push_back(rand_point(rng, 2, -2, 2));
  auto rk = separation_ratio(kol, uk, {0.0}, 0.7, ks);
  CHECK(std::fabs(rk.mean - std::exp(-0.7 * vk * vk)) <= 1e-12);
  CHECK(rk.max_deviation <= 1e-12);

  auto zero = [](const Point& z) { return z.spatial[0] > 100 ? 1.0 : 0.0; };
  CHECK_THROWS_AS(separation_ratio(heat, zero, {0.0, 0.0}, 0.5, samples), std::domain_error);
}

TEST_CASE("commutator loops approach the bracket at rate O(s)") {
  auto heat = models::heat(2);
  CHECK(bch_loop_residual(heat, 1, 2, 0.05, pt({1.0, -1.0}, 0.4)) <= 1e-10);

  auto hh = models::heisenberg_heat();
  double rh = bch_loop_residual(hh, 1, 2, 1e-2, pt({0, 0, 0}, 0));
  CHECK(rh <= 1e-1 * 1e-2);

  // the loop endpoint increment itself picks out +[A,B]
  Point end = bch_loop(hh, {1, 0}, {0, 1}, 1e-2, pt({0, 0, 0}, 0));
  CHECK(end.spatial[2] / 1e-4 == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::fabs(end.time) <= 1e-14);

  auto kol = models::kolmogorov(1);
  double rkol = bch_loop_residual_general(kol, {1.0}, {0.0}, 1e-2, pt({1.5, 2.0}, -0.3));
  CHECK(rkol <= 1e-8);
  Point ke = bch_loop(kol, {1.0}, {0.0}, 0.1, pt({1.5, 2.0}, -0.3));
  CHECK((ke.spatial[1] - 2.0) / 0.01 == doctest::Approx(1.0).epsilon(1e-10));

  // genuine O(s) decay on a curved model
  auto mum = models::mumford();
  double r1 = bch_loop_residual_general(mum, {1.0}, {0.0}, 0.04, pt({0.7, 0, 0}, 0));
  double r2 = bch_loop_residual_general(mum, {1.0}, {0.0}, 0.02, pt({0.7, 0, 0}, 0));
  double r3 = bch_loop_residual_general(mum, {1.0}, {0.0}, 0.01, pt({0.7, 0, 0}, 0));
  CHECK(r2 <= 0.65 * r1);
  CHECK(r3 <= 0.65 * r2);
}

TEST_SUITE_END();
