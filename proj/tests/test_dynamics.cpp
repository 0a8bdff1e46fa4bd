#include <doctest.h>

#include "homflow/dynamics.hpp"
#include "homflow/examples.hpp"
#include "test_util.hpp"

#include <cmath>
#include <random>

using namespace homflow;

namespace {

const double kAlpha = std::sqrt(2.0);

MetricForm random_metric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  ScalarMatrix g(n, n, ScalarMode::floating);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = u(rng);
      g(i, j) = Scalar::floating(v);
      g(j, i) = Scalar::floating(v);
    }
  return MetricForm(g);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("Lie-Poisson right-hand side") {
  std::mt19937_64 rng(1);
  const QuadraticHamiltonian h5(figure1_metric());
  SUBCASE("abelian gives zero") {
    const QuadraticHamiltonian h(random_metric(5, rng));
    for (double v : lie_poisson_rhs(abelian_algebra(5), h, std::vector<double>{1, 2, 3, 4, 5})) CHECK(v == 0.0);
  }
  SUBCASE("figure-1 Hamiltonian at P = (1,1,1,1,1), expanded by hand") {
    // dH/dP = (3, 0, 1, 0, 1)
    const std::vector<double> ones(5, 1.0);
    const auto grad = h5.gradient(ones);
    CHECK(grad == std::vector<double>{3, 0, 1, 0, 1});
    const auto rhs = lie_poisson_rhs(sec5_algebra(), h5, ones);
    const std::vector<double> want{2, 3, -3, 3 * kAlpha * kAlpha, -3};
    for (std::size_t a = 0; a < 5; ++a) CHECK(rhs[a] == doctest::Approx(want[a]));
  }
  SUBCASE("exact and floating forms agree on sec4") {
    const auto g4 = sec4_algebra();
    const auto id = MetricForm::identity(5, ScalarMode::exact);
    const auto p = testutil::exact_vec({1, -2, 3, 1, 2});
    const auto exact = lie_poisson_rhs(g4, id, p);
    const auto num = lie_poisson_rhs(g4, QuadraticHamiltonian(id), to_doubles(p));
    for (std::size_t a = 0; a < 5; ++a) CHECK(exact[a].to_double() == doctest::Approx(num[a]));
  }
  SUBCASE("quadratic scaling rhs(cP) = c^2 rhs(P)") {
    for (int s = 0; s < 50; ++s) {
      const QuadraticHamiltonian h(random_metric(5, rng));
      const auto p = testutil::random_point(5, rng);
      const double c = testutil::random_point(1, rng, -3, 3)[0];
      auto cp = p;
      for (auto& v : cp) v *= c;
      const auto a = lie_poisson_rhs(sec4_algebra(), h, p), b = lie_poisson_rhs(sec4_algebra(), h, cp);
      for (std::size_t i = 0; i < 5; ++i) CHECK(b[i] == doctest::Approx(c * c * a[i]).epsilon(1e-12));
    }
  }
  SUBCASE("rhs is orthogonal to Casimir gradients") {
    const auto k4 = sec4_casimir();
    const auto cas5 = sec5_casimirs(kAlpha);
    for (int s = 0; s < 100; ++s) {
      const QuadraticHamiltonian h(random_metric(5, rng));
      const auto p = testutil::random_point(5, rng, 0.2, 2.0);
      const auto r4 = lie_poisson_rhs(sec4_algebra(), h, p);
      std::vector<double> gk(5);
      for (std::size_t a = 0; a < 5; ++a) gk[a] = k4.derivative(a).evaluate(p);
      CHECK(std::abs(dot(r4, gk)) < 1e-9);
      const auto r5 = lie_poisson_rhs(sec5_algebra(kAlpha), h, p);
      for (const auto& c : cas5) CHECK(std::abs(dot(r5, c.grad(p))) < 1e-9);
    }
  }
}

TEST_CASE("zero Hamiltonian leaves the point fixed") {
  ScalarMatrix z(5, 5, ScalarMode::floating);
  const QuadraticHamiltonian h{MetricForm(z)};
  const std::vector<double> p0{1, 2, 3, 4, 5};
  const auto tr = integrate_coalgebra(sec5_algebra(), h, p0, {1e-2, 1.0, StepMethod::rk4, 1});
  CHECK(tr.states.back() == p0);
}

TEST_CASE("sec4, identity metric: energy drift below 1e-8") {
  const QuadraticHamiltonian h(MetricForm::identity(5, ScalarMode::exact));
  const auto tr = integrate_coalgebra(sec4_algebra(), h, {0.3, -0.2, 0.5, 0.1, -0.4}, {1e-3, 10.0, StepMethod::rk4, 1});
  CHECK(tr.max_rel_drift("H") < 1e-8);
}

TEST_CASE("RK4 drift converges at fourth order, midpoint at second") {
  const auto g = sec5_algebra();
  const QuadraticHamiltonian h(figure1_metric());
  const auto p0 = figure1_default_start();
  auto drift = [&](double dt, StepMethod m) {
    return integrate_coalgebra(g, h, p0, {dt, 20.0, m, 1}).max_rel_drift("H");
  };
  const double r4 = drift(2e-2, StepMethod::rk4) / drift(1e-2, StepMethod::rk4);
  const double r2 = drift(2e-2, StepMethod::midpoint) / drift(1e-2, StepMethod::midpoint);
  CHECK(r4 > 8);
  CHECK(r4 < 40);
  CHECK(r2 > 2);
  CHECK(r2 < 8);
}

TEST_CASE("non-finite states stop the integration") {
  const VectorField blowup = [](std::span<const double> y) { return std::vector<double>{y[0] * y[0]}; };
  try {
    integrate(blowup, {1.0}, {1e-3, 2.0, StepMethod::rk4, 1});
    FAIL("expected NonFiniteState");
  } catch (const NonFiniteState& e) {
    // exact blowup at t = 1; the discrete solution overshoots by a few steps
    CHECK(e.last_valid_time() > 0.9);
    CHECK(e.last_valid_time() < 1.1);
  }
}

TEST_CASE("polar chart") {
  const double s = 0.7;
  const auto c = to_polar(std::vector<double>{s, 0, 1, 0, 1 / kAlpha}, kAlpha);
  CHECK(c.gamma == doctest::Approx(1.0));
  CHECK(c.phi == doctest::Approx(0.0));
  CHECK(c.rho == doctest::Approx(1.0));
  CHECK(c.psi == doctest::Approx(0.0));
  CHECK(c.sigma == s);
  CHECK(casimir_values(std::vector<double>{s, 0, 1, 0, 1 / kAlpha}, kAlpha).k3_principal == doctest::Approx(0.0));

  CHECK_THROWS_AS(to_polar(std::vector<double>{1, 0, 0, 1, 1}, kAlpha), DegenerateRadius);
  CHECK_THROWS_AS(to_polar(std::vector<double>{1, 1, 1, 0, 0}, kAlpha), DegenerateRadius);

  std::mt19937_64 rng(17);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const auto p = testutil::random_point(5, rng, -3, 3);
    const auto back = from_polar(to_polar(p, kAlpha), kAlpha);
    for (std::size_t a = 0; a < 5; ++a) worst = std::max(worst, std::abs(back[a] - p[a]));
  }
  CHECK(worst < 1e-12);

  // K3 = atan(P4/(alpha P5)) - alpha atan(P2/P3) when both denominators are positive
  for (int i = 0; i < 100; ++i) {
    auto p = testutil::random_point(5, rng, -2, 2);
    p[2] = std::abs(p[2]) + 0.1;
    p[4] = std::abs(p[4]) + 0.1;
    const double want = std::atan(p[3] / (kAlpha * p[4])) - kAlpha * std::atan(p[1] / p[2]);
    CHECK(casimir_values(p, kAlpha).k3_principal == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("angle lifting") {
  AngleLifter l;
  double prev = 0;
  for (int i = 0; i <= 400; ++i) {
    const double a = 0.05 * i;
    const double lifted = l.lift(wrap_pi(a));
    CHECK(lifted == doctest::Approx(a));
    prev = lifted;
  }
  CHECK(prev == doctest::Approx(20.0));
  AngleLifter jumpy;
  jumpy.lift(0.0);
  CHECK_THROWS_AS(jumpy.lift(2.0), AngleLiftError);
  CHECK(wrap_two_pi(-0.5) == doctest::Approx(2 * M_PI - 0.5));
}

TEST_CASE("wild flow: psi - alpha phi stays on a line") {
  const auto tr = integrate_coalgebra(sec5_algebra(), QuadraticHamiltonian(figure1_metric()), {0.3, -0.4, 0.9, 0.5, -0.7},
                                     {1e-3, 30.0, StepMethod::rk4, 1}, wild_casimir_monitors(kAlpha));
  CHECK(tr.max_abs_drift("K3_unwrapped") < 1e-6);
  CHECK(tr.max_rel_drift("K1") < 1e-6);
  CHECK(tr.max_rel_drift("K2") < 1e-6);
}

TEST_CASE("jump fitting") {
  const auto j = fit_jump(2 * M_PI * (1 - kAlpha * 1), kAlpha, 5);
  CHECK(j.n == 1);
  CHECK(j.m == 1);
  CHECK(j.fit_error < 1e-12);
  CHECK(fit_jump(1.0, kAlpha, 5).fit_error > 1e-4);
}

TEST_CASE("figure 1 reproduction") {
  const auto rep = figure1_report(sec5_algebra());
  CHECK(rep.k1_rel_drift < 1e-6);
  CHECK(rep.k2_rel_drift < 1e-6);
  CHECK(rep.k3_unwrapped_drift < 1e-6);
  CHECK(rep.jumps.size() >= 1);
  CHECK(rep.all_jumps_matched());
  const auto csv = rep.csv();
  CHECK(csv.rfind("t,K1,K2,K3_wrapped,K3_unwrapped\n", 0) == 0);
  CHECK(figure1_report(sec5_algebra()).csv() == csv);
}
