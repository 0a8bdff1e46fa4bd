#include "homflow/examples.hpp"

#include "homflow/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace homflow {

namespace {

Scalar q(long n, long d = 1) { return Scalar::exact(n, d); }

BracketEntry entry(std::size_t a, std::size_t b, std::size_t c, Scalar v) {
  return {a - 1, b - 1, c - 1, std::move(v)};
}

ScalarVector unit(std::size_t n, std::size_t i, ScalarMode mode) {
  ScalarVector v(n, Scalar::zero(mode));
  v[i] = Scalar::one(mode);
  return v;
}

// term(coeff, exponents) in the four coordinates x1..x4
Polynomial term(const Scalar& c, Exponents e) { return Polynomial::monomial(4, std::move(e), c); }

Polynomial zero4() { return Polynomial(4); }

}  // namespace

LieAlgebra sec4_algebra() {
  return LieAlgebra(5, ScalarMode::exact,
                    {entry(1, 4, 1, q(-1)), entry(1, 5, 2, q(1)), entry(2, 3, 1, q(1)), entry(2, 4, 2, q(1)),
                     entry(3, 4, 3, q(-2)), entry(3, 5, 4, q(1)), entry(4, 5, 5, q(-2))},
                    "sec4");
}

LieAlgebra sec5_algebra(double alpha) {
  auto f = [](double v) { return Scalar::floating(v); };
  return LieAlgebra(5, ScalarMode::floating,
                    {entry(1, 2, 3, f(1)), entry(1, 3, 2, f(-1)), entry(1, 4, 5, f(alpha * alpha)),
                     entry(1, 5, 4, f(-1))},
                    "sec5");
}

LieAlgebra heisenberg_algebra() { return LieAlgebra(3, ScalarMode::exact, {entry(1, 2, 3, q(1))}, "heisenberg"); }

LieAlgebra abelian_algebra(std::size_t n) {
  return LieAlgebra(n, ScalarMode::exact, {}, "abelian" + std::to_string(n));
}

LieAlgebra jacobi_violating_algebra() {
  return LieAlgebra(3, ScalarMode::exact, {entry(1, 2, 3, q(1)), entry(1, 3, 1, q(1))}, "jacobi-violation");
}

SubalgebraSpec sec4_subalgebra() { return SubalgebraSpec(sec4_algebra(), {unit(5, 4, ScalarMode::exact)}); }

SubalgebraSpec sec5_subalgebra(double alpha) {
  return SubalgebraSpec(sec5_algebra(alpha), {unit(5, 0, ScalarMode::floating)});
}

SubalgebraSpec heisenberg_center() { return SubalgebraSpec(heisenberg_algebra(), {unit(3, 2, ScalarMode::exact)}); }

PolyVectorField sec4_fields() {
  const Polynomial one = Polynomial::constant(4, q(1));
  const Polynomial z = zero4();
  std::vector<std::vector<Polynomial>> c = {
      {one, z, z, z},
      {z, one, z, z},
      {term(q(1), {0, 1, 0, 0}), z, one, z},
      {term(q(-1), {1, 0, 0, 0}), term(q(1), {0, 1, 0, 0}), term(q(-2), {0, 0, 1, 0}), one},
      {z, term(q(1), {1, 0, 0, 0}), term(q(-1), {0, 0, 2, 0}), term(q(1), {0, 0, 1, 0})},
  };
  return PolyVectorField(4, std::move(c), "sec4");
}

PolyVectorField sec5_fields(double alpha) {
  auto f = [](double v) { return Scalar::floating(v); };
  const Polynomial one = Polynomial::constant(4, f(1));
  const Polynomial z = zero4();
  // X5 = p1: the fifth generator acts along x1
  std::vector<std::vector<Polynomial>> c = {
      {term(f(-alpha * alpha), {0, 0, 0, 1}), term(f(1), {0, 0, 1, 0}), term(f(-1), {0, 1, 0, 0}),
       term(f(1), {1, 0, 0, 0})},
      {z, one, z, z},
      {z, z, one, z},
      {z, z, z, one},
      {one, z, z, z},
  };
  return PolyVectorField(4, std::move(c), "sec5");
}

InvariantFunctionSet sec4_invariants() {
  PhaseFunction l1{"L1",
                   [](const PhasePoint& pt) { return -std::exp(pt.x[3]) * (pt.x[2] * pt.p[0] + pt.p[1]); },
                   [](const PhasePoint& pt) {
                     const double e = std::exp(pt.x[3]);
                     PhaseGradient g{std::vector<double>(4, 0.0), std::vector<double>(4, 0.0)};
                     g.dx[2] = -e * pt.p[0];
                     g.dx[3] = -e * (pt.x[2] * pt.p[0] + pt.p[1]);
                     g.dp[0] = -e * pt.x[2];
                     g.dp[1] = -e;
                     return g;
                   }};
  PhaseFunction l2{"L2", [](const PhasePoint& pt) { return -pt.p[3]; },
                   [](const PhasePoint&) {
                     PhaseGradient g{std::vector<double>(4, 0.0), std::vector<double>(4, 0.0)};
                     g.dp[3] = -1.0;
                     return g;
                   }};
  PhaseFunction l3{"L3",
                   [](const PhasePoint& pt) {
                     const auto& x = pt.x;
                     const auto& p = pt.p;
                     return std::exp(-x[3]) * (p[0] * p[3] - x[2] * p[0] * p[2] - p[1] * p[2]);
                   },
                   [](const PhasePoint& pt) {
                     const auto& x = pt.x;
                     const auto& p = pt.p;
                     const double e = std::exp(-x[3]);
                     PhaseGradient g{std::vector<double>(4, 0.0), std::vector<double>(4, 0.0)};
                     g.dx[2] = -e * p[0] * p[2];
                     g.dx[3] = -e * (p[0] * p[3] - x[2] * p[0] * p[2] - p[1] * p[2]);
                     g.dp[0] = e * (p[3] - x[2] * p[2]);
                     g.dp[1] = -e * p[2];
                     g.dp[2] = -e * (x[2] * p[0] + p[1]);
                     g.dp[3] = e * p[0];
                     return g;
                   }};
  return InvariantFunctionSet{{l1, l2, l3}};
}

Polynomial sec4_casimir() {
  Polynomial k(5);
  k.add_term({1, 1, 0, 1, 0}, q(1));
  k.add_term({2, 0, 0, 0, 1}, q(1));
  k.add_term({0, 2, 1, 0, 0}, q(-1));
  return k;
}

std::vector<CoalgebraFunction> sec5_casimirs(double alpha) {
  CoalgebraFunction k1;
  k1.value = [](std::span<const double> p) { return std::hypot(p[1], p[2]); };
  k1.gradient = [](std::span<const double> p) {
    const double g = std::hypot(p[1], p[2]);
    return std::vector<double>{0.0, p[1] / g, p[2] / g, 0.0, 0.0};
  };
  CoalgebraFunction k2;
  k2.value = [alpha](std::span<const double> p) { return std::hypot(p[3], alpha * p[4]); };
  k2.gradient = [alpha](std::span<const double> p) {
    const double r = std::hypot(p[3], alpha * p[4]);
    return std::vector<double>{0.0, 0.0, 0.0, p[3] / r, alpha * alpha * p[4] / r};
  };
  CoalgebraFunction k3;
  k3.value = [alpha](std::span<const double> p) { return casimir_values(p, alpha).k3_principal; };
  k3.gradient = [alpha](std::span<const double> p) {
    // d atan2(y, x) = (x dy - y dx) / (x^2 + y^2)
    const double g2 = p[1] * p[1] + p[2] * p[2];
    const double r2 = p[3] * p[3] + alpha * alpha * p[4] * p[4];
    return std::vector<double>{0.0, -alpha * p[2] / g2, alpha * p[1] / g2, alpha * p[4] / r2, -alpha * p[3] / r2};
  };
  return {k1, k2, k3};
}

BuiltinExample builtin_example(const std::string& name, double alpha) {
  if (name == "sec4") {
    return {name, sec4_algebra(), sec4_subalgebra(), sec4_fields(), MetricForm::identity(5, ScalarMode::exact)};
  }
  if (name == "sec5") {
    return {name, sec5_algebra(alpha), sec5_subalgebra(alpha), sec5_fields(alpha), figure1_metric()};
  }
  if (name == "heisenberg") return {name, heisenberg_algebra(), heisenberg_center(), std::nullopt, std::nullopt};
  if (name == "abelian3") {
    return {name, abelian_algebra(3), SubalgebraSpec(abelian_algebra(3), {}), std::nullopt, std::nullopt};
  }
  if (name == "jacobi-violation") return {name, jacobi_violating_algebra(), std::nullopt, std::nullopt, std::nullopt};
  throw std::invalid_argument("unknown example '" + name + "'");
}

std::vector<std::string> builtin_example_names() {
  return {"sec4", "sec5", "heisenberg", "abelian3", "jacobi-violation"};
}

}  // namespace homflow
