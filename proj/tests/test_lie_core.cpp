#include <doctest.h>

#include "homflow/examples.hpp"
#include "homflow/lie_algebra.hpp"
#include "homflow/linalg.hpp"
#include "test_util.hpp"

#include <cmath>
#include <random>

using namespace homflow;
using testutil::exact_algebra;
using testutil::exact_vec;

namespace {

std::vector<LieAlgebra> control_algebras() {
  return {sec4_algebra(),
          sec5_algebra(),
          heisenberg_algebra(),
          abelian_algebra(4),
          exact_algebra(3, {{1, 2, 3, 1, 1}, {2, 3, 1, 1, 1}, {3, 1, 2, 1, 1}}, "so3"),
          exact_algebra(2, {{1, 2, 2, 1, 1}}, "aff1")};
}

}  // namespace

TEST_CASE("scalars keep their mode") {
  const Scalar a = Scalar::exact(1, 3), b = Scalar::exact(2, 6);
  CHECK(a == b);
  CHECK((a + b).rational() == Rational(2, 3));
  CHECK_FALSE(Scalar::exact(1, 3) == Scalar::exact(333, 1000));

  const Scalar x = Scalar::floating(0.1 + 0.2), y = Scalar::floating(0.3);
  CHECK(x == y);
  CHECK_FALSE(Scalar::floating(0.3) == Scalar::floating(0.3001));
  CHECK_THROWS_AS(a + x, ModeMismatch);
  CHECK_THROWS_AS(LieAlgebra(2, ScalarMode::exact, {{0, 1, 1, Scalar::floating(1.0)}}), ModeMismatch);
}

TEST_CASE("validation of the built-in algebras and controls") {
  for (const auto& g : control_algebras()) {
    CAPTURE(g.name());
    CHECK(validate_algebra(g).ok());
  }
  CHECK(validate_algebra(abelian_algebra(7)).ok());
}

TEST_CASE("Jacobi violation is located") {
  const auto v = validate_algebra(jacobi_violating_algebra());
  REQUIRE_FALSE(v.ok());
  REQUIRE(v.jacobi.size() == 1);
  CHECK(v.jacobi[0].index == std::array<std::size_t, 4>{1, 2, 3, 3});
  CHECK(v.jacobi[0].residual != 0.0);
}

TEST_CASE("flipping C_15^4 of the wild algebra still gives a Lie algebra") {
  // e1 acts on the abelian ideal span{e2..e5} by a derivation for any entries
  const double a2 = 2.0;
  LieAlgebra flipped(5, ScalarMode::floating,
                     {{0, 1, 2, Scalar::floating(1)}, {0, 2, 1, Scalar::floating(-1)},
                      {0, 3, 4, Scalar::floating(a2)}, {0, 4, 3, Scalar::floating(1)}});
  CHECK(validate_algebra(flipped).ok());
}

TEST_CASE("antisymmetry conflicts are reported") {
  const auto g = exact_algebra(3, {{1, 2, 3, 1, 1}, {2, 1, 3, 1, 1}});
  CHECK_FALSE(validate_algebra(g).ok());
  CHECK(validate_algebra(g).antisymmetry.size() == 1);
  CHECK_FALSE(validate_algebra(exact_algebra(2, {{1, 1, 2, 1, 1}})).ok());
}

TEST_CASE("pairing matrix examples") {
  SUBCASE("abelian") {
    const auto b = coadjoint_pairing_matrix(abelian_algebra(3), exact_vec({3, -1, 2}));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(b(i, j).is_zero());
  }
  SUBCASE("wild algebra, lambda = e^3") {
    const auto b = coadjoint_pairing_matrix(sec5_algebra(), testutil::float_vec({0, 0, 1, 0, 0}));
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        const double expect = (i == 0 && j == 1) ? 1.0 : (i == 1 && j == 0) ? -1.0 : 0.0;
        CHECK(b(i, j).to_double() == doctest::Approx(expect));
      }
  }
  SUBCASE("sec4, lambda = e^1") {
    const auto b = coadjoint_pairing_matrix(sec4_algebra(), exact_vec({1, 0, 0, 0, 0}));
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        long expect = 0;
        if (i == 0 && j == 3) expect = -1;
        if (i == 3 && j == 0) expect = 1;
        if (i == 1 && j == 2) expect = 1;
        if (i == 2 && j == 1) expect = -1;
        CHECK(b(i, j) == Scalar::exact(expect));
      }
  }
}

TEST_CASE("annihilator examples") {
  CHECK(annihilator(abelian_algebra(4), exact_vec({1, 2, 3, 4})).size() == 4);

  const auto h = annihilator(heisenberg_algebra(), exact_vec({0, 0, 1}));
  REQUIRE(h.size() == 1);
  CHECK(h[0][0].is_zero());
  CHECK(h[0][1].is_zero());
  CHECK_FALSE(h[0][2].is_zero());

  const auto k = annihilator(sec4_algebra(), exact_vec({1, 0, 0, 0, 0}));
  REQUIRE(k.size() == 1);
  for (std::size_t i = 0; i < 4; ++i) CHECK(k[0][i].is_zero());
  CHECK_FALSE(k[0][4].is_zero());
}

TEST_CASE("index of known algebras") {
  CHECK(algebra_index(sec4_algebra()) == 1);
  CHECK(algebra_index(sec5_algebra()) == 3);
  CHECK(algebra_index(abelian_algebra(4)) == 4);
  CHECK(algebra_index(heisenberg_algebra()) == 1);
  CHECK(algebra_index(control_algebras()[4]) == 1);  // so(3)
  CHECK(algebra_index(control_algebras()[5]) == 0);  // aff(1), Frobenius
  SamplingOptions other;
  other.seed = 7;
  CHECK(algebra_index(sec4_algebra(), other) == 1);
}

TEST_CASE("rank parity and rank-nullity of B(lambda)") {
  std::mt19937_64 rng(11);
  for (const auto& g : control_algebras()) {
    CAPTURE(g.name());
    for (int s = 0; s < 20; ++s) {
      const auto l = random_rational_vector(g.dim(), rng, 97, g.mode());
      const auto b = coadjoint_pairing_matrix(g, l);
      const std::size_t r = rank(b);
      CHECK(r % 2 == 0);
      CHECK(annihilator(g, l).size() + r == g.dim());
      // B is antisymmetric and agrees with the expansion oracle
      const auto oracle = testutil::pairing_oracle(g, to_doubles(l));
      for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j) {
          CHECK(b(i, j).to_double() == doctest::Approx(-b(j, i).to_double()));
          CHECK(b(i, j).to_double() == doctest::Approx(oracle[i * g.dim() + j]));
        }
    }
  }
}

TEST_CASE("index does not depend on the basis") {
  std::mt19937_64 rng(5);
  for (const auto& g : {sec4_algebra(), heisenberg_algebra()}) {
    for (int s = 0; s < 5; ++s) {
      const auto t = testutil::random_invertible(g.dim(), rng);
      const auto g2 = change_basis(g, t);
      CHECK(validate_algebra(g2).ok());
      CHECK(algebra_index(g2) == algebra_index(g));
    }
  }
}

TEST_CASE("Lie-Poisson bracket") {
  const auto g5 = sec5_algebra();
  const auto p1 = coordinate_function(5, 0), p2 = coordinate_function(5, 1);
  const std::vector<double> pt{1, 1, 2, 1, 1};
  CHECK(lie_poisson_bracket(g5, p1, p2, pt) == doctest::Approx(2.0));
  CHECK(lie_poisson_bracket(abelian_algebra(5), p1, p2, pt) == 0.0);
  CHECK(lie_poisson_bracket(g5, p1, p1, pt) == 0.0);

  SUBCASE("coordinate brackets equal C_AB^C P_C at random points") {
    std::mt19937_64 rng(3);
    for (const auto& g : control_algebras()) {
      const std::size_t n = g.dim();
      for (int s = 0; s < 100; ++s) {
        if (g.is_exact()) {
          const auto p = random_rational_vector(n, rng, 97, ScalarMode::exact);
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
              Scalar expect = Scalar::zero(ScalarMode::exact);
              for (std::size_t c = 0; c < n; ++c) expect += g.constant(a, b, c) * p[c];
              const auto pa = Polynomial::variable(n, a, ScalarMode::exact);
              const auto pb = Polynomial::variable(n, b, ScalarMode::exact);
              CHECK(lie_poisson_bracket(g, pa, pb, p) == expect);
            }
        } else {
          const auto p = testutil::random_point(n, rng);
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
              double expect = 0;
              for (std::size_t c = 0; c < n; ++c) expect += g.constant(a, b, c).to_double() * p[c];
              const double got = lie_poisson_bracket(g, coordinate_function(n, a), coordinate_function(n, b), p);
              CHECK(std::abs(got - expect) < 1e-9);
            }
        }
      }
    }
  }
}

TEST_CASE("Casimirs annihilate the bracket") {
  const auto g4 = sec4_algebra();
  const auto k = sec4_casimir();
  for (std::size_t a = 0; a < 5; ++a)
    CHECK(lie_poisson_bracket(g4, k, Polynomial::variable(5, a, ScalarMode::exact)).is_zero());

  const double alpha = std::sqrt(2.0);
  const auto g5 = sec5_algebra(alpha);
  std::mt19937_64 rng(9);
  for (const auto& c : sec5_casimirs(alpha)) {
    for (int s = 0; s < 100; ++s) {
      auto p = testutil::random_point(5, rng, 0.2, 2.0);
      for (std::size_t a = 0; a < 5; ++a)
        CHECK(std::abs(lie_poisson_bracket(g5, c, coordinate_function(5, a), p)) < 1e-9);
    }
  }
}
