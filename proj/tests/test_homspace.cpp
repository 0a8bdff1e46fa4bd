#include <doctest.h>

#include "homflow/examples.hpp"
#include "homflow/homspace.hpp"
#include "test_util.hpp"

#include <cmath>
#include <random>

using namespace homflow;
using testutil::exact_vec;

namespace {

void check_consistency(const SpaceInvariantsReport& r) {
  CHECK(r.dim_m == r.dim_g - r.dim_h);
  CHECK(r.dim_f == r.i_m + 2 * r.dim_m - r.dim_g);
  CHECK(r.ind_f == r.ind_g + 2 * r.s_m - r.i_m);
  CHECK((r.dim_f - r.ind_f) % 2 == 0);
  CHECK(r.dim_f - r.ind_f == 2 * r.defect);
  CHECK(r.defect_cross_check == r.defect);
  CHECK(r.commutative == (r.defect == 0));
  CHECK(r.thm1_integrable == (r.defect < 2));
  const long thm2 = (static_cast<long>(r.dim_g) - static_cast<long>(r.ind_g)) / 2 - static_cast<long>(r.s_m);
  CHECK(thm2 >= 0);
  CHECK(static_cast<std::size_t>(2 * thm2) == r.dim_orbit);
  CHECK(r.thm2_integrable == (thm2 < 2));
}

}  // namespace

TEST_CASE("subalgebra validation") {
  const auto g = heisenberg_algebra();
  CHECK_THROWS_AS(SubalgebraSpec(g, {exact_vec({1, 0, 0}), exact_vec({0, 1, 0})}), std::invalid_argument);
  CHECK_THROWS_AS(SubalgebraSpec(g, {exact_vec({1, 0, 0}), exact_vec({2, 0, 0})}), std::invalid_argument);
  CHECK_NOTHROW(SubalgebraSpec(g, {exact_vec({1, 0, 0}), exact_vec({0, 0, 1})}));
}

TEST_CASE("h-perp bases") {
  const auto b4 = hperp_basis(sec4_subalgebra());
  REQUIRE(b4.size() == 4);
  for (const auto& v : b4) CHECK(v[4].is_zero());
  CHECK(rank_of_rows(b4, 5, ScalarMode::exact) == 4);

  const auto b5 = hperp_basis(sec5_subalgebra());
  REQUIRE(b5.size() == 4);
  for (const auto& v : b5) CHECK(v[0].is_zero());

  CHECK(hperp_basis(SubalgebraSpec(sec4_algebra(), {})).size() == 5);
}

TEST_CASE("generic covector in h-perp") {
  const auto h = sec4_subalgebra();
  for (std::uint64_t seed : {20240601ULL, 77ULL}) {
    SamplingOptions so;
    so.seed = seed;
    const auto gc = generic_hperp_covector(h, so);
    CHECK(gc.lambda[4].is_zero());
    CHECK(gc.dim_annihilator == 1);
    CHECK(gc.dim_h_lambda == 0);
  }
  // lambda = e^1 has max rank but g^lambda = span{e5} = h, so it is not generic
  const auto special = exact_vec({1, 0, 0, 0, 0});
  CHECK(annihilator(sec4_algebra(), special).size() == 1);
  CHECK(intersection_dim(h, special) == 1);
}

TEST_CASE("degeneracy degree and space index") {
  CHECK(degeneracy_degree(sec4_subalgebra(), 1) == 0);
  CHECK(degeneracy_degree(sec5_subalgebra(), 3) == 0);
  CHECK(degeneracy_degree(heisenberg_center(), 1) == 1);
  CHECK(space_index(sec4_subalgebra()) == 0);
  CHECK(space_index(sec5_subalgebra()) == 0);
  CHECK(space_index(heisenberg_center()) == 1);
}

TEST_CASE("classification of the built-in spaces") {
  SUBCASE("sec4") {
    const auto r = classify(sec4_subalgebra());
    CHECK(r.ind_g == 1);
    CHECK(r.s_m == 0);
    CHECK(r.i_m == 0);
    CHECK(r.dim_f == 3);
    CHECK(r.ind_f == 1);
    CHECK(r.defect == 1);
    CHECK(r.thm1_integrable);
    CHECK_FALSE(r.commutative);
    check_consistency(r);
  }
  SUBCASE("sec5") {
    const auto r = classify(sec5_subalgebra());
    CHECK(r.ind_g == 3);
    CHECK(r.s_m == 0);
    CHECK(r.i_m == 0);
    CHECK(r.dim_f == 3);
    CHECK(r.ind_f == 3);
    CHECK(r.defect == 0);
    CHECK(r.thm2_integrable);
    CHECK(r.commutative);
    check_consistency(r);
  }
  SUBCASE("abelian, trivial h") {
    const auto g = abelian_algebra(3);
    const auto r = classify(SubalgebraSpec(g, {}));
    CHECK(r.ind_g == 3);
    CHECK(r.s_m == 0);
    CHECK(r.i_m == 0);
    CHECK(r.dim_f == 3);
    CHECK(r.ind_f == 3);
    CHECK(r.defect == 0);
    CHECK(r.commutative);
    check_consistency(r);
  }
  SUBCASE("heisenberg over its center") { check_consistency(classify(heisenberg_center())); }
  SUBCASE("sec4 with trivial h") { check_consistency(classify(SubalgebraSpec(sec4_algebra(), {}))); }
}

TEST_CASE("classification does not depend on the basis") {
  const auto g = sec4_algebra();
  const auto base = classify(sec4_subalgebra());
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> d(-4, 4);
  int done = 0;
  while (done < 5) {
    // f_1..f_4 random, f_5 = 2 e_5, so h = span{f_5}
    ScalarMatrix t(5, 5, ScalarMode::exact);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 5; ++j) t(i, j) = Scalar::exact(d(rng));
    for (std::size_t j = 0; j < 4; ++j) t(4, j) = Scalar::exact(0);
    t(4, 4) = Scalar::exact(2);
    if (rank(t) != 5) continue;
    ++done;
    const auto g2 = change_basis(g, t);
    const auto r = classify(SubalgebraSpec(g2, {exact_vec({0, 0, 0, 0, 1})}));
    CHECK(r.ind_g == base.ind_g);
    CHECK(r.s_m == base.s_m);
    CHECK(r.i_m == base.i_m);
    CHECK(r.dim_f == base.dim_f);
    CHECK(r.ind_f == base.ind_f);
    CHECK(r.defect == base.defect);
    check_consistency(r);
  }
}

TEST_CASE("metric admissibility") {
  SUBCASE("sec5, identity") {
    const auto a = metric_admissibility(sec5_subalgebra(), MetricForm::identity(5, ScalarMode::floating));
    CHECK(a.rank_ok);
    CHECK(a.restricted_rank == 4);
  }
  SUBCASE("sec5, h-perp block zeroed") {
    ScalarMatrix g(5, 5, ScalarMode::floating);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) g(i, j) = Scalar::floating(i == 0 || j == 0 ? 1.0 : 0.0);
    const auto a = metric_admissibility(sec5_subalgebra(), MetricForm(g));
    CHECK_FALSE(a.rank_ok);
  }
  SUBCASE("sec4, identity: invariance residual from the coadjoint oracle") {
    const auto g = sec4_algebra();
    // (ad*_{e5} e^i)_m = -C_{5m}^i; with G = 1 the form is -C_{5m}^i - C_{5i}^m on i, m <= 4
    double worst = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t m = 0; m < 4; ++m)
        worst = std::max(worst, std::abs(-g.constant(4, m, i).to_double() - g.constant(4, i, m).to_double()));
    const auto a = metric_admissibility(sec4_subalgebra(), MetricForm::identity(5, ScalarMode::exact));
    CHECK(worst == 1.0);
    CHECK_FALSE(a.adh_invariant);
    CHECK(a.max_invariance_residual == doctest::Approx(worst));
    CHECK(a.rank_ok);
  }
}
