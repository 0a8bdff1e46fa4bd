#pragma once

#include "homflow/lie_algebra.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace homflow {

/// Raised when the sampled covector is not generic enough for the integer
/// invariants to be read off (odd dim g^lambda - ind g).
class GenericityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Isotropy subalgebra h inside g, given by basis vectors in e_A coordinates.
class SubalgebraSpec {
 public:
  /// Throws std::invalid_argument if the basis is dependent or not closed.
  SubalgebraSpec(LieAlgebra parent, std::vector<ScalarVector> basis);

  const LieAlgebra& parent() const { return parent_; }
  const std::vector<ScalarVector>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }

 private:
  LieAlgebra parent_;
  std::vector<ScalarVector> basis_;
};

/// Symmetric quadratic form G^{AB} on g*.
class MetricForm {
 public:
  explicit MetricForm(ScalarMatrix g);
  static MetricForm identity(std::size_t n, ScalarMode mode);

  const ScalarMatrix& matrix() const { return g_; }
  std::size_t dim() const { return g_.rows(); }
  std::vector<double> to_doubles() const { return g_.to_doubles(); }

 private:
  ScalarMatrix g_;
};

struct SpaceInvariantsReport {
  std::size_t dim_g = 0, dim_h = 0, dim_m = 0;
  std::size_t ind_g = 0, s_m = 0, i_m = 0;
  std::size_t dim_f = 0, ind_f = 0, defect = 0;
  std::size_t dim_orbit = 0;
  bool commutative = false;
  bool thm1_integrable = false;
  bool thm2_integrable = false;
  /// Defect recomputed from dim g/g^lambda and dim h/h^lambda; must equal defect.
  std::size_t defect_cross_check = 0;
  Covector lambda;  // the generic covector used
};

struct GenericCovector {
  Covector lambda;
  std::size_t rank_b = 0;
  std::size_t dim_annihilator = 0;  // dim g^lambda
  std::size_t dim_h_lambda = 0;     // dim (h cap g^lambda)
};

/// Basis of h^perp = {lambda : <lambda, h> = 0}.
std::vector<Covector> hperp_basis(const SubalgebraSpec& h);

/// dim (h cap g^lambda) from the rank of the stacked bases.
std::size_t intersection_dim(const SubalgebraSpec& h, const Covector& lambda, double rank_tol = kDefaultRankTolerance);

/// Draws random rational combinations of the h^perp basis and keeps the one
/// with maximal rank B(lambda), breaking ties by minimal dim h^lambda.
GenericCovector generic_hperp_covector(const SubalgebraSpec& h, const SamplingOptions& opts = {});

/// s_M = (dim g^lambda - ind g) / 2 at generic lambda in h^perp.
std::size_t degeneracy_degree(const SubalgebraSpec& h, std::size_t ind_g, const SamplingOptions& opts = {});

/// i_M = dim (h cap g^lambda) at generic lambda in h^perp.
std::size_t space_index(const SubalgebraSpec& h, const SamplingOptions& opts = {});

SpaceInvariantsReport classify(const SubalgebraSpec& h, const SamplingOptions& opts = {});

struct MetricAdmissibility {
  std::size_t restricted_rank = 0;
  bool rank_ok = false;
  bool adh_invariant = false;
  double max_invariance_residual = 0.0;
  double tolerance = 0.0;  // floating mode only
};

/// Rank of G restricted to h^perp and infinitesimal Ad*_H invariance
/// G(ad*_X l, m) + G(l, ad*_X m) = 0 for X in h, l, m in h^perp.
MetricAdmissibility metric_admissibility(const SubalgebraSpec& h, const MetricForm& g);

/// (ad*_X lambda)_B = -sum_{A,C} X^A C_{AB}^C lambda_C.
Covector coadjoint_action(const LieAlgebra& alg, const ScalarVector& x, const Covector& lambda);

}  // namespace homflow
