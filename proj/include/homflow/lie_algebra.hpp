#pragma once

#include "homflow/linalg.hpp"
#include "homflow/polynomial.hpp"
#include "homflow/scalar.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace homflow {

/// Coordinates of a covector in the dual basis {e^A}.
using Covector = ScalarVector;

/// One structure constant C_{ab}^c = value, zero-based indices.
struct BracketEntry {
  std::size_t a = 0, b = 0, c = 0;
  Scalar value;
};

/// Finite-dimensional real Lie algebra given by structure constants.
///
/// Only the a < b half of C_{ab}^c is stored; the other half is derived by
/// antisymmetry. Inputs that assign a nonzero [e_a, e_a] or give both [e_a,e_b]
/// and [e_b,e_a] inconsistently are kept as antisymmetry conflicts and show up
/// in validate_algebra rather than aborting construction.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(std::size_t dim, ScalarMode mode, const std::vector<BracketEntry>& entries, std::string name = {});

  std::size_t dim() const { return dim_; }
  ScalarMode mode() const { return mode_; }
  bool is_exact() const { return mode_ == ScalarMode::exact; }
  const std::string& name() const { return name_; }

  /// C_{ab}^c for any a, b, c in [0, dim).
  const Scalar& constant(std::size_t a, std::size_t b, std::size_t c) const {
    return dense_[(a * dim_ + b) * dim_ + c];
  }
  /// Same constants as doubles, laid out [a][b][c].
  const std::vector<double>& constants_double() const { return dense_double_; }

  /// Canonical nonzero entries with a < b.
  std::vector<BracketEntry> nonzero_brackets() const;

  struct Conflict {
    std::size_t a, b, c;
    std::string detail;
  };
  const std::vector<Conflict>& antisymmetry_conflicts() const { return conflicts_; }

  /// Coefficients of [x, y] for vectors x, y in g.
  ScalarVector bracket(const ScalarVector& x, const ScalarVector& y) const;

 private:
  std::size_t dim_ = 0;
  ScalarMode mode_ = ScalarMode::exact;
  std::string name_;
  std::vector<Scalar> dense_;
  std::vector<double> dense_double_;
  std::vector<Conflict> conflicts_;
};

/// Result of checking antisymmetry and the Jacobi identity.
struct AlgebraValidation {
  struct JacobiViolation {
    std::array<std::size_t, 4> index;  // (A, B, C, E), one-based
    double residual;
  };
  std::vector<LieAlgebra::Conflict> antisymmetry;
  std::vector<JacobiViolation> jacobi;
  double tolerance = 0.0;  // Jacobi residual bound in floating mode; 0 when exact
  bool ok() const { return antisymmetry.empty() && jacobi.empty(); }
};

/// Checks antisymmetry and the Jacobi identity over all index tuples. Jacobi
/// violations are reported once per A < B < C (the Jacobiator is totally
/// antisymmetric) and every E.
AlgebraValidation validate_algebra(const LieAlgebra& alg);

/// B_{AB}(lambda) = sum_C C_{AB}^C lambda_C.
ScalarMatrix coadjoint_pairing_matrix(const LieAlgebra& alg, const Covector& lambda);

/// Basis of g^lambda = ker B(lambda).
std::vector<ScalarVector> annihilator(const LieAlgebra& alg, const Covector& lambda,
                                      double rank_tol = kDefaultRankTolerance);

struct SamplingOptions {
  std::size_t samples = 8;
  std::uint64_t seed = 20240601;
  long bound = 97;  // numerators in [-bound, bound], denominators in [1, bound]
  double rank_tol = kDefaultRankTolerance;
};

/// Random rational coordinates with bounded numerators/denominators, returned
/// in the requested mode.
Covector random_rational_vector(std::size_t n, std::mt19937_64& rng, long bound, ScalarMode mode);

/// ind g = n - max over sampled lambda of rank B(lambda).
std::size_t algebra_index(const LieAlgebra& alg, const SamplingOptions& opts = {});

/// A scalar function on g* with an optional analytic gradient. When the
/// gradient is absent, central differences with step fd_step are used.
struct CoalgebraFunction {
  std::function<double(std::span<const double>)> value;
  std::function<std::vector<double>(std::span<const double>)> gradient;
  double fd_step = 1e-6;

  std::vector<double> grad(std::span<const double> p) const;
};

/// Coordinate function P_A on g*.
CoalgebraFunction coordinate_function(std::size_t n, std::size_t a);

/// {phi, psi}(P) = C_{AB}^C P_C dphi/dP_A dpsi/dP_B, numeric.
double lie_poisson_bracket(const LieAlgebra& alg, const CoalgebraFunction& phi, const CoalgebraFunction& psi,
                           std::span<const double> p);

/// Same bracket for polynomial functions of (P_1..P_n), symbolically.
Polynomial lie_poisson_bracket(const LieAlgebra& alg, const Polynomial& phi, const Polynomial& psi);

/// Exact-or-floating value of the polynomial bracket at P.
Scalar lie_poisson_bracket(const LieAlgebra& alg, const Polynomial& phi, const Polynomial& psi, const Covector& p);

/// Structure constants in a new basis f_i = sum_A T_{iA} e_A (T invertible).
LieAlgebra change_basis(const LieAlgebra& alg, const ScalarMatrix& t);

}  // namespace homflow
