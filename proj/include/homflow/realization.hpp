#pragma once

#include "homflow/homspace.hpp"
#include "homflow/lie_algebra.hpp"
#include "homflow/polynomial.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace homflow {

/// Point (x, p) of T*M.
struct PhasePoint {
  std::vector<double> x;
  std::vector<double> p;

  std::size_t dim() const { return x.size(); }
  bool finite() const;
  std::vector<double> flat() const;  // (x, p)
  static PhasePoint from_flat(std::span<const double> y);
};

struct PhaseGradient {
  std::vector<double> dx;
  std::vector<double> dp;
};

/// Smooth function on T*M with an analytic gradient.
struct PhaseFunction {
  std::string name;
  std::function<double(const PhasePoint&)> value;
  std::function<PhaseGradient(const PhasePoint&)> gradient;
};

/// Wraps a polynomial in (x_1..x_m, p_1..p_m).
PhaseFunction phase_function(std::string name, const Polynomial& f);

/// Canonical bracket {f,g} = sum_a (df/dp_a dg/dx^a - df/dx^a dg/dp_a); with
/// this orientation dx/dt = {H, x} = dH/dp.
Polynomial canonical_bracket(const Polynomial& f, const Polynomial& g);
/// Same orientation on an arbitrary split of the variables; variables in
/// neither list are parameters.
Polynomial canonical_bracket(const Polynomial& f, const Polynomial& g, std::span<const std::size_t> coords,
                             std::span<const std::size_t> momenta);
double canonical_bracket(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& pt);

/// Realization of g by vector fields X_A = X_A^a(x) d/dx^a with polynomial
/// coefficients, carried as the momentum-linear functions X_A(x, p).
class PolyVectorField {
 public:
  /// components[A][a] is X_A^a as a polynomial in x_1..x_m.
  PolyVectorField(std::size_t coords, std::vector<std::vector<Polynomial>> components, std::string name = {});

  std::size_t coords() const { return coords_; }
  std::size_t generators() const { return components_.size(); }
  const std::string& name() const { return name_; }
  const Polynomial& component(std::size_t a, std::size_t coord) const { return components_[a][coord]; }

  /// X_A(x, p) as a polynomial in 2m variables (x first, then p).
  const Polynomial& momentum_function(std::size_t a) const { return lifted_[a]; }

  /// Same fields with every coefficient converted to floating mode.
  PolyVectorField to_floating() const;

 private:
  std::size_t coords_;
  std::vector<std::vector<Polynomial>> components_;
  std::vector<Polynomial> lifted_;
  std::string name_;
};

struct RealizationCheck {
  struct Failure {
    std::size_t a, b;  // one-based generator pair
    double residual;   // max |coefficient| of {X_a,X_b} - C_ab^c X_c
    std::string difference;
  };
  std::vector<Failure> failures;
  double max_residual = 0.0;
  std::size_t pairs_checked = 0;
  bool ok() const { return failures.empty(); }
};

/// Exact polynomial identity {X_A, X_B} = C_AB^C X_C for every pair (exact
/// mode) or coefficient residuals below float_tol (floating mode).
RealizationCheck realization_check(const PolyVectorField& fields, const LieAlgebra& alg, double float_tol = 1e-12);

/// P_A = X_A(x, p).
std::vector<double> moment_map(const PolyVectorField& fields, const PhasePoint& pt);
/// Exact/floating evaluation at a Scalar point (x, p).
Covector moment_map(const PolyVectorField& fields, const ScalarVector& x, const ScalarVector& p);

/// H(x,p) = (1/2) G^{AB} X_A X_B for a central metric.
double central_hamiltonian(const PolyVectorField& fields, const MetricForm& g, const PhasePoint& pt);
PhaseFunction central_hamiltonian_function(const PolyVectorField& fields, const MetricForm& g);

/// Ordered list of G-invariant functions L_mu(x, p).
struct InvariantFunctionSet {
  std::vector<PhaseFunction> functions;
  std::size_t size() const { return functions.size(); }
  const PhaseFunction& operator[](std::size_t i) const { return functions[i]; }
};

/// H = (1/2)(c1 L1^2 + c2 L2^2 + c3 L1 L2 + c4 L3): most general quadratic
/// G-invariant Hamiltonian on a three-generator invariant set.
double invariant_hamiltonian(const InvariantFunctionSet& l, const std::array<double, 4>& c, const PhasePoint& pt);
PhaseFunction invariant_hamiltonian_function(const InvariantFunctionSet& l, const std::array<double, 4>& c);

}  // namespace homflow
