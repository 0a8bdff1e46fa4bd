#pragma once

#include "homflow/homspace.hpp"
#include "homflow/lie_algebra.hpp"
#include "homflow/polynomial.hpp"
#include "homflow/realization.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace homflow {

/// Unsolvable 5-dim algebra with h = span{e5}, exact.
LieAlgebra sec4_algebra();
/// Wild 5-dim algebra [e1,e2]=e3, [e1,e3]=-e2, [e1,e4]=alpha^2 e5, [e1,e5]=-e4. Always floating.
LieAlgebra sec5_algebra(double alpha = std::sqrt(2.0));
LieAlgebra heisenberg_algebra();
LieAlgebra abelian_algebra(std::size_t n);
/// Heisenberg plus [e1,e3] = e1; breaks Jacobi.
LieAlgebra jacobi_violating_algebra();

SubalgebraSpec sec4_subalgebra();
SubalgebraSpec sec5_subalgebra(double alpha = std::sqrt(2.0));
SubalgebraSpec heisenberg_center();

PolyVectorField sec4_fields();
PolyVectorField sec5_fields(double alpha = std::sqrt(2.0));

/// L1 = -e^{x4}(x3 p1 + p2), L2 = -p4, L3 = e^{-x4}(p1 p4 - x3 p1 p3 - p2 p3).
InvariantFunctionSet sec4_invariants();

/// K = P1 P2 P4 + P1^2 P5 - P2^2 P3 as a polynomial in P1..P5.
Polynomial sec4_casimir();

/// gamma, rho and the principal-branch K3 = psi - alpha phi.
std::vector<CoalgebraFunction> sec5_casimirs(double alpha = std::sqrt(2.0));

/// Built-in example addressed by name: sec4, sec5, heisenberg, abelian3,
/// jacobi-violation.
struct BuiltinExample {
  std::string name;
  LieAlgebra algebra;
  std::optional<SubalgebraSpec> subalgebra;
  std::optional<PolyVectorField> fields;
  std::optional<MetricForm> metric;
};

BuiltinExample builtin_example(const std::string& name, double alpha = std::sqrt(2.0));
std::vector<std::string> builtin_example_names();

}  // namespace homflow
