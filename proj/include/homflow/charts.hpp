#pragma once

#include "homflow/dynamics.hpp"
#include "homflow/homspace.hpp"
#include "homflow/lie_algebra.hpp"
#include "homflow/polynomial.hpp"
#include "homflow/realization.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace homflow {

/// Point (q, pi, j) of an orbit chart.
struct ChartPoint {
  std::vector<double> q, pi, j;
};

/// dP_A/dq_a, dP_A/dpi_a and dP_A/dj_k at a chart point, indexed [A][.].
struct ChartDerivatives {
  std::vector<std::vector<double>> dq, dpi, dj;
};

/// Canonical coordinates (q, pi) on the K-orbit with parameters j.
/// q are coordinates and pi momenta in the canonical bracket orientation.
struct OrbitChart {
  std::string name;
  std::size_t dim_g = 0, dim_q = 0, dim_j = 0;
  std::function<bool(const ChartPoint&)> in_domain;
  std::function<ChartPoint(std::mt19937_64&)> sample;
  std::function<std::vector<double>(const ChartPoint&)> covector;
  std::function<ChartDerivatives(const ChartPoint&)> derivatives;
  /// K_m(P(q, pi, j)), with multivalued Casimirs taken on the chart's branch.
  std::function<std::vector<double>(const ChartPoint&)> casimirs;
  std::function<std::vector<double>(std::span<const double>)> kappa;
  /// d kappa_m / d j_k, row-major dim_j x dim_j.
  std::function<std::vector<double>(std::span<const double>)> kappa_jacobian;
};

/// P1 = q1, P2 = -q2, P3 = q1 pi2, P4 = -q2 pi2 + q1 pi1, P5 = q2 pi1 + j/q1^2,
/// exact Laurent polynomials in (q1, q2, pi1, pi2, j).
std::vector<Polynomial> sec4_orbit_polynomials();
OrbitChart sec4_orbit_chart();

/// P1 = pi, P2 = j1 sin q, P3 = j1 cos q, P4 = alpha j2 sin(j3 + alpha q),
/// P5 = j2 cos(j3 + alpha q).
OrbitChart sec5_orbit_chart(double alpha = std::sqrt(2.0));

/// Generic outcome of one verification.
struct IdentityCheck {
  std::string name;
  bool exact = false;        // symbolic check: max_error is a coefficient residual
  double max_error = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool passed = false;
  std::string detail;
};

/// {P_A, P_B}_(q,pi) - C_AB^C P_C at random chart points, all pairs.
IdentityCheck chart_intertwining(const OrbitChart& chart, const LieAlgebra& alg, std::size_t samples = 100,
                                 std::uint64_t seed = 20240601, double tol = 1e-9);
/// K_m(P(q,pi,j)) - kappa_m(j) at random chart points.
IdentityCheck chart_casimirs(const OrbitChart& chart, std::size_t samples = 100, std::uint64_t seed = 20240601,
                             double tol = 1e-12);
/// min |det d kappa/d j| over random chart points; passes when above tol.
IdentityCheck chart_kappa_nondegenerate(const OrbitChart& chart, std::size_t samples = 100,
                                        std::uint64_t seed = 20240601, double tol = 1e-9);
/// Symbolic K(P(q, pi, j)) = j for the sec4 chart.
IdentityCheck sec4_casimir_symbolic();
/// Symbolic intertwining for all pairs of the sec4 chart.
IdentityCheck sec4_intertwining_symbolic();

/// {L_mu, X_A} = 0 for the sec4 invariant set at random phase points.
IdentityCheck sec4_invariants_commute(std::size_t samples = 100, std::uint64_t seed = 20240601, double tol = 1e-9);
/// {L1,L2} = L1, {L1,L3} = 0, {L2,L3} = L3; printed = true tests {L1,L2} = L3 instead.
IdentityCheck sec4_f_algebra(bool printed = false, std::size_t samples = 100, std::uint64_t seed = 20240601,
                             double tol = 1e-9);
/// L1 L3 = -K(X(x,p)); printed = true tests L1 L3 = +K(X(x,p)).
IdentityCheck sec4_compatibility(bool printed = false, std::size_t samples = 100, std::uint64_t seed = 20240601,
                                 double tol = 1e-9);

/// Symplectic sheet of the F-algebra: (u, v, j) -> a, u coordinate, v momentum.
struct SheetChart {
  std::string name;
  std::vector<Polynomial> a;                   // in (u, v, j)
  Polynomial z;                                // Z(a) in a_1..a_k
  std::vector<std::vector<Polynomial>> omega;  // Omega_{mu nu}(a) in a_1..a_k
};

/// a = (u, -u v, j/u), Z = a1 a3, {a1,a2} = a1, {a1,a3} = 0, {a2,a3} = a3.
SheetChart sec4_sheet_chart();
/// Same chart carrying the relation table as printed ({a1,a2} = a3).
SheetChart sec4_sheet_chart_printed();

/// Z(a(u,v,j)) = j exactly.
IdentityCheck sheet_casimir_symbolic(const SheetChart& s);
/// {a_mu, a_nu}_(u,v) = Omega_{mu nu}(a(u,v,j)) exactly, all pairs.
IdentityCheck sheet_brackets_symbolic(const SheetChart& s);

/// Functions T^m(x, p) together with the implicit chart variables they must
/// be conjugate to (j) or commute with (the rest).
struct TransitionFunctions {
  std::string name;
  std::vector<PhaseFunction> t;
  std::vector<PhaseFunction> j;
  std::vector<PhaseFunction> others;
  std::function<PhasePoint(std::mt19937_64&)> sample;  // admissible points
};

/// T = 1/(p1 (p1 x3 + p2)); printed = true gives 1/(p1^2 (p1 x3 + p2)).
/// Implicit variables j = K(X), q1, q2, pi1, pi2, u = L1, v = -L2/L1.
TransitionFunctions sec4_transition(bool printed = false);
/// T1, T2 and T3 = alpha x4 p1 - x1 p4/alpha; printed = true squares x4 in T3.
/// Implicit variables j1, j2 = rho/alpha, j3 = psi - alpha phi, q = phi, pi = X1.
TransitionFunctions sec5_transition(double alpha = std::sqrt(2.0), bool printed = false);

/// Implicit chart variables of sec4 as phase functions: j, q1, q2, pi1, pi2, u, v.
std::vector<PhaseFunction> sec4_implicit_variables();

struct BracketTableEntry {
  std::string t, y;
  double expected = 0.0;
  double max_error = 0.0;
};

/// {T^m, y} in the coordinate-first orientation (sum dT/dx dy/dp - dT/dp dy/dx),
/// which makes {T^m, j_k} = +delta.
struct BracketTable {
  std::string name;
  std::vector<BracketTableEntry> entries;
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool passed = false;
  double max_error() const;
};

BracketTable transition_bracket_table(const TransitionFunctions& tf, std::size_t samples = 100,
                                      std::uint64_t seed = 20240601, double tol = 1e-6);

// --- reduced Hamiltonians -----------------------------------------------------

/// (c1 u^2 + c2 u^2 v^2 - c3 u^2 v + c4 j/u) / 2; domain error at u = 0.
double sec4_reduced_hamiltonian(double u, double v, double j, const std::array<double, 4>& c);
/// (dH/du, dH/dv, dH/dj).
std::array<double, 3> sec4_reduced_gradient(double u, double v, double j, const std::array<double, 4>& c);

struct Sec5AB {
  double a = 0.0, b = 0.0;
};

/// Closed-form A and B obtained by substituting the orbit chart into
/// A = sum_{B>1} G^{1B} P_B and B = sum_{A,B>1} G^{AB} P_A P_B. g is row-major 5x5.
Sec5AB sec5_ab(double q, std::span<const double> j, std::span<const double> g, double alpha);
/// A and B transcribed literally from the printed closed forms.
Sec5AB sec5_ab_displayed(double q, std::span<const double> j, std::span<const double> g, double alpha);

/// Which closed forms feed H~: chart-derived A and B, the printed A with the
/// derived B, or both printed.
enum class ABForm { derived, printed_a, printed };

/// G^{11} pi^2/2 + A pi + B/2.
double sec5_reduced_hamiltonian(double q, double pi, std::span<const double> j, std::span<const double> g,
                                double alpha, ABForm form = ABForm::derived);

struct TermDiscrepancy {
  std::string entry;  // "A:G14", "B:G24", ...
  double max_error = 0.0;
  bool matches = false;
};

/// Compares the printed A, B with the chart-derived ones one metric entry at a
/// time (G = E_ab + E_ba) at random chart points.
std::vector<TermDiscrepancy> sec5_ab_discrepancies(double alpha = std::sqrt(2.0), std::size_t samples = 100,
                                                   std::uint64_t seed = 20240601, double tol = 1e-9);

/// sec4: H~(L1, -L2/L1, L1 L3) vs H(L(x,p)) at random points.
IdentityCheck sec4_reduced_consistency(const std::array<double, 4>& c, std::size_t samples = 100,
                                       std::uint64_t seed = 20240601, double tol = 1e-9);
/// sec5: H~ from A, B vs (1/2) P^T G P for random metrics at random chart points.
IdentityCheck sec5_reduced_consistency(double alpha, std::size_t metrics = 20, std::size_t samples = 100,
                                       std::uint64_t seed = 20240601, double tol = 1e-9,
                                       ABForm form = ABForm::derived, bool zero_g14 = false);

// --- flows --------------------------------------------------------------------

struct FlowComparison {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ReducedFlowReport {
  std::string example;
  std::vector<FlowComparison> rows;
  std::vector<std::string> csv_header;
  std::vector<std::vector<double>> csv_rows;
  bool passed() const;
  std::string csv() const;
};

struct Sec4FlowOptions {
  std::array<double, 4> c{1.0, 0.5, 0.25, 1.0};
  PhasePoint start{{0.1, 0.2, 0.3, 0.1}, {1.0, 0.5, 0.3, 0.8}};
  IntegrationOptions integration{1e-3, 10.0, StepMethod::rk4, 1};
};

struct Sec5FlowOptions {
  double alpha = std::sqrt(2.0);
  std::vector<double> metric;  // row-major 5x5; empty gives the figure-1 metric
  PhasePoint start{{0.1, 0.2, 0.3, 0.4}, {0.5, 0.6, 0.7, 0.8}};
  IntegrationOptions integration{1e-3, 10.0, StepMethod::rk4, 1};
};

/// Full geodesic flow of H(L) against the reduced (u, v) flow and tau.
ReducedFlowReport sec4_reduced_flow_check(const Sec4FlowOptions& opts = {});
/// Full geodesic flow of the central metric against the reduced (q, pi) flow and tau^m.
ReducedFlowReport sec5_reduced_flow_check(const Sec5FlowOptions& opts = {});

/// max |dP/dt - {H, P}^Lie| along a geodesic of the central metric, with dP/dt
/// taken by central differences of the moment map at spacing h.
struct TriangularCheck {
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool passed = false;
};

TriangularCheck triangular_check(const LieAlgebra& alg, const PolyVectorField& fields, const MetricForm& g,
                                 const PhasePoint& start, double t_end = 1.0, double h = 1e-4, double tol = 1e-6);

// --- full battery ---------------------------------------------------------------

struct BatteryRow {
  std::string name;
  bool is_check = true;  // false: documented discrepancy, reported only
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct TransformBattery {
  std::string example;
  std::vector<BatteryRow> rows;
  bool passed() const;
};

TransformBattery run_transform_battery(const std::string& example, double alpha = std::sqrt(2.0),
                                       std::uint64_t seed = 20240601, std::size_t samples = 100);

}  // namespace homflow
