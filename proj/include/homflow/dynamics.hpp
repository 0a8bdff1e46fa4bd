#pragma once

#include "homflow/homspace.hpp"
#include "homflow/lie_algebra.hpp"
#include "homflow/realization.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace homflow {

enum class StepMethod { rk4, midpoint };

StepMethod parse_step_method(const std::string& name);
std::string to_string(StepMethod m);

/// Integration stopped because the state stopped being finite.
class NonFiniteState : public std::runtime_error {
 public:
  NonFiniteState(double last_valid_time, const std::string& what)
      : std::runtime_error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const { return last_valid_time_; }

 private:
  double last_valid_time_;
};

/// Radius of a polar pair fell below tolerance.
class DegenerateRadius : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two consecutive angle samples were too far apart to lift unambiguously.
class AngleLiftError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using VectorField = std::function<std::vector<double>(std::span<const double>)>;

/// One explicit step of size dt.
std::vector<double> ode_step(const VectorField& f, std::span<const double> y, double dt, StepMethod method);

/// Named scalar recorded at every stored sample. Monitors may carry state
/// (angle lifting) and are copied fresh for each run.
struct Monitor {
  std::string name;
  std::function<double(double, std::span<const double>)> fn;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<std::string> monitor_names;
  std::vector<std::vector<double>> monitors;  // monitors[k][sample]

  const std::vector<double>& monitor(const std::string& name) const;
  /// max_t |m(t) - m(0)|
  double max_abs_drift(const std::string& name) const;
  /// max_t |m(t) - m(0)| / |m(0)|
  double max_rel_drift(const std::string& name) const;
};

struct IntegrationOptions {
  double dt = 1e-3;
  double t_end = 1.0;
  StepMethod method = StepMethod::rk4;
  std::size_t record_every = 1;
};

/// Fixed-step integration of y' = f(y) from t = 0 to t_end.
Trajectory integrate(const VectorField& f, std::vector<double> y0, const IntegrationOptions& opts,
                     std::vector<Monitor> monitors = {});

/// H(P) = (1/2) G^{AB} P_A P_B on g*.
class QuadraticHamiltonian {
 public:
  explicit QuadraticHamiltonian(MetricForm g) : g_(std::move(g)), gd_(g_.to_doubles()) {}
  const MetricForm& metric() const { return g_; }
  double value(std::span<const double> p) const;
  std::vector<double> gradient(std::span<const double> p) const;
  CoalgebraFunction as_function() const;

 private:
  MetricForm g_;
  std::vector<double> gd_;
};

/// dP_A/dt = {H, P_A} = sum C_{EA}^C P_C dH/dP_E.
std::vector<double> lie_poisson_rhs(const LieAlgebra& alg, const QuadraticHamiltonian& h, std::span<const double> p);
Covector lie_poisson_rhs(const LieAlgebra& alg, const MetricForm& g, const Covector& p);

/// Integrates the Lie-Poisson system; monitors "H" plus any extras.
Trajectory integrate_coalgebra(const LieAlgebra& alg, const QuadraticHamiltonian& h, std::vector<double> p0,
                               const IntegrationOptions& opts, std::vector<Monitor> extra = {});

/// Hamilton's equations dx/dt = dH/dp, dp/dt = -dH/dx on T*M. State (x, p).
Trajectory integrate_geodesic(const PhaseFunction& h, const PhasePoint& start, const IntegrationOptions& opts,
                              std::vector<Monitor> extra = {});

// --- polar chart of the wild algebra ------------------------------------------

struct PolarCoordinates {
  double sigma = 0, gamma = 0, phi = 0, rho = 0, psi = 0;
};

/// Wraps an angle into [-pi, pi).
double wrap_pi(double a);
/// Wraps an angle into [0, 2 pi).
double wrap_two_pi(double a);

/// P -> (sigma, gamma, phi, rho, psi) with P_2 = gamma sin phi, P_3 = gamma cos phi,
/// P_4 = rho sin psi, P_5 = (rho/alpha) cos psi.
PolarCoordinates to_polar(std::span<const double> p, double alpha, double radius_tol = 1e-14);
std::vector<double> from_polar(const PolarCoordinates& c, double alpha);

/// Continuous lift of a wrapped angle sequence.
class AngleLifter {
 public:
  explicit AngleLifter(double max_step = M_PI / 2) : max_step_(max_step) {}
  double lift(double wrapped);
  bool started() const { return started_; }

 private:
  double max_step_;
  bool started_ = false;
  double last_wrapped_ = 0.0;
  double lifted_ = 0.0;
};

struct CasimirValues {
  double k1 = 0, k2 = 0;
  double k3_wrapped = 0;    // (psi - alpha phi) mod 2 pi, principal angles
  double k3_principal = 0;  // psi - alpha phi on principal angles, unreduced
};

CasimirValues casimir_values(std::span<const double> p, double alpha);

/// Tracks K_3 = psi - alpha phi with continuously lifted angles.
class CasimirTracker {
 public:
  explicit CasimirTracker(double alpha) : alpha_(alpha) {}
  double k3_unwrapped(std::span<const double> p);

 private:
  double alpha_;
  AngleLifter phi_, psi_;
};

/// Monitors K1, K2, K3_wrapped, K3_unwrapped for the wild algebra.
std::vector<Monitor> wild_casimir_monitors(double alpha);

// --- figure 1 reproduction ----------------------------------------------------

/// G of H = (P1^2 + 2 P1 P3 + 2 P1 P4 - P4^2 + P5^2)/2.
MetricForm figure1_metric();
std::vector<double> figure1_default_start();

struct Figure1Options {
  double alpha = std::sqrt(2.0);
  std::optional<MetricForm> metric;  // defaults to figure1_metric()
  std::vector<double> start;         // defaults to figure1_default_start()
  IntegrationOptions integration{1e-3, 100.0, StepMethod::rk4, 1};
  double jump_threshold = 1e-3;
  double jump_fit_tol = 1e-4;
  int jump_search = 5;
};

struct K3Jump {
  double time = 0;
  double magnitude = 0;
  int n = 0, m = 0;
  double fit_error = 0;
  bool matched = false;
};

/// Best 2 pi (n - alpha m) fit with |n|, |m| <= bound.
K3Jump fit_jump(double magnitude, double alpha, int bound);

struct Figure1Report {
  Trajectory trajectory;
  std::vector<K3Jump> jumps;
  double k1_rel_drift = 0, k2_rel_drift = 0, k3_unwrapped_drift = 0, h_drift = 0;
  bool all_jumps_matched() const;
  /// t,K1,K2,K3_wrapped,K3_unwrapped at full double precision.
  std::string csv() const;
  std::string jump_summary() const;
};

Figure1Report figure1_report(const LieAlgebra& wild_algebra, const Figure1Options& opts = {});

}  // namespace homflow
