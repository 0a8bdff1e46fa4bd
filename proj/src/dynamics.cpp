#include "homflow/dynamics.hpp"

#include <algorithm>
#include <limits>
#include <cstdio>
#include <sstream>

namespace homflow {

StepMethod parse_step_method(const std::string& name) {
  if (name == "rk4") return StepMethod::rk4;
  if (name == "midpoint") return StepMethod::midpoint;
  throw std::invalid_argument("unknown integration method '" + name + "' (expected rk4 or midpoint)");
}

std::string to_string(StepMethod m) { return m == StepMethod::rk4 ? "rk4" : "midpoint"; }

namespace {

void axpy(std::vector<double>& out, std::span<const double> y, double a, const std::vector<double>& k) {
  out.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + a * k[i];
}

bool all_finite(std::span<const double> y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

std::vector<double> ode_step(const VectorField& f, std::span<const double> y, double dt, StepMethod method) {
  std::vector<double> tmp;
  std::vector<double> out(y.begin(), y.end());
  if (method == StepMethod::midpoint) {
    const auto k1 = f(y);
    axpy(tmp, y, 0.5 * dt, k1);
    const auto k2 = f(tmp);
    for (std::size_t i = 0; i < y.size(); ++i) out[i] += dt * k2[i];
    return out;
  }
  const auto k1 = f(y);
  axpy(tmp, y, 0.5 * dt, k1);
  const auto k2 = f(tmp);
  axpy(tmp, y, 0.5 * dt, k2);
  const auto k3 = f(tmp);
  axpy(tmp, y, dt, k3);
  const auto k4 = f(tmp);
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

const std::vector<double>& Trajectory::monitor(const std::string& name) const {
  for (std::size_t k = 0; k < monitor_names.size(); ++k)
    if (monitor_names[k] == name) return monitors[k];
  throw std::out_of_range("no monitor named '" + name + "'");
}

double Trajectory::max_abs_drift(const std::string& name) const {
  const auto& m = monitor(name);
  double d = 0.0;
  for (double v : m) d = std::max(d, std::abs(v - m.front()));
  return d;
}

double Trajectory::max_rel_drift(const std::string& name) const {
  const auto& m = monitor(name);
  const double scale = std::abs(m.front());
  return scale > 0.0 ? max_abs_drift(name) / scale : max_abs_drift(name);
}

Trajectory integrate(const VectorField& f, std::vector<double> y0, const IntegrationOptions& opts,
                     std::vector<Monitor> monitors) {
  if (!(opts.dt > 0.0) || !(opts.t_end > 0.0)) throw std::invalid_argument("dt and T must be positive");
  if (!all_finite(y0)) throw NonFiniteState(0.0, "initial state is not finite");
  const auto steps = static_cast<std::size_t>(std::llround(opts.t_end / opts.dt));
  const std::size_t stride = std::max<std::size_t>(opts.record_every, 1);

  Trajectory tr;
  for (const auto& m : monitors) tr.monitor_names.push_back(m.name);
  tr.monitors.resize(monitors.size());
  auto record = [&](double t, const std::vector<double>& y) {
    tr.times.push_back(t);
    tr.states.push_back(y);
    for (std::size_t k = 0; k < monitors.size(); ++k) tr.monitors[k].push_back(monitors[k].fn(t, y));
  };

  std::vector<double> y = std::move(y0);
  record(0.0, y);
  for (std::size_t s = 1; s <= steps; ++s) {
    auto next = ode_step(f, y, opts.dt, opts.method);
    const double t = static_cast<double>(s) * opts.dt;
    if (!all_finite(next)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "state became non-finite; last valid time t=%.17g", t - opts.dt);
      throw NonFiniteState(t - opts.dt, buf);
    }
    y = std::move(next);
    if (s % stride == 0 || s == steps) record(t, y);
  }
  return tr;
}

double QuadraticHamiltonian::value(std::span<const double> p) const {
  const std::size_t n = p.size();
  double s = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) s += gd_[a * n + b] * p[a] * p[b];
  return 0.5 * s;
}

std::vector<double> QuadraticHamiltonian::gradient(std::span<const double> p) const {
  const std::size_t n = p.size();
  std::vector<double> g(n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g[a] += gd_[a * n + b] * p[b];
  return g;
}

CoalgebraFunction QuadraticHamiltonian::as_function() const {
  CoalgebraFunction f;
  f.value = [*this](std::span<const double> p) { return value(p); };
  f.gradient = [*this](std::span<const double> p) { return gradient(p); };
  return f;
}

std::vector<double> lie_poisson_rhs(const LieAlgebra& alg, const QuadraticHamiltonian& h, std::span<const double> p) {
  const std::size_t n = alg.dim();
  if (p.size() != n) throw std::invalid_argument("covector length differs from algebra dimension");
  const auto dh = h.gradient(p);
  const auto& c = alg.constants_double();
  std::vector<double> out(n, 0.0);
  for (std::size_t e = 0; e < n; ++e) {
    if (dh[e] == 0.0) continue;
    for (std::size_t a = 0; a < n; ++a) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += c[(e * n + a) * n + k] * p[k];
      out[a] += s * dh[e];
    }
  }
  return out;
}

Covector lie_poisson_rhs(const LieAlgebra& alg, const MetricForm& g, const Covector& p) {
  const std::size_t n = alg.dim();
  const auto& gm = g.matrix();
  Covector dh(n, Scalar::zero(alg.mode()));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) dh[a] += gm(a, b) * p[b];
  Covector out(n, Scalar::zero(alg.mode()));
  for (std::size_t e = 0; e < n; ++e)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t k = 0; k < n; ++k)
        if (!alg.constant(e, a, k).is_zero()) out[a] += alg.constant(e, a, k) * p[k] * dh[e];
  return out;
}

Trajectory integrate_coalgebra(const LieAlgebra& alg, const QuadraticHamiltonian& h, std::vector<double> p0,
                               const IntegrationOptions& opts, std::vector<Monitor> extra) {
  if (p0.size() != alg.dim()) throw std::invalid_argument("initial covector length differs from algebra dimension");
  std::vector<Monitor> monitors;
  monitors.push_back({"H", [h](double, std::span<const double> p) { return h.value(p); }});
  for (auto& m : extra) monitors.push_back(std::move(m));
  const VectorField f = [&alg, &h](std::span<const double> p) { return lie_poisson_rhs(alg, h, p); };
  return integrate(f, std::move(p0), opts, std::move(monitors));
}

Trajectory integrate_geodesic(const PhaseFunction& h, const PhasePoint& start, const IntegrationOptions& opts,
                              std::vector<Monitor> extra) {
  std::vector<Monitor> monitors;
  monitors.push_back({"H", [h](double, std::span<const double> y) { return h.value(PhasePoint::from_flat(y)); }});
  for (auto& m : extra) monitors.push_back(std::move(m));
  const VectorField f = [&h](std::span<const double> y) {
    const auto pt = PhasePoint::from_flat(y);
    const auto g = h.gradient(pt);
    std::vector<double> dy(y.size());
    const std::size_t m = pt.dim();
    for (std::size_t a = 0; a < m; ++a) {
      dy[a] = g.dp[a];
      dy[m + a] = -g.dx[a];
    }
    return dy;
  };
  return integrate(f, start.flat(), opts, std::move(monitors));
}

double wrap_pi(double a) {
  double r = std::fmod(a + M_PI, 2.0 * M_PI);
  if (r < 0) r += 2.0 * M_PI;
  return r - M_PI;
}

double wrap_two_pi(double a) {
  double r = std::fmod(a, 2.0 * M_PI);
  if (r < 0) r += 2.0 * M_PI;
  if (r >= 2.0 * M_PI) r -= 2.0 * M_PI;
  return r;
}

PolarCoordinates to_polar(std::span<const double> p, double alpha, double radius_tol) {
  if (p.size() != 5) throw std::invalid_argument("polar chart needs a 5-component covector");
  PolarCoordinates c;
  c.sigma = p[0];
  c.gamma = std::hypot(p[1], p[2]);
  c.rho = std::hypot(p[3], alpha * p[4]);
  if (c.gamma <= radius_tol) throw DegenerateRadius("gamma = |(P2, P3)| vanishes");
  if (c.rho <= radius_tol) throw DegenerateRadius("rho = |(P4, alpha P5)| vanishes");
  c.phi = wrap_pi(std::atan2(p[1], p[2]));
  c.psi = wrap_pi(std::atan2(p[3], alpha * p[4]));
  return c;
}

std::vector<double> from_polar(const PolarCoordinates& c, double alpha) {
  return {c.sigma, c.gamma * std::sin(c.phi), c.gamma * std::cos(c.phi), c.rho * std::sin(c.psi),
          c.rho / alpha * std::cos(c.psi)};
}

double AngleLifter::lift(double wrapped) {
  if (!started_) {
    started_ = true;
    last_wrapped_ = wrapped;
    lifted_ = wrapped;
    return lifted_;
  }
  const double inc = wrap_pi(wrapped - last_wrapped_);
  if (std::abs(inc) > max_step_) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "angle moved by %.6g rad between samples (limit %.6g); reduce dt", inc, max_step_);
    throw AngleLiftError(buf);
  }
  lifted_ += inc;
  last_wrapped_ = wrapped;
  return lifted_;
}

CasimirValues casimir_values(std::span<const double> p, double alpha) {
  const auto c = to_polar(p, alpha);
  CasimirValues k;
  k.k1 = c.gamma;
  k.k2 = c.rho;
  k.k3_principal = c.psi - alpha * c.phi;
  k.k3_wrapped = wrap_two_pi(k.k3_principal);
  return k;
}

double CasimirTracker::k3_unwrapped(std::span<const double> p) {
  const auto c = to_polar(p, alpha_);
  const double phi = phi_.lift(c.phi);
  const double psi = psi_.lift(c.psi);
  return psi - alpha_ * phi;
}

std::vector<Monitor> wild_casimir_monitors(double alpha) {
  std::vector<Monitor> m;
  m.push_back({"K1", [alpha](double, std::span<const double> p) { return casimir_values(p, alpha).k1; }});
  m.push_back({"K2", [alpha](double, std::span<const double> p) { return casimir_values(p, alpha).k2; }});
  m.push_back({"K3_wrapped", [alpha](double, std::span<const double> p) { return casimir_values(p, alpha).k3_wrapped; }});
  CasimirTracker tracker(alpha);
  m.push_back({"K3_unwrapped",
               [tracker](double, std::span<const double> p) mutable { return tracker.k3_unwrapped(p); }});
  return m;
}

MetricForm figure1_metric() {
  ScalarMatrix g(5, 5, ScalarMode::floating);
  auto set = [&g](std::size_t a, std::size_t b, double v) {
    g(a, b) = Scalar::floating(v);
    g(b, a) = Scalar::floating(v);
  };
  set(0, 0, 1.0);
  set(0, 2, 1.0);
  set(0, 3, 1.0);
  set(3, 3, -1.0);
  set(4, 4, 1.0);
  return MetricForm(std::move(g));
}

std::vector<double> figure1_default_start() { return {1.0, 1.0 / 2, 1.0 / 3, 1.0 / 4, 1.0 / 5}; }

K3Jump fit_jump(double magnitude, double alpha, int bound) {
  K3Jump best;
  best.magnitude = magnitude;
  best.fit_error = std::numeric_limits<double>::infinity();
  for (int n = -bound; n <= bound; ++n)
    for (int m = -bound; m <= bound; ++m) {
      if (n == 0 && m == 0) continue;
      const double err = std::abs(magnitude - 2.0 * M_PI * (n - alpha * m));
      if (err < best.fit_error) {
        best.fit_error = err;
        best.n = n;
        best.m = m;
      }
    }
  return best;
}

bool Figure1Report::all_jumps_matched() const {
  return std::all_of(jumps.begin(), jumps.end(), [](const K3Jump& j) { return j.matched; });
}

std::string Figure1Report::csv() const {
  std::string out = "t,K1,K2,K3_wrapped,K3_unwrapped\n";
  const auto& k1 = trajectory.monitor("K1");
  const auto& k2 = trajectory.monitor("K2");
  const auto& k3w = trajectory.monitor("K3_wrapped");
  const auto& k3u = trajectory.monitor("K3_unwrapped");
  char buf[160];
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", trajectory.times[i], k1[i], k2[i], k3w[i], k3u[i]);
    out += buf;
  }
  return out;
}

std::string Figure1Report::jump_summary() const {
  std::ostringstream os;
  os << "K3_wrapped jumps: " << jumps.size() << " (fit 2pi(n - alpha m))\n";
  char buf[160];
  for (const auto& j : jumps) {
    std::snprintf(buf, sizeof buf, "  t=%.6f dK3=%+.12f n=%d m=%d fit_error=%.3e %s\n", j.time, j.magnitude, j.n, j.m,
                  j.fit_error, j.matched ? "matched" : "UNMATCHED");
    os << buf;
  }
  return os.str();
}

Figure1Report figure1_report(const LieAlgebra& wild_algebra, const Figure1Options& opts) {
  if (wild_algebra.dim() != 5) throw std::invalid_argument("figure 1 needs the five-dimensional wild algebra");
  const QuadraticHamiltonian h(opts.metric ? *opts.metric : figure1_metric());
  auto start = opts.start.empty() ? figure1_default_start() : opts.start;
  to_polar(start, opts.alpha);  // rejects degenerate radii up front

  Figure1Report rep;
  rep.trajectory = integrate_coalgebra(wild_algebra, h, start, opts.integration, wild_casimir_monitors(opts.alpha));
  const auto& tr = rep.trajectory;
  rep.k1_rel_drift = tr.max_rel_drift("K1");
  rep.k2_rel_drift = tr.max_rel_drift("K2");
  rep.k3_unwrapped_drift = tr.max_abs_drift("K3_unwrapped");
  rep.h_drift = tr.max_abs_drift("H");

  const auto& k3w = tr.monitor("K3_wrapped");
  for (std::size_t i = 1; i < k3w.size(); ++i) {
    const double d = k3w[i] - k3w[i - 1];
    if (std::abs(d) <= opts.jump_threshold) continue;
    K3Jump j = fit_jump(d, opts.alpha, opts.jump_search);
    j.time = tr.times[i];
    j.matched = j.fit_error <= opts.jump_fit_tol;
    rep.jumps.push_back(j);
  }
  return rep;
}

}  // namespace homflow
