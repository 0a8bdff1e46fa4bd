#include "homflow/charts.hpp"

#include "homflow/dual.hpp"
#include "homflow/examples.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace homflow {

namespace {

using D8 = Dual<8>;
using D5 = Dual<5>;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// |v| in [lo, hi] with a random sign
double signed_uniform(std::mt19937_64& rng, double lo, double hi) {
  const double v = uniform(rng, lo, hi);
  return (rng() & 1U) ? -v : v;
}

void require_nonzero(double v, const char* what) {
  if (!(std::abs(v) > 1e-12)) throw std::domain_error(std::string("outside chart domain: ") + what + " vanishes");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// F is called as f(x, p) with std::array<T, 4> arguments for T = double and
// T = Dual<8>; the dual pass gives the exact gradient.
template <class F>
PhaseFunction dual_function(std::string name, F f) {
  PhaseFunction out;
  out.name = std::move(name);
  out.value = [f](const PhasePoint& pt) {
    std::array<double, 4> x{}, p{};
    std::copy_n(pt.x.begin(), 4, x.begin());
    std::copy_n(pt.p.begin(), 4, p.begin());
    return f(x, p);
  };
  out.gradient = [f](const PhasePoint& pt) {
    std::array<D8, 4> x, p;
    for (std::size_t i = 0; i < 4; ++i) {
      x[i] = D8::variable(pt.x[i], i);
      p[i] = D8::variable(pt.p[i], 4 + i);
    }
    const D8 r = f(x, p);
    PhaseGradient g{std::vector<double>(r.d.begin(), r.d.begin() + 4), std::vector<double>(r.d.begin() + 4, r.d.end())};
    return g;
  };
  return out;
}

template <class T>
std::array<T, 5> sec4_moment(const std::array<T, 4>& x, const std::array<T, 4>& p) {
  return {p[0], p[1], x[1] * p[0] + p[2], -x[0] * p[0] + x[1] * p[1] - 2.0 * x[2] * p[2] + p[3],
          x[0] * p[1] - x[2] * x[2] * p[2] + x[2] * p[3]};
}

template <class T>
std::array<T, 5> sec5_moment(const std::array<T, 4>& x, const std::array<T, 4>& p, double alpha) {
  return {x[2] * p[1] - x[1] * p[2] + x[0] * p[3] - alpha * alpha * x[3] * p[0], p[1], p[2], p[3], p[0]};
}

template <class T>
std::array<T, 5> sec5_chart_map(const T& q, const T& pi, const T& j1, const T& j2, const T& j3, double alpha) {
  using std::cos;
  using std::sin;
  const T th = j3 + alpha * q;
  return {pi, j1 * sin(q), j1 * cos(q), alpha * j2 * sin(th), j2 * cos(th)};
}

PhasePoint random_phase_point(std::mt19937_64& rng, double r = 1.0) {
  PhasePoint pt{std::vector<double>(4), std::vector<double>(4)};
  for (auto& v : pt.x) v = uniform(rng, -r, r);
  for (auto& v : pt.p) v = uniform(rng, -r, r);
  return pt;
}

Polynomial mono(std::size_t n, Exponents e, long c) { return Polynomial::monomial(n, std::move(e), Scalar::exact(c)); }

double xfirst_bracket(const PhaseGradient& f, const PhaseGradient& g) {
  double s = 0.0;
  for (std::size_t a = 0; a < f.dx.size(); ++a) s += f.dx[a] * g.dp[a] - f.dp[a] * g.dx[a];
  return s;
}

Monitor phase_monitor(const PhaseFunction& f) {
  return {f.name, [f](double, std::span<const double> y) { return f.value(PhasePoint::from_flat(y)); }};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

FlowComparison comparison(std::string name, double value, double tol) {
  return {std::move(name), value, tol, value < tol};
}

}  // namespace

// --- orbit charts -------------------------------------------------------------

std::vector<Polynomial> sec4_orbit_polynomials() {
  // variables (q1, q2, pi1, pi2, j)
  return {mono(5, {1, 0, 0, 0, 0}, 1), mono(5, {0, 1, 0, 0, 0}, -1), mono(5, {1, 0, 0, 1, 0}, 1),
          mono(5, {0, 1, 0, 1, 0}, -1) + mono(5, {1, 0, 1, 0, 0}, 1),
          mono(5, {0, 1, 1, 0, 0}, 1) + mono(5, {-2, 0, 0, 0, 1}, 1)};
}

OrbitChart sec4_orbit_chart() {
  auto polys = std::make_shared<const std::vector<Polynomial>>(sec4_orbit_polynomials());
  auto derivs = std::make_shared<std::vector<std::vector<Polynomial>>>();
  for (const auto& p : *polys) {
    std::vector<Polynomial> row;
    for (std::size_t v = 0; v < 5; ++v) row.push_back(p.derivative(v));
    derivs->push_back(std::move(row));
  }
  auto flat = [](const ChartPoint& pt) {
    require_nonzero(pt.q.at(0), "q1");
    return std::vector<double>{pt.q[0], pt.q[1], pt.pi[0], pt.pi[1], pt.j[0]};
  };
  const auto casimir = std::make_shared<const Polynomial>(sec4_casimir());

  OrbitChart c;
  c.name = "sec4";
  c.dim_g = 5;
  c.dim_q = 2;
  c.dim_j = 1;
  c.in_domain = [](const ChartPoint& pt) { return std::abs(pt.q.at(0)) > 1e-12; };
  c.sample = [](std::mt19937_64& rng) {
    ChartPoint pt;
    pt.q = {signed_uniform(rng, 0.5, 2.0), uniform(rng, -2.0, 2.0)};
    pt.pi = {uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
    pt.j = {uniform(rng, -2.0, 2.0)};
    return pt;
  };
  c.covector = [polys, flat](const ChartPoint& pt) {
    const auto y = flat(pt);
    std::vector<double> out;
    for (const auto& p : *polys) out.push_back(p.evaluate(y));
    return out;
  };
  c.derivatives = [derivs, flat](const ChartPoint& pt) {
    const auto y = flat(pt);
    ChartDerivatives d;
    for (const auto& row : *derivs) {
      d.dq.push_back({row[0].evaluate(y), row[1].evaluate(y)});
      d.dpi.push_back({row[2].evaluate(y), row[3].evaluate(y)});
      d.dj.push_back({row[4].evaluate(y)});
    }
    return d;
  };
  c.casimirs = [cov = c.covector, casimir](const ChartPoint& pt) {
    return std::vector<double>{casimir->evaluate(cov(pt))};
  };
  c.kappa = [](std::span<const double> j) { return std::vector<double>{j[0]}; };
  c.kappa_jacobian = [](std::span<const double>) { return std::vector<double>{1.0}; };
  return c;
}

OrbitChart sec5_orbit_chart(double alpha) {
  OrbitChart c;
  c.name = "sec5";
  c.dim_g = 5;
  c.dim_q = 1;
  c.dim_j = 3;
  c.in_domain = [](const ChartPoint& pt) { return pt.j.at(0) > 0.0 && pt.j.at(1) > 0.0; };
  c.sample = [](std::mt19937_64& rng) {
    ChartPoint pt;
    pt.q = {uniform(rng, -3.0, 3.0)};
    pt.pi = {uniform(rng, -2.0, 2.0)};
    pt.j = {uniform(rng, 0.2, 2.0), uniform(rng, 0.2, 2.0), uniform(rng, -M_PI, M_PI)};
    return pt;
  };
  auto check = [](const ChartPoint& pt) {
    if (!(pt.j.at(0) > 0.0) || !(pt.j.at(1) > 0.0)) throw std::domain_error("degenerate orbit: j1 or j2 is not positive");
  };
  c.covector = [alpha, check](const ChartPoint& pt) {
    check(pt);
    const auto p = sec5_chart_map(pt.q[0], pt.pi[0], pt.j[0], pt.j[1], pt.j[2], alpha);
    return std::vector<double>(p.begin(), p.end());
  };
  c.derivatives = [alpha, check](const ChartPoint& pt) {
    check(pt);
    const auto p = sec5_chart_map(D5::variable(pt.q[0], 0), D5::variable(pt.pi[0], 1), D5::variable(pt.j[0], 2),
                                  D5::variable(pt.j[1], 3), D5::variable(pt.j[2], 4), alpha);
    ChartDerivatives d;
    for (const auto& pa : p) {
      d.dq.push_back({pa.d[0]});
      d.dpi.push_back({pa.d[1]});
      d.dj.push_back({pa.d[2], pa.d[3], pa.d[4]});
    }
    return d;
  };
  c.casimirs = [alpha, cov = c.covector](const ChartPoint& pt) {
    const auto p = cov(pt);
    const auto pc = to_polar(p, alpha);
    // lift the principal angles onto the branch fixed by the chart point
    const double phi = pc.phi + 2.0 * M_PI * std::round((pt.q[0] - pc.phi) / (2.0 * M_PI));
    const double psi_target = pt.j[2] + alpha * pt.q[0];
    const double psi = pc.psi + 2.0 * M_PI * std::round((psi_target - pc.psi) / (2.0 * M_PI));
    return std::vector<double>{pc.gamma, pc.rho, psi - alpha * phi};
  };
  c.kappa = [alpha](std::span<const double> j) { return std::vector<double>{j[0], alpha * j[1], j[2]}; };
  c.kappa_jacobian = [alpha](std::span<const double>) {
    return std::vector<double>{1.0, 0.0, 0.0, 0.0, alpha, 0.0, 0.0, 0.0, 1.0};
  };
  return c;
}

IdentityCheck chart_intertwining(const OrbitChart& chart, const LieAlgebra& alg, std::size_t samples,
                                 std::uint64_t seed, double tol) {
  IdentityCheck r{chart.name + " orbit chart intertwining", false, 0.0, tol, samples, false, {}};
  const std::size_t n = alg.dim();
  const auto& cd = alg.constants_double();
  std::mt19937_64 rng(seed);
  std::size_t wa = 0, wb = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto pt = chart.sample(rng);
    const auto p = chart.covector(pt);
    const auto d = chart.derivatives(pt);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        double br = 0.0;
        for (std::size_t k = 0; k < chart.dim_q; ++k) br += d.dpi[a][k] * d.dq[b][k] - d.dq[a][k] * d.dpi[b][k];
        double expected = 0.0;
        for (std::size_t c = 0; c < n; ++c) expected += cd[(a * n + b) * n + c] * p[c];
        const double err = std::abs(br - expected);
        if (err > r.max_error) {
          r.max_error = err;
          wa = a + 1;
          wb = b + 1;
        }
      }
    }
  }
  r.passed = r.max_error < tol;
  r.detail = "all pairs";
  if (wa) r.detail += ", worst pair (" + std::to_string(wa) + "," + std::to_string(wb) + ")";
  return r;
}

IdentityCheck chart_casimirs(const OrbitChart& chart, std::size_t samples, std::uint64_t seed, double tol) {
  IdentityCheck r{chart.name + " orbit chart K(P(q,pi,j)) = kappa(j)", false, 0.0, tol, samples, false, {}};
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto pt = chart.sample(rng);
    const auto k = chart.casimirs(pt);
    const auto kappa = chart.kappa(pt.j);
    r.max_error = std::max(r.max_error, max_abs_diff(k, kappa));
  }
  r.passed = r.max_error < tol;
  return r;
}

IdentityCheck chart_kappa_nondegenerate(const OrbitChart& chart, std::size_t samples, std::uint64_t seed,
                                        double tol) {
  IdentityCheck r{chart.name + " det dkappa/dj != 0", false, 0.0, tol, samples, false, {}};
  std::mt19937_64 rng(seed);
  double min_det = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    const auto pt = chart.sample(rng);
    const auto jac = chart.kappa_jacobian(pt.j);
    const auto k = static_cast<Eigen::Index>(chart.dim_j);
    const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(jac.data(), k, k);
    min_det = std::min(min_det, std::abs(m.determinant()));
  }
  r.max_error = min_det;
  r.passed = min_det > tol;
  r.detail = "value is min |det|";
  return r;
}

IdentityCheck sec4_casimir_symbolic() {
  IdentityCheck r{"sec4 orbit chart K(P(q,pi,j)) = j (symbolic)", true, 0.0, 0.0, 0, false, {}};
  const auto residual = sec4_casimir().compose(sec4_orbit_polynomials()) -
                        Polynomial::variable(5, 4, ScalarMode::exact);
  r.max_error = residual.max_abs_coefficient();
  r.passed = residual.is_zero();
  if (!r.passed) r.detail = residual.to_string({"q1", "q2", "pi1", "pi2", "j"});
  return r;
}

IdentityCheck sec4_intertwining_symbolic() {
  IdentityCheck r{"sec4 orbit chart intertwining (symbolic)", true, 0.0, 0.0, 0, false, {}};
  const auto alg = sec4_algebra();
  const auto p = sec4_orbit_polynomials();
  const std::size_t coords[] = {0, 1};
  const std::size_t momenta[] = {2, 3};
  std::size_t bad = 0;
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = a + 1; b < 5; ++b) {
      Polynomial res = canonical_bracket(p[a], p[b], coords, momenta);
      for (std::size_t c = 0; c < 5; ++c) res -= p[c] * alg.constant(a, b, c);
      ++r.samples;
      if (!res.is_zero()) {
        ++bad;
        r.max_error = std::max(r.max_error, res.max_abs_coefficient());
        r.detail += "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ") ";
      }
    }
  }
  r.passed = bad == 0;
  if (r.passed) r.detail = std::to_string(r.samples) + " pairs";
  return r;
}

// --- invariant set ------------------------------------------------------------

IdentityCheck sec4_invariants_commute(std::size_t samples, std::uint64_t seed, double tol) {
  IdentityCheck r{"sec4 {L_mu, X_A} = 0", false, 0.0, tol, samples, false, {}};
  const auto l = sec4_invariants();
  const auto fields = sec4_fields();
  std::vector<PhaseFunction> x;
  for (std::size_t a = 0; a < fields.generators(); ++a)
    x.push_back(phase_function("X" + std::to_string(a + 1), fields.momentum_function(a)));
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto pt = random_phase_point(rng);
    for (const auto& lf : l.functions)
      for (const auto& xf : x) r.max_error = std::max(r.max_error, std::abs(canonical_bracket(lf, xf, pt)));
  }
  r.passed = r.max_error < tol;
  return r;
}

IdentityCheck sec4_f_algebra(bool printed, std::size_t samples, std::uint64_t seed, double tol) {
  IdentityCheck r{printed ? "sec4 F-algebra as printed: {L1,L2} = L3" : "sec4 F-algebra {L1,L2}=L1 {L1,L3}=0 {L2,L3}=L3",
                  false, 0.0, tol, samples, false, {}};
  const auto l = sec4_invariants();
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto pt = random_phase_point(rng);
    const double l1 = l[0].value(pt), l3 = l[2].value(pt);
    const double b12 = canonical_bracket(l[0], l[1], pt);
    if (printed) {
      r.max_error = std::max(r.max_error, std::abs(b12 - l3));
      continue;
    }
    r.max_error = std::max(r.max_error, std::abs(b12 - l1));
    r.max_error = std::max(r.max_error, std::abs(canonical_bracket(l[0], l[2], pt)));
    r.max_error = std::max(r.max_error, std::abs(canonical_bracket(l[1], l[2], pt) - l3));
  }
  r.passed = r.max_error < tol;
  return r;
}

IdentityCheck sec4_compatibility(bool printed, std::size_t samples, std::uint64_t seed, double tol) {
  IdentityCheck r{printed ? "sec4 Z(L) = +K(X) as printed" : "sec4 Z(L) = L1 L3 = -K(X)", false, 0.0, tol, samples,
                  false, {}};
  const auto l = sec4_invariants();
  const auto k = sec4_casimir();
  const auto fields = sec4_fields();
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto pt = random_phase_point(rng);
    const double z = l[0].value(pt) * l[2].value(pt);
    const double kx = k.evaluate(moment_map(fields, pt));
    r.max_error = std::max(r.max_error, std::abs(printed ? z - kx : z + kx));
  }
  r.passed = r.max_error < tol;
  return r;
}

// --- sheet chart --------------------------------------------------------------

namespace {

SheetChart sec4_sheet(bool printed) {
  SheetChart s;
  s.name = printed ? "sec4 sheet (printed relations)" : "sec4 sheet";
  // variables (u, v, j)
  s.a = {mono(3, {1, 0, 0}, 1), mono(3, {1, 1, 0}, -1), mono(3, {-1, 0, 1}, 1)};
  s.z = mono(3, {1, 0, 1}, 1);
  const Polynomial zero(3);
  const Polynomial a1 = mono(3, {1, 0, 0}, 1);
  const Polynomial a3 = mono(3, {0, 0, 1}, 1);
  const Polynomial o12 = printed ? a3 : a1;
  s.omega = {{zero, o12, zero}, {-o12, zero, a3}, {zero, -a3, zero}};
  return s;
}

}  // namespace

SheetChart sec4_sheet_chart() { return sec4_sheet(false); }
SheetChart sec4_sheet_chart_printed() { return sec4_sheet(true); }

IdentityCheck sheet_casimir_symbolic(const SheetChart& s) {
  IdentityCheck r{s.name + " Z(a(u,v,j)) = j (symbolic)", true, 0.0, 0.0, 0, false, {}};
  const auto res = s.z.compose(s.a) - Polynomial::variable(3, 2, ScalarMode::exact);
  r.max_error = res.max_abs_coefficient();
  r.passed = res.is_zero();
  if (!r.passed) r.detail = res.to_string({"u", "v", "j"});
  return r;
}

IdentityCheck sheet_brackets_symbolic(const SheetChart& s) {
  IdentityCheck r{s.name + " {a_mu, a_nu} = Omega(a) (symbolic)", true, 0.0, 0.0, 0, false, {}};
  const std::size_t coords[] = {0};
  const std::size_t momenta[] = {1};
  const std::size_t k = s.a.size();
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t n = m + 1; n < k; ++n) {
      const auto res = canonical_bracket(s.a[m], s.a[n], coords, momenta) - s.omega[m][n].compose(s.a);
      ++r.samples;
      if (!res.is_zero()) {
        r.max_error = std::max(r.max_error, res.max_abs_coefficient());
        r.detail += std::string(r.detail.empty() ? "" : "; ") + "{a" + std::to_string(m + 1) + ",a" +
                    std::to_string(n + 1) + "} off by " + res.to_string({"u", "v", "j"});
      }
    }
  }
  r.passed = r.detail.empty();
  return r;
}

// --- transition functions -----------------------------------------------------

std::vector<PhaseFunction> sec4_implicit_variables() {
  std::vector<PhaseFunction> v;
  v.push_back(dual_function("j", [](const auto& x, const auto& p) {
    const auto m = sec4_moment(x, p);
    return m[0] * m[1] * m[3] + m[0] * m[0] * m[4] - m[1] * m[1] * m[2];
  }));
  v.push_back(dual_function("q1", [](const auto&, const auto& p) { return p[0]; }));
  v.push_back(dual_function("q2", [](const auto&, const auto& p) { return -p[1]; }));
  v.push_back(dual_function("pi1", [](const auto& x, const auto& p) {
    require_nonzero(value_of(p[0]), "p1");
    const auto m = sec4_moment(x, p);
    return (m[3] - m[1] * m[2] / m[0]) / m[0];
  }));
  v.push_back(dual_function("pi2", [](const auto& x, const auto& p) {
    require_nonzero(value_of(p[0]), "p1");
    const auto m = sec4_moment(x, p);
    return m[2] / m[0];
  }));
  v.push_back(dual_function("u", [](const auto& x, const auto& p) {
    using std::exp;
    return -exp(x[3]) * (x[2] * p[0] + p[1]);
  }));
  v.push_back(dual_function("v", [](const auto& x, const auto& p) {
    using std::exp;
    const auto u = -exp(x[3]) * (x[2] * p[0] + p[1]);
    require_nonzero(value_of(u), "u");
    return p[3] / u;
  }));
  return v;
}

TransitionFunctions sec4_transition(bool printed) {
  TransitionFunctions tf;
  tf.name = printed ? "sec4 T (printed)" : "sec4 T";
  tf.t.push_back(dual_function(printed ? "T_printed" : "T", [printed](const auto& x, const auto& p) {
    const auto w = p[0] * x[2] + p[1];
    require_nonzero(value_of(p[0]), "p1");
    require_nonzero(value_of(w), "p1 x3 + p2");
    return printed ? 1.0 / (p[0] * p[0] * w) : 1.0 / (p[0] * w);
  }));
  auto vars = sec4_implicit_variables();
  tf.j.push_back(vars[0]);
  tf.others.assign(vars.begin() + 1, vars.end());
  tf.sample = [](std::mt19937_64& rng) {
    for (;;) {
      auto pt = random_phase_point(rng);
      if (std::abs(pt.p[0]) > 0.2 && std::abs(pt.p[0] * pt.x[2] + pt.p[1]) > 0.2) return pt;
    }
  };
  return tf;
}

TransitionFunctions sec5_transition(double alpha, bool printed) {
  TransitionFunctions tf;
  tf.name = printed ? "sec5 T (printed T3)" : "sec5 T";
  tf.t.push_back(dual_function("T1", [](const auto& x, const auto& p) {
    using std::sqrt;
    return (x[1] * p[1] + x[2] * p[2]) / sqrt(p[1] * p[1] + p[2] * p[2]);
  }));
  tf.t.push_back(dual_function("T2", [alpha](const auto& x, const auto& p) {
    using std::sqrt;
    return (x[0] * p[0] + x[3] * p[3]) / sqrt(p[0] * p[0] + p[3] * p[3] / (alpha * alpha));
  }));
  if (printed) {
    tf.t.push_back(dual_function("T3_printed", [alpha](const auto& x, const auto& p) {
      return alpha * x[3] * x[3] * p[0] - x[0] * p[3] / alpha;
    }));
  } else {
    tf.t.push_back(dual_function("T3", [alpha](const auto& x, const auto& p) {
      return alpha * x[3] * p[0] - x[0] * p[3] / alpha;
    }));
  }
  tf.j.push_back(dual_function("j1", [](const auto&, const auto& p) {
    using std::sqrt;
    return sqrt(p[1] * p[1] + p[2] * p[2]);
  }));
  tf.j.push_back(dual_function("j2", [alpha](const auto&, const auto& p) {
    using std::sqrt;
    return sqrt(p[0] * p[0] + p[3] * p[3] / (alpha * alpha));
  }));
  tf.j.push_back(dual_function("j3", [alpha](const auto&, const auto& p) {
    using std::atan2;
    return atan2(p[3], alpha * p[0]) - alpha * atan2(p[1], p[2]);
  }));
  tf.others.push_back(dual_function("q", [](const auto&, const auto& p) {
    using std::atan2;
    return atan2(p[1], p[2]);
  }));
  tf.others.push_back(dual_function("pi", [alpha](const auto& x, const auto& p) { return sec5_moment(x, p, alpha)[0]; }));
  tf.sample = [alpha](std::mt19937_64& rng) {
    for (;;) {
      auto pt = random_phase_point(rng);
      if (std::hypot(pt.p[1], pt.p[2]) > 0.2 && std::hypot(pt.p[0], pt.p[3] / alpha) > 0.2) return pt;
    }
  };
  return tf;
}

double BracketTable::max_error() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.max_error);
  return m;
}

BracketTable transition_bracket_table(const TransitionFunctions& tf, std::size_t samples, std::uint64_t seed,
                                      double tol) {
  BracketTable tab;
  tab.name = tf.name;
  tab.tolerance = tol;
  tab.samples = samples;
  for (std::size_t m = 0; m < tf.t.size(); ++m) {
    for (std::size_t k = 0; k < tf.j.size(); ++k) tab.entries.push_back({tf.t[m].name, tf.j[k].name, m == k ? 1.0 : 0.0, 0.0});
    for (const auto& o : tf.others) tab.entries.push_back({tf.t[m].name, o.name, 0.0, 0.0});
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto pt = tf.sample(rng);
    std::vector<PhaseGradient> yg;
    for (const auto& f : tf.j) yg.push_back(f.gradient(pt));
    for (const auto& f : tf.others) yg.push_back(f.gradient(pt));
    std::size_t e = 0;
    for (const auto& t : tf.t) {
      const auto tg = t.gradient(pt);
      for (const auto& g : yg) {
        auto& entry = tab.entries[e++];
        entry.max_error = std::max(entry.max_error, std::abs(xfirst_bracket(tg, g) - entry.expected));
      }
    }
  }
  tab.passed = tab.max_error() < tol;
  return tab;
}

// --- reduced Hamiltonians -----------------------------------------------------

double sec4_reduced_hamiltonian(double u, double v, double j, const std::array<double, 4>& c) {
  require_nonzero(u, "u");
  return 0.5 * (c[0] * u * u + c[1] * u * u * v * v - c[2] * u * u * v + c[3] * j / u);
}

std::array<double, 3> sec4_reduced_gradient(double u, double v, double j, const std::array<double, 4>& c) {
  require_nonzero(u, "u");
  return {0.5 * (2.0 * c[0] * u + 2.0 * c[1] * u * v * v - 2.0 * c[2] * u * v - c[3] * j / (u * u)),
          0.5 * (2.0 * c[1] * u * u * v - c[2] * u * u), 0.5 * c[3] / u};
}

Sec5AB sec5_ab(double q, std::span<const double> j, std::span<const double> g, double alpha) {
  auto G = [&g](int a, int b) { return g[static_cast<std::size_t>((a - 1) * 5 + (b - 1))]; };
  const double j1 = j[0], j2 = j[1], th = j[2] + alpha * q;
  const double s = std::sin(q), c = std::cos(q), st = std::sin(th), ct = std::cos(th);
  Sec5AB r;
  r.a = j1 * (G(1, 3) * c + G(1, 2) * s) + j2 * (G(1, 5) * ct + alpha * G(1, 4) * st);
  r.b = j1 * j1 * (G(2, 2) * s * s + G(3, 3) * c * c + G(2, 3) * std::sin(2 * q)) +
        2 * alpha * j1 * j2 * (G(2, 4) * s * st + G(3, 4) * c * st) + 2 * j1 * j2 * (G(2, 5) * s * ct + G(3, 5) * c * ct) +
        j2 * j2 * (alpha * alpha * G(4, 4) * st * st + alpha * G(4, 5) * std::sin(2 * th) + G(5, 5) * ct * ct);
  return r;
}

Sec5AB sec5_ab_displayed(double q, std::span<const double> j, std::span<const double> g, double alpha) {
  auto G = [&g](int a, int b) { return g[static_cast<std::size_t>((a - 1) * 5 + (b - 1))]; };
  const double j1 = j[0], j2 = j[1], th = j[2] + alpha * q;
  Sec5AB r;
  r.a = j1 * (G(1, 3) * std::cos(q) + G(1, 2) * std::sin(q)) + j2 * (G(1, 5) * std::cos(th) + G(1, 4) * std::sin(th));
  r.b = 0.5 * j2 * j2 * alpha * alpha * G(4, 4) * (1 - std::cos(2 * th)) +
        alpha * j1 * j2 * G(3, 4) * (std::sin(th + q) + std::sin(th - q)) + j1 * j1 * G(2, 3) * std::sin(2 * q) +
        alpha * j1 * j2 * G(2, 4) * (std::cos(th - q) + std::cos(th + q)) + 0.5 * j1 * j1 * (G(2, 2) + G(3, 3)) -
        0.5 * j1 * j1 * (G(2, 2) - G(3, 3)) * std::cos(2 * q) + 0.5 * j2 * j2 * G(5, 5) * (1 + std::cos(2 * th)) +
        alpha * j2 * j2 * G(4, 5) * std::sin(2 * th) + j1 * j2 * G(2, 5) * (std::sin(th + q) - std::sin(th - q)) +
        j1 * j2 * G(3, 5) * (std::cos(th + q) + std::cos(th - q));
  return r;
}

double sec5_reduced_hamiltonian(double q, double pi, std::span<const double> j, std::span<const double> g,
                                double alpha, ABForm form) {
  const auto derived = sec5_ab(q, j, g, alpha);
  const auto printed = sec5_ab_displayed(q, j, g, alpha);
  const double a = form == ABForm::derived ? derived.a : printed.a;
  const double b = form == ABForm::printed ? printed.b : derived.b;
  return g[0] * pi * pi / 2 + a * pi + b / 2;
}

std::vector<TermDiscrepancy> sec5_ab_discrepancies(double alpha, std::size_t samples, std::uint64_t seed, double tol) {
  std::vector<TermDiscrepancy> out;
  const auto chart = sec5_orbit_chart(alpha);
  for (int a = 1; a <= 5; ++a) {
    for (int b = a; b <= 5; ++b) {
      if (a == 1 && b == 1) continue;
      std::vector<double> g(25, 0.0);
      g[static_cast<std::size_t>((a - 1) * 5 + b - 1)] = 1.0;
      g[static_cast<std::size_t>((b - 1) * 5 + a - 1)] = 1.0;
      TermDiscrepancy d;
      d.entry = std::string(a == 1 ? "A" : "B") + ":G" + std::to_string(a) + std::to_string(b);
      std::mt19937_64 rng(seed);
      for (std::size_t s = 0; s < samples; ++s) {
        const auto pt = chart.sample(rng);
        const auto x = sec5_ab(pt.q[0], pt.j, g, alpha);
        const auto y = sec5_ab_displayed(pt.q[0], pt.j, g, alpha);
        d.max_error = std::max(d.max_error, a == 1 ? std::abs(x.a - y.a) : std::abs(x.b - y.b));
      }
      d.matches = d.max_error < tol;
      out.push_back(d);
    }
  }
  return out;
}

IdentityCheck sec4_reduced_consistency(const std::array<double, 4>& c, std::size_t samples, std::uint64_t seed,
                                       double tol) {
  IdentityCheck r{"sec4 H~(u,v,j) = H(L(x,p))", false, 0.0, tol, samples, false, {}};
  const auto l = sec4_invariants();
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples;) {
    const auto pt = random_phase_point(rng);
    const double l1 = l[0].value(pt), l2 = l[1].value(pt), l3 = l[2].value(pt);
    if (std::abs(l1) < 0.1) continue;
    const double h = invariant_hamiltonian(l, c, pt);
    const double ht = sec4_reduced_hamiltonian(l1, -l2 / l1, l1 * l3, c);
    r.max_error = std::max(r.max_error, std::abs(h - ht));
    ++s;
  }
  r.passed = r.max_error < tol;
  return r;
}

IdentityCheck sec5_reduced_consistency(double alpha, std::size_t metrics, std::size_t samples, std::uint64_t seed,
                                       double tol, ABForm form, bool zero_g14) {
  std::string name = "sec5 H~ = (1/2) P^T G P";
  name += form == ABForm::derived ? " (derived A, B)" : form == ABForm::printed_a ? " (printed A, derived B)" : " (printed A, B)";
  if (zero_g14) name += " with G14 = 0";
  IdentityCheck r{name, false, 0.0, tol, metrics * samples, false, std::to_string(metrics) + " metrics"};
  const auto chart = sec5_orbit_chart(alpha);
  std::mt19937_64 rng(seed);
  for (std::size_t m = 0; m < metrics; ++m) {
    std::vector<double> g(25);
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = a; b < 5; ++b) g[a * 5 + b] = g[b * 5 + a] = uniform(rng, -1.0, 1.0);
    if (zero_g14) g[3] = g[15] = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
      const auto pt = chart.sample(rng);
      const auto p = chart.covector(pt);
      double oracle = 0.0;
      for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = 0; b < 5; ++b) oracle += 0.5 * g[a * 5 + b] * p[a] * p[b];
      const double h = sec5_reduced_hamiltonian(pt.q[0], pt.pi[0], pt.j, g, alpha, form);
      r.max_error = std::max(r.max_error, std::abs(h - oracle));
    }
  }
  r.passed = r.max_error < tol;
  return r;
}

// --- flows --------------------------------------------------------------------

bool ReducedFlowReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const FlowComparison& r) { return r.passed; });
}

std::string ReducedFlowReport::csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < csv_header.size(); ++i) out << (i ? "," : "") << csv_header[i];
  out << '\n';
  char buf[40];
  for (const auto& row : csv_rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
  return out.str();
}

ReducedFlowReport sec4_reduced_flow_check(const Sec4FlowOptions& opts) {
  const auto& c = opts.c;
  const auto l = sec4_invariants();
  const auto h = invariant_hamiltonian_function(l, c);
  const auto vars = sec4_implicit_variables();  // j, q1, q2, pi1, pi2, u, v
  const auto t = sec4_transition().t[0];

  std::vector<Monitor> mon;
  for (const auto& v : vars) mon.push_back(phase_monitor(v));
  mon.push_back({"j_sheet", [l](double, std::span<const double> y) {
                   const auto pt = PhasePoint::from_flat(y);
                   return l[0].value(pt) * l[2].value(pt);
                 }});
  mon.push_back(phase_monitor(t));
  const auto full = integrate_geodesic(h, opts.start, opts.integration, mon);

  const double u0 = l[0].value(opts.start);
  require_nonzero(u0, "u = L1 at the initial point");
  const double v0 = -l[1].value(opts.start) / u0;
  const double js = u0 * l[2].value(opts.start);
  // tau is conjugate to j = K = -j_sheet, so dtau/dt = -dH~/dj_sheet
  const VectorField f = [c, js](std::span<const double> y) {
    const auto g = sec4_reduced_gradient(y[0], y[1], js, c);
    return std::vector<double>{g[1], -g[0], -g[2]};
  };
  std::vector<Monitor> rmon{{"H_reduced", [c, js](double, std::span<const double> y) {
                               return sec4_reduced_hamiltonian(y[0], y[1], js, c);
                             }}};
  const auto red = integrate(f, {u0, v0, 0.0}, opts.integration, rmon);

  std::vector<double> ur, vr, tau, dt;
  for (const auto& s : red.states) {
    ur.push_back(s[0]);
    vr.push_back(s[1]);
    tau.push_back(s[2]);
  }
  const auto& tm = full.monitor("T");
  for (double v : tm) dt.push_back(v - tm.front());

  ReducedFlowReport rep;
  rep.example = "sec4";
  rep.rows.push_back(comparison("j = L1 L3 drift (full)", full.max_abs_drift("j_sheet"), 1e-6));
  rep.rows.push_back(comparison("j = K(X) drift (full)", full.max_abs_drift("j"), 1e-6));
  double qpi = 0.0;
  for (const char* n : {"q1", "q2", "pi1", "pi2"}) qpi = std::max(qpi, full.max_abs_drift(n));
  rep.rows.push_back(comparison("q, pi drift (full)", qpi, 1e-6));
  rep.rows.push_back(comparison("H drift (full)", full.max_abs_drift("H"), 1e-8));
  rep.rows.push_back(comparison("H~ drift (reduced)", red.max_abs_drift("H_reduced"), 1e-8));
  rep.rows.push_back(comparison("u full vs reduced", max_abs_diff(full.monitor("u"), ur), 1e-6));
  rep.rows.push_back(comparison("v full vs reduced", max_abs_diff(full.monitor("v"), vr), 1e-6));
  rep.rows.push_back(comparison("T(x,p) - T0 vs tau", max_abs_diff(dt, tau), 1e-6));

  rep.csv_header = {"t", "u_full", "v_full", "u_reduced", "v_reduced", "j", "H", "H_reduced", "tau", "T_minus_T0"};
  for (std::size_t i = 0; i < full.times.size(); ++i) {
    rep.csv_rows.push_back({full.times[i], full.monitor("u")[i], full.monitor("v")[i], ur[i], vr[i],
                            full.monitor("j_sheet")[i], full.monitor("H")[i], red.monitor("H_reduced")[i], tau[i], dt[i]});
  }
  return rep;
}

ReducedFlowReport sec5_reduced_flow_check(const Sec5FlowOptions& opts) {
  const double alpha = opts.alpha;
  const auto fields = sec5_fields(alpha);
  const MetricForm metric = [&] {
    if (opts.metric.empty()) return figure1_metric();
    if (opts.metric.size() != 25) throw std::invalid_argument("metric must have 25 entries");
    ScalarMatrix m(5, 5, ScalarMode::floating);
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = 0; b < 5; ++b) m(a, b) = Scalar::floating(opts.metric[a * 5 + b]);
    return MetricForm(std::move(m));
  }();
  const auto g = metric.to_doubles();
  const auto h = central_hamiltonian_function(fields, metric);
  const auto tf = sec5_transition(alpha);

  std::vector<Monitor> mon;
  for (const auto& f : tf.j) {
    if (f.name != "j3") mon.push_back(phase_monitor(f));
  }
  CasimirTracker tracker(alpha);
  mon.push_back({"j3", [fields, tracker](double, std::span<const double> y) mutable {
                   return tracker.k3_unwrapped(moment_map(fields, PhasePoint::from_flat(y)));
                 }});
  AngleLifter lifter;
  mon.push_back({"q", [lifter](double, std::span<const double> y) mutable {
                   return lifter.lift(std::atan2(y[5], y[6]));
                 }});
  mon.push_back(phase_monitor(tf.others[1]));  // pi
  for (const auto& f : tf.t) mon.push_back(phase_monitor(f));
  const auto full = integrate_geodesic(h, opts.start, opts.integration, mon);

  const auto p0 = moment_map(fields, opts.start);
  const auto pc = to_polar(p0, alpha);
  const std::vector<double> j{pc.gamma, pc.rho / alpha, pc.psi - alpha * pc.phi};
  const auto chart = sec5_orbit_chart(alpha);
  const VectorField f = [chart, j, g](std::span<const double> y) {
    const ChartPoint pt{{y[0]}, {y[1]}, j};
    const auto p = chart.covector(pt);
    const auto d = chart.derivatives(pt);
    std::vector<double> dy(5, 0.0);
    for (std::size_t a = 0; a < 5; ++a) {
      double gp = 0.0;
      for (std::size_t b = 0; b < 5; ++b) gp += g[a * 5 + b] * p[b];
      dy[0] += gp * d.dpi[a][0];
      dy[1] -= gp * d.dq[a][0];
      for (std::size_t k = 0; k < 3; ++k) dy[2 + k] += gp * d.dj[a][k];
    }
    return dy;
  };
  std::vector<Monitor> rmon{{"H_reduced", [j, g, alpha](double, std::span<const double> y) {
                               return sec5_reduced_hamiltonian(y[0], y[1], j, g, alpha);
                             }}};
  const auto red = integrate(f, {pc.phi, p0[0], 0.0, 0.0, 0.0}, opts.integration, rmon);

  std::vector<double> qr, pr;
  std::vector<std::vector<double>> tau(3), dt(3);
  for (const auto& s : red.states) {
    qr.push_back(s[0]);
    pr.push_back(s[1]);
    for (std::size_t k = 0; k < 3; ++k) tau[k].push_back(s[2 + k]);
  }
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& tm = full.monitor(tf.t[k].name);
    for (double v : tm) dt[k].push_back(v - tm.front());
  }

  ReducedFlowReport rep;
  rep.example = "sec5";
  for (const char* n : {"j1", "j2", "j3"}) rep.rows.push_back(comparison(std::string(n) + " drift (full)", full.max_abs_drift(n), 1e-6));
  rep.rows.push_back(comparison("H drift (full)", full.max_abs_drift("H"), 1e-8));
  rep.rows.push_back(comparison("H~ drift (reduced)", red.max_abs_drift("H_reduced"), 1e-8));
  rep.rows.push_back(comparison("q full vs reduced", max_abs_diff(full.monitor("q"), qr), 1e-6));
  rep.rows.push_back(comparison("pi full vs reduced", max_abs_diff(full.monitor("pi"), pr), 1e-6));
  for (std::size_t k = 0; k < 3; ++k) {
    rep.rows.push_back(comparison(tf.t[k].name + "(x,p) - T0 vs tau" + std::to_string(k + 1), max_abs_diff(dt[k], tau[k]), 1e-6));
  }

  rep.csv_header = {"t", "q_full", "pi_full", "q_reduced", "pi_reduced", "j1", "j2", "j3", "H", "H_reduced",
                    "tau1", "tau2", "tau3", "T1_minus_T0", "T2_minus_T0", "T3_minus_T0"};
  for (std::size_t i = 0; i < full.times.size(); ++i) {
    rep.csv_rows.push_back({full.times[i], full.monitor("q")[i], full.monitor("pi")[i], qr[i], pr[i],
                            full.monitor("j1")[i], full.monitor("j2")[i], full.monitor("j3")[i], full.monitor("H")[i],
                            red.monitor("H_reduced")[i], tau[0][i], tau[1][i], tau[2][i], dt[0][i], dt[1][i], dt[2][i]});
  }
  return rep;
}

TriangularCheck triangular_check(const LieAlgebra& alg, const PolyVectorField& fields, const MetricForm& g,
                                 const PhasePoint& start, double t_end, double h, double tol) {
  const QuadraticHamiltonian qh(g);
  const auto hf = central_hamiltonian_function(fields, g);
  const auto tr = integrate_geodesic(hf, start, {h, t_end, StepMethod::rk4, 1});
  std::vector<std::vector<double>> p;
  for (const auto& s : tr.states) p.push_back(moment_map(fields, PhasePoint::from_flat(s)));
  TriangularCheck r;
  r.tolerance = tol;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const auto rhs = lie_poisson_rhs(alg, qh, p[i]);
    for (std::size_t a = 0; a < rhs.size(); ++a) {
      const double dp = (p[i + 1][a] - p[i - 1][a]) / (2.0 * h);
      r.max_residual = std::max(r.max_residual, std::abs(dp - rhs[a]));
    }
    ++r.samples;
  }
  r.passed = r.max_residual < tol;
  return r;
}

// --- battery ------------------------------------------------------------------

bool TransformBattery::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const BatteryRow& r) { return !r.is_check || r.passed; });
}

namespace {

BatteryRow row(const IdentityCheck& c, bool is_check = true) {
  std::string detail = c.detail;
  if (c.samples && !c.exact) detail = std::to_string(c.samples) + " points" + (detail.empty() ? "" : "; " + detail);
  return {c.name, is_check, c.max_error, c.tolerance, c.passed, detail};
}

void table_rows(std::vector<BatteryRow>& rows, const BracketTable& tab, const std::vector<std::string>& t_names,
                bool is_check, const std::string& label) {
  for (const auto& t : t_names) {
    BatteryRow r{label + " {" + t + ", .} table", is_check, 0.0, tab.tolerance, true, {}};
    for (const auto& e : tab.entries) {
      if (e.t != t) continue;
      r.max_error = std::max(r.max_error, e.max_error);
      if (e.max_error >= tab.tolerance) r.detail += std::string(r.detail.empty() ? "" : "; ") + "{" + e.t + "," + e.y + "} off by " + fmt(e.max_error);
    }
    r.passed = r.max_error < tab.tolerance;
    if (r.detail.empty()) r.detail = std::to_string(tab.samples) + " points";
    rows.push_back(std::move(r));
  }
}

BatteryRow dimension_row(const OrbitChart& chart, const SubalgebraSpec& h, std::uint64_t seed) {
  SamplingOptions so;
  so.seed = seed;
  const auto rep = classify(h, so);
  const std::size_t expected = (rep.dim_g - rep.ind_g) / 2 - rep.s_m;
  BatteryRow r{chart.name + " chart dim_q = (n - ind g)/2 - s_M", true, 0.0, 0.0, chart.dim_q == expected, {}};
  r.detail = "dim_q=" + std::to_string(chart.dim_q) + " expected=" + std::to_string(expected);
  return r;
}

}  // namespace

TransformBattery run_transform_battery(const std::string& example, double alpha, std::uint64_t seed,
                                       std::size_t samples) {
  TransformBattery b;
  b.example = example;
  auto& rows = b.rows;
  if (example == "sec4") {
    const auto rc = realization_check(sec4_fields(), sec4_algebra());
    rows.push_back({"sec4 realization {X_A,X_B} = C X (exact)", true, rc.max_residual, 0.0, rc.ok(),
                    std::to_string(rc.pairs_checked) + " pairs"});
    rows.push_back(row(sec4_invariants_commute(samples, seed)));
    rows.push_back(row(sec4_f_algebra(false, samples, seed)));
    rows.push_back(row(sec4_f_algebra(true, samples, seed), false));
    rows.push_back(row(sec4_compatibility(false, samples, seed)));
    rows.push_back(row(sec4_compatibility(true, samples, seed), false));
    const auto chart = sec4_orbit_chart();
    rows.push_back(row(sec4_casimir_symbolic()));
    rows.push_back(row(sec4_intertwining_symbolic()));
    rows.push_back(row(chart_intertwining(chart, sec4_algebra(), samples, seed)));
    rows.push_back(row(chart_casimirs(chart, samples, seed)));
    rows.push_back(row(chart_kappa_nondegenerate(chart, samples, seed)));
    rows.push_back(row(sheet_casimir_symbolic(sec4_sheet_chart())));
    rows.push_back(row(sheet_brackets_symbolic(sec4_sheet_chart())));
    rows.push_back(row(sheet_brackets_symbolic(sec4_sheet_chart_printed()), false));
    table_rows(rows, transition_bracket_table(sec4_transition(false), samples, seed), {"T"}, true, "sec4");
    table_rows(rows, transition_bracket_table(sec4_transition(true), samples, seed), {"T_printed"}, false, "sec4");
    rows.push_back(row(sec4_reduced_consistency({1.0, 0.5, 0.25, 1.0}, samples, seed)));
    rows.push_back(dimension_row(chart, sec4_subalgebra(), seed));
  } else if (example == "sec5") {
    const auto alg = sec5_algebra(alpha);
    const auto fields = sec5_fields(alpha);
    const auto rc = realization_check(fields, alg);
    rows.push_back({"sec5 realization {X_A,X_B} = C X (coefficients)", true, rc.max_residual, 1e-12, rc.ok(),
                    std::to_string(rc.pairs_checked) + " pairs"});
    const auto chart = sec5_orbit_chart(alpha);
    rows.push_back(row(chart_casimirs(chart, samples, seed)));
    rows.push_back(row(chart_intertwining(chart, alg, samples, seed)));
    rows.push_back(row(chart_kappa_nondegenerate(chart, samples, seed)));
    table_rows(rows, transition_bracket_table(sec5_transition(alpha, false), samples, seed), {"T1", "T2", "T3"}, true,
               "sec5");
    table_rows(rows, transition_bracket_table(sec5_transition(alpha, true), samples, seed), {"T3_printed"}, false,
               "sec5");
    rows.push_back(row(sec5_reduced_consistency(alpha, 20, samples, seed)));
    rows.push_back(row(sec5_reduced_consistency(alpha, 20, samples, seed, 1e-9, ABForm::printed_a, true)));
    rows.push_back(row(sec5_reduced_consistency(alpha, 20, samples, seed, 1e-9, ABForm::printed_a), false));
    rows.push_back(row(sec5_reduced_consistency(alpha, 20, samples, seed, 1e-9, ABForm::printed), false));
    for (const auto& d : sec5_ab_discrepancies(alpha, samples, seed)) {
      if (!d.matches) rows.push_back({"sec5 printed term " + d.entry, false, d.max_error, 1e-9, false, "differs from chart"});
    }
    const PhasePoint start{{0.1, 0.2, 0.3, 0.4}, {0.5, 0.6, 0.7, 0.8}};
    const auto tri = triangular_check(alg, fields, figure1_metric(), start);
    rows.push_back({"sec5 moment values obey the Lie-Poisson equation", true, tri.max_residual, tri.tolerance,
                    tri.passed, std::to_string(tri.samples) + " points, step 1e-4"});
    rows.push_back(dimension_row(chart, sec5_subalgebra(alpha), seed));
  } else {
    throw std::invalid_argument("unknown example '" + example + "' (expected sec4 or sec5)");
  }
  return b;
}

}  // namespace homflow
