#include "homflow/realization.hpp"

#include <cmath>
#include <stdexcept>

namespace homflow {

bool PhasePoint::finite() const {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  for (double v : p)
    if (!std::isfinite(v)) return false;
  return true;
}

std::vector<double> PhasePoint::flat() const {
  std::vector<double> y(x);
  y.insert(y.end(), p.begin(), p.end());
  return y;
}

PhasePoint PhasePoint::from_flat(std::span<const double> y) {
  const std::size_t m = y.size() / 2;
  return {std::vector<double>(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(m)),
          std::vector<double>(y.begin() + static_cast<std::ptrdiff_t>(m), y.end())};
}

PhaseFunction phase_function(std::string name, const Polynomial& f) {
  const std::size_t m = f.nvars() / 2;
  std::vector<Polynomial> dx, dp;
  for (std::size_t a = 0; a < m; ++a) {
    dx.push_back(f.derivative(a));
    dp.push_back(f.derivative(m + a));
  }
  PhaseFunction out;
  out.name = std::move(name);
  out.value = [f](const PhasePoint& pt) { return f.evaluate(pt.flat()); };
  out.gradient = [dx, dp](const PhasePoint& pt) {
    const auto y = pt.flat();
    PhaseGradient g;
    for (const auto& d : dx) g.dx.push_back(d.evaluate(y));
    for (const auto& d : dp) g.dp.push_back(d.evaluate(y));
    return g;
  };
  return out;
}

Polynomial canonical_bracket(const Polynomial& f, const Polynomial& g) {
  if (f.nvars() != g.nvars() || f.nvars() % 2 != 0) throw std::invalid_argument("canonical bracket needs (x, p) polynomials");
  const std::size_t m = f.nvars() / 2;
  Polynomial out(f.nvars());
  for (std::size_t a = 0; a < m; ++a) {
    out += f.derivative(m + a) * g.derivative(a);
    out -= f.derivative(a) * g.derivative(m + a);
  }
  return out;
}

Polynomial canonical_bracket(const Polynomial& f, const Polynomial& g, std::span<const std::size_t> coords,
                             std::span<const std::size_t> momenta) {
  if (coords.size() != momenta.size()) throw std::invalid_argument("coordinate/momentum lists differ in length");
  Polynomial out(f.nvars());
  for (std::size_t a = 0; a < coords.size(); ++a) {
    out += f.derivative(momenta[a]) * g.derivative(coords[a]);
    out -= f.derivative(coords[a]) * g.derivative(momenta[a]);
  }
  return out;
}

double canonical_bracket(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& pt) {
  const auto gf = f.gradient(pt);
  const auto gg = g.gradient(pt);
  double s = 0.0;
  for (std::size_t a = 0; a < pt.dim(); ++a) s += gf.dp[a] * gg.dx[a] - gf.dx[a] * gg.dp[a];
  return s;
}

PolyVectorField::PolyVectorField(std::size_t coords, std::vector<std::vector<Polynomial>> components, std::string name)
    : coords_(coords), components_(std::move(components)), name_(std::move(name)) {
  for (const auto& gen : components_) {
    if (gen.size() != coords_) throw std::invalid_argument("each generator needs one component per coordinate");
    for (const auto& c : gen)
      if (c.nvars() != coords_) throw std::invalid_argument("component polynomial must be in x_1..x_m");
  }
  for (const auto& gen : components_) {
    Polynomial lifted(2 * coords_);
    for (std::size_t a = 0; a < coords_; ++a) {
      for (const auto& [e, c] : gen[a].terms()) {
        Exponents ext(2 * coords_, 0);
        for (std::size_t i = 0; i < coords_; ++i) ext[i] = e[i];
        ext[coords_ + a] = 1;
        lifted.add_term(ext, c);
      }
    }
    lifted_.push_back(std::move(lifted));
  }
}

PolyVectorField PolyVectorField::to_floating() const {
  std::vector<std::vector<Polynomial>> comps;
  for (const auto& gen : components_) {
    std::vector<Polynomial> row;
    for (const auto& c : gen) {
      Polynomial f(c.nvars());
      for (const auto& [e, v] : c.terms()) f.add_term(e, Scalar::floating(v.to_double()));
      row.push_back(std::move(f));
    }
    comps.push_back(std::move(row));
  }
  return PolyVectorField(coords_, std::move(comps), name_);
}

RealizationCheck realization_check(const PolyVectorField& fields, const LieAlgebra& alg, double float_tol) {
  if (fields.generators() != alg.dim()) throw std::invalid_argument("realization has the wrong number of generators");
  const std::size_t n = alg.dim();
  const std::size_t nv = 2 * fields.coords();
  std::vector<std::string> names;
  for (std::size_t a = 0; a < fields.coords(); ++a) names.push_back("x" + std::to_string(a + 1));
  for (std::size_t a = 0; a < fields.coords(); ++a) names.push_back("p" + std::to_string(a + 1));

  RealizationCheck out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Polynomial diff = canonical_bracket(fields.momentum_function(a), fields.momentum_function(b));
      Polynomial rhs(nv);
      for (std::size_t c = 0; c < n; ++c)
        if (!alg.constant(a, b, c).is_zero()) rhs += fields.momentum_function(c) * alg.constant(a, b, c);
      diff -= rhs;
      ++out.pairs_checked;
      const double res = diff.max_abs_coefficient();
      out.max_residual = std::max(out.max_residual, res);
      const bool bad = alg.is_exact() ? !diff.terms().empty() : res >= float_tol;
      if (bad) out.failures.push_back({a + 1, b + 1, res, diff.to_string(names)});
    }
  return out;
}

std::vector<double> moment_map(const PolyVectorField& fields, const PhasePoint& pt) {
  const auto y = pt.flat();
  std::vector<double> p(fields.generators());
  for (std::size_t a = 0; a < fields.generators(); ++a) p[a] = fields.momentum_function(a).evaluate(y);
  return p;
}

Covector moment_map(const PolyVectorField& fields, const ScalarVector& x, const ScalarVector& p) {
  ScalarVector y(x);
  y.insert(y.end(), p.begin(), p.end());
  Covector out;
  for (std::size_t a = 0; a < fields.generators(); ++a) out.push_back(fields.momentum_function(a).evaluate(y));
  return out;
}

double central_hamiltonian(const PolyVectorField& fields, const MetricForm& g, const PhasePoint& pt) {
  const auto pm = moment_map(fields, pt);
  const auto gd = g.to_doubles();
  const std::size_t n = pm.size();
  double h = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) h += gd[a * n + b] * pm[a] * pm[b];
  return 0.5 * h;
}

PhaseFunction central_hamiltonian_function(const PolyVectorField& fields, const MetricForm& g) {
  const std::size_t n = fields.generators();
  const std::size_t m = fields.coords();
  if (g.dim() != n) throw std::invalid_argument("metric dimension differs from generator count");
  std::vector<PhaseFunction> xs;
  for (std::size_t a = 0; a < n; ++a) xs.push_back(phase_function("X" + std::to_string(a + 1), fields.momentum_function(a)));
  const auto gd = g.to_doubles();
  PhaseFunction h;
  h.name = "H";
  h.value = [xs, gd, n](const PhasePoint& pt) {
    std::vector<double> pm(n);
    for (std::size_t a = 0; a < n; ++a) pm[a] = xs[a].value(pt);
    double s = 0.0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) s += gd[a * n + b] * pm[a] * pm[b];
    return 0.5 * s;
  };
  h.gradient = [xs, gd, n, m](const PhasePoint& pt) {
    std::vector<double> pm(n), gp(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) pm[a] = xs[a].value(pt);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) gp[a] += gd[a * n + b] * pm[b];
    PhaseGradient out{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
    for (std::size_t a = 0; a < n; ++a) {
      if (gp[a] == 0.0) continue;
      const auto gx = xs[a].gradient(pt);
      for (std::size_t i = 0; i < m; ++i) {
        out.dx[i] += gp[a] * gx.dx[i];
        out.dp[i] += gp[a] * gx.dp[i];
      }
    }
    return out;
  };
  return h;
}

double invariant_hamiltonian(const InvariantFunctionSet& l, const std::array<double, 4>& c, const PhasePoint& pt) {
  if (l.size() != 3) throw std::invalid_argument("invariant Hamiltonian expects three invariants");
  const double l1 = l[0].value(pt), l2 = l[1].value(pt), l3 = l[2].value(pt);
  return 0.5 * (c[0] * l1 * l1 + c[1] * l2 * l2 + c[2] * l1 * l2 + c[3] * l3);
}

PhaseFunction invariant_hamiltonian_function(const InvariantFunctionSet& l, const std::array<double, 4>& c) {
  if (l.size() != 3) throw std::invalid_argument("invariant Hamiltonian expects three invariants");
  PhaseFunction h;
  h.name = "H";
  h.value = [l, c](const PhasePoint& pt) { return invariant_hamiltonian(l, c, pt); };
  h.gradient = [l, c](const PhasePoint& pt) {
    const double l1 = l[0].value(pt), l2 = l[1].value(pt);
    const double w1 = 0.5 * (2.0 * c[0] * l1 + c[2] * l2);
    const double w2 = 0.5 * (2.0 * c[1] * l2 + c[2] * l1);
    const double w3 = 0.5 * c[3];
    const auto g1 = l[0].gradient(pt), g2 = l[1].gradient(pt), g3 = l[2].gradient(pt);
    PhaseGradient out{std::vector<double>(pt.dim()), std::vector<double>(pt.dim())};
    for (std::size_t i = 0; i < pt.dim(); ++i) {
      out.dx[i] = w1 * g1.dx[i] + w2 * g2.dx[i] + w3 * g3.dx[i];
      out.dp[i] = w1 * g1.dp[i] + w2 * g2.dp[i] + w3 * g3.dp[i];
    }
    return out;
  };
  return h;
}

}  // namespace homflow
