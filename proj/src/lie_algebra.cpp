#include "homflow/lie_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace homflow {

LieAlgebra::LieAlgebra(std::size_t dim, ScalarMode mode, const std::vector<BracketEntry>& entries, std::string name)
    : dim_(dim), mode_(mode), name_(std::move(name)) {
  if (dim == 0) throw std::invalid_argument("Lie algebra dimension must be positive");
  dense_.assign(dim * dim * dim, Scalar::zero(mode));
  std::vector<bool> assigned(dim * dim * dim, false);
  auto at = [dim](std::size_t a, std::size_t b, std::size_t c) { return (a * dim + b) * dim + c; };

  for (const auto& e : entries) {
    if (e.a >= dim || e.b >= dim || e.c >= dim) throw std::out_of_range("bracket index out of range");
    if (e.value.mode() != mode) throw ModeMismatch("bracket value mode differs from algebra mode");
    if (e.a == e.b) {
      if (!e.value.is_zero())
        conflicts_.push_back({e.a, e.b, e.c, "[e_a, e_a] must vanish but was given " + e.value.to_string()});
      continue;
    }
    const std::size_t lo = std::min(e.a, e.b), hi = std::max(e.a, e.b);
    const Scalar v = e.a < e.b ? e.value : -e.value;
    const std::size_t idx = at(lo, hi, e.c);
    if (assigned[idx]) {
      if (!(dense_[idx] == v))
        conflicts_.push_back({e.a, e.b, e.c,
                              "inconsistent duplicate: C_ab^c implied " + dense_[idx].to_string() + " and " + v.to_string()});
      continue;
    }
    assigned[idx] = true;
    dense_[idx] = v;
    dense_[at(hi, lo, e.c)] = -v;
  }
  dense_double_.resize(dense_.size());
  for (std::size_t i = 0; i < dense_.size(); ++i) dense_double_[i] = dense_[i].to_double();
}

std::vector<BracketEntry> LieAlgebra::nonzero_brackets() const {
  std::vector<BracketEntry> out;
  for (std::size_t a = 0; a < dim_; ++a)
    for (std::size_t b = a + 1; b < dim_; ++b)
      for (std::size_t c = 0; c < dim_; ++c)
        if (!constant(a, b, c).is_zero()) out.push_back({a, b, c, constant(a, b, c)});
  return out;
}

ScalarVector LieAlgebra::bracket(const ScalarVector& x, const ScalarVector& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("bracket operands have wrong length");
  ScalarVector out(dim_, Scalar::zero(mode_));
  for (std::size_t a = 0; a < dim_; ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < dim_; ++b) {
      if (y[b].is_zero()) continue;
      const Scalar xy = x[a] * y[b];
      for (std::size_t c = 0; c < dim_; ++c)
        if (!constant(a, b, c).is_zero()) out[c] += xy * constant(a, b, c);
    }
  }
  return out;
}

AlgebraValidation validate_algebra(const LieAlgebra& alg) {
  AlgebraValidation report;
  report.antisymmetry = alg.antisymmetry_conflicts();
  const std::size_t n = alg.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (!(alg.constant(a, b, c) + alg.constant(b, a, c)).is_zero())
          report.antisymmetry.push_back({a, b, c, "C_ab^c + C_ba^c != 0"});

  double scale = 1.0;
  for (double v : alg.constants_double()) scale = std::max(scale, std::abs(v));
  const double float_tol = kDefaultFloatTolerance * scale * scale * static_cast<double>(n);
  if (!alg.is_exact()) report.tolerance = float_tol;

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t e = 0; e < n; ++e) {
          Scalar s = Scalar::zero(alg.mode());
          for (std::size_t d = 0; d < n; ++d) {
            s += alg.constant(a, b, d) * alg.constant(d, c, e);
            s += alg.constant(b, c, d) * alg.constant(d, a, e);
            s += alg.constant(c, a, d) * alg.constant(d, b, e);
          }
          const bool bad = alg.is_exact() ? !s.is_zero() : std::abs(s.to_double()) > float_tol;
          if (bad) report.jacobi.push_back({{a + 1, b + 1, c + 1, e + 1}, s.to_double()});
        }
  return report;
}

ScalarMatrix coadjoint_pairing_matrix(const LieAlgebra& alg, const Covector& lambda) {
  const std::size_t n = alg.dim();
  if (lambda.size() != n) throw std::invalid_argument("covector length differs from algebra dimension");
  ScalarMatrix b(n, n, alg.mode());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Scalar s = Scalar::zero(alg.mode());
      for (std::size_t c = 0; c < n; ++c)
        if (!alg.constant(i, j, c).is_zero()) s += alg.constant(i, j, c) * lambda[c];
      b(i, j) = s;
      b(j, i) = -s;
    }
  return b;
}

std::vector<ScalarVector> annihilator(const LieAlgebra& alg, const Covector& lambda, double rank_tol) {
  return kernel(coadjoint_pairing_matrix(alg, lambda), rank_tol);
}

Covector random_rational_vector(std::size_t n, std::mt19937_64& rng, long bound, ScalarMode mode) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  Covector v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Scalar q = Scalar::exact(num(rng), den(rng));
    v.push_back(mode == ScalarMode::exact ? q : Scalar::floating(q.to_double()));
  }
  return v;
}

std::size_t algebra_index(const LieAlgebra& alg, const SamplingOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::size_t max_rank = 0;
  for (std::size_t s = 0; s < std::max<std::size_t>(opts.samples, 1); ++s) {
    const auto lambda = random_rational_vector(alg.dim(), rng, opts.bound, alg.mode());
    max_rank = std::max(max_rank, rank(coadjoint_pairing_matrix(alg, lambda), opts.rank_tol));
  }
  return alg.dim() - max_rank;
}

std::vector<double> CoalgebraFunction::grad(std::span<const double> p) const {
  if (gradient) return gradient(p);
  std::vector<double> g(p.size());
  std::vector<double> x(p.begin(), p.end());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double orig = x[i];
    x[i] = orig + fd_step;
    const double fp = value(x);
    x[i] = orig - fd_step;
    const double fm = value(x);
    x[i] = orig;
    g[i] = (fp - fm) / (2.0 * fd_step);
  }
  return g;
}

CoalgebraFunction coordinate_function(std::size_t n, std::size_t a) {
  CoalgebraFunction f;
  f.value = [a](std::span<const double> p) { return p[a]; };
  f.gradient = [n, a](std::span<const double>) {
    std::vector<double> g(n, 0.0);
    g[a] = 1.0;
    return g;
  };
  return f;
}

double lie_poisson_bracket(const LieAlgebra& alg, const CoalgebraFunction& phi, const CoalgebraFunction& psi,
                           std::span<const double> p) {
  const std::size_t n = alg.dim();
  if (p.size() != n) throw std::invalid_argument("point length differs from algebra dimension");
  const auto gphi = phi.grad(p);
  const auto gpsi = psi.grad(p);
  const auto& c = alg.constants_double();
  double s = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const double w = gphi[a] * gpsi[b];
      if (w == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) s += c[(a * n + b) * n + k] * p[k] * w;
    }
  return s;
}

Polynomial lie_poisson_bracket(const LieAlgebra& alg, const Polynomial& phi, const Polynomial& psi) {
  const std::size_t n = alg.dim();
  if (phi.nvars() != n || psi.nvars() != n) throw std::invalid_argument("polynomials must be in P_1..P_n");
  Polynomial out(n);
  for (std::size_t a = 0; a < n; ++a) {
    const Polynomial da = phi.derivative(a);
    if (da.is_zero()) continue;
    for (std::size_t b = 0; b < n; ++b) {
      const Polynomial db = psi.derivative(b);
      if (db.is_zero()) continue;
      Polynomial lin(n);
      for (std::size_t c = 0; c < n; ++c)
        if (!alg.constant(a, b, c).is_zero())
          lin += Polynomial::variable(n, c, alg.mode()) * alg.constant(a, b, c);
      out += lin * da * db;
    }
  }
  return out;
}

Scalar lie_poisson_bracket(const LieAlgebra& alg, const Polynomial& phi, const Polynomial& psi, const Covector& p) {
  return lie_poisson_bracket(alg, phi, psi).evaluate(p);
}

LieAlgebra change_basis(const LieAlgebra& alg, const ScalarMatrix& t) {
  const std::size_t n = alg.dim();
  if (t.rows() != n || t.cols() != n) throw std::invalid_argument("basis change must be n x n");
  if (rank(t) != n) throw std::invalid_argument("basis change is singular");
  // [f_i, f_j] = sum T_ia T_jb C_ab^c e_c, then express e_c in the f basis via T^{-T}.
  // Solve coordinates by inverting T over the appropriate field.
  std::vector<ScalarVector> images(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) images[i * n + j] = alg.bracket(t.row(i), t.row(j));

  // Rows of T are the new basis vectors; find y with y^T T = v, i.e. T^T y = v.
  ScalarMatrix tt = t.transposed();
  std::vector<BracketEntry> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const ScalarVector& v = images[i * n + j];
      // Augmented system [T^T | v], solved through the kernel of [T^T | -v].
      ScalarMatrix aug(n, n + 1, alg.mode());
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = tt(r, c);
        aug(r, n) = -v[r];
      }
      auto ker = kernel(aug);
      if (ker.size() != 1) throw std::runtime_error("basis change solve failed");
      const Scalar last = ker[0][n];
      for (std::size_t c = 0; c < n; ++c) {
        Scalar coeff = ker[0][c] / last;
        if (!coeff.is_zero()) entries.push_back({i, j, c, coeff});
      }
    }
  return LieAlgebra(n, alg.mode(), entries, alg.name());
}

}  // namespace homflow
