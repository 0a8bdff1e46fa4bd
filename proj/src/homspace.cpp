#include "homflow/homspace.hpp"

#include <cmath>
#include <random>

namespace homflow {

SubalgebraSpec::SubalgebraSpec(LieAlgebra parent, std::vector<ScalarVector> basis)
    : parent_(std::move(parent)), basis_(std::move(basis)) {
  const std::size_t n = parent_.dim();
  for (const auto& v : basis_) {
    if (v.size() != n) throw std::invalid_argument("subalgebra vector length differs from algebra dimension");
    if (common_mode(v) != parent_.mode()) throw ModeMismatch("subalgebra vector mode differs from algebra mode");
  }
  if (rank_of_rows(basis_, n, parent_.mode()) != basis_.size())
    throw std::invalid_argument("subalgebra basis is linearly dependent");
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = i + 1; j < basis_.size(); ++j) {
      auto rows = basis_;
      rows.push_back(parent_.bracket(basis_[i], basis_[j]));
      if (rank_of_rows(rows, n, parent_.mode()) != basis_.size())
        throw std::invalid_argument("subalgebra is not closed under the bracket (pair " + std::to_string(i + 1) +
                                    "," + std::to_string(j + 1) + ")");
    }
}

MetricForm::MetricForm(ScalarMatrix g) : g_(std::move(g)) {
  if (g_.rows() != g_.cols()) throw std::invalid_argument("metric form must be square");
  for (std::size_t i = 0; i < g_.rows(); ++i)
    for (std::size_t j = i + 1; j < g_.cols(); ++j)
      if (!(g_(i, j) == g_(j, i))) throw std::invalid_argument("metric form must be symmetric");
}

MetricForm MetricForm::identity(std::size_t n, ScalarMode mode) {
  ScalarMatrix g(n, n, mode);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = Scalar::one(mode);
  return MetricForm(std::move(g));
}

std::vector<Covector> hperp_basis(const SubalgebraSpec& h) {
  const auto& alg = h.parent();
  return kernel(ScalarMatrix::from_rows(h.basis(), alg.dim(), alg.mode()));
}

std::size_t intersection_dim(const SubalgebraSpec& h, const Covector& lambda, double rank_tol) {
  const auto& alg = h.parent();
  const auto ann = annihilator(alg, lambda, rank_tol);
  if (h.dim() == 0 || ann.empty()) return 0;
  auto rows = h.basis();
  rows.insert(rows.end(), ann.begin(), ann.end());
  const std::size_t r = rank_of_rows(rows, alg.dim(), alg.mode(), rank_tol);
  return h.dim() + ann.size() - r;
}

GenericCovector generic_hperp_covector(const SubalgebraSpec& h, const SamplingOptions& opts) {
  const auto& alg = h.parent();
  const auto basis = hperp_basis(h);
  std::mt19937_64 rng(opts.seed);
  GenericCovector best;
  bool have = false;
  for (std::size_t s = 0; s < std::max<std::size_t>(opts.samples, 1); ++s) {
    const auto coeffs = random_rational_vector(basis.size(), rng, opts.bound, alg.mode());
    Covector lambda(alg.dim(), Scalar::zero(alg.mode()));
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (std::size_t a = 0; a < alg.dim(); ++a) lambda[a] += coeffs[k] * basis[k][a];

    GenericCovector cand;
    cand.rank_b = rank(coadjoint_pairing_matrix(alg, lambda), opts.rank_tol);
    cand.dim_annihilator = alg.dim() - cand.rank_b;
    cand.dim_h_lambda = intersection_dim(h, lambda, opts.rank_tol);
    cand.lambda = std::move(lambda);
    if (!have || cand.rank_b > best.rank_b ||
        (cand.rank_b == best.rank_b && cand.dim_h_lambda < best.dim_h_lambda)) {
      best = std::move(cand);
      have = true;
    }
  }
  return best;
}

std::size_t degeneracy_degree(const SubalgebraSpec& h, std::size_t ind_g, const SamplingOptions& opts) {
  const auto g = generic_hperp_covector(h, opts);
  if (g.dim_annihilator < ind_g)
    throw GenericityError("dim g^lambda below ind g: index sampling was not generic");
  const std::size_t excess = g.dim_annihilator - ind_g;
  if (excess % 2 != 0)
    throw GenericityError("dim g^lambda - ind g is odd: non-generic lambda or rank tolerance failure");
  return excess / 2;
}

std::size_t space_index(const SubalgebraSpec& h, const SamplingOptions& opts) {
  return generic_hperp_covector(h, opts).dim_h_lambda;
}

SpaceInvariantsReport classify(const SubalgebraSpec& h, const SamplingOptions& opts) {
  const auto& alg = h.parent();
  SpaceInvariantsReport r;
  r.dim_g = alg.dim();
  r.dim_h = h.dim();
  r.dim_m = r.dim_g - r.dim_h;
  r.ind_g = algebra_index(alg, opts);

  const auto gen = generic_hperp_covector(h, opts);
  if (gen.dim_annihilator < r.ind_g) throw GenericityError("dim g^lambda below ind g: index sampling was not generic");
  if ((gen.dim_annihilator - r.ind_g) % 2 != 0)
    throw GenericityError("dim g^lambda - ind g is odd: non-generic lambda or rank tolerance failure");
  r.s_m = (gen.dim_annihilator - r.ind_g) / 2;
  r.i_m = gen.dim_h_lambda;
  r.lambda = gen.lambda;

  const long dim_f = static_cast<long>(r.i_m) + 2 * static_cast<long>(r.dim_m) - static_cast<long>(r.dim_g);
  const long ind_f = static_cast<long>(r.ind_g) + 2 * static_cast<long>(r.s_m) - static_cast<long>(r.i_m);
  if (dim_f < 0 || ind_f < 0 || dim_f < ind_f || (dim_f - ind_f) % 2 != 0)
    throw GenericityError("inconsistent F-algebra dimensions (dim F=" + std::to_string(dim_f) +
                          ", ind F=" + std::to_string(ind_f) + ")");
  r.dim_f = static_cast<std::size_t>(dim_f);
  r.ind_f = static_cast<std::size_t>(ind_f);
  r.defect = (r.dim_f - r.ind_f) / 2;

  // d(M) = (1/2) dim g/g^lambda - dim h/h^lambda
  const long half_orbit = static_cast<long>(r.dim_g - gen.dim_annihilator) / 2;
  const long cross = half_orbit - static_cast<long>(r.dim_h - r.i_m);
  if (cross < 0) throw GenericityError("negative defect from the quotient formula");
  r.defect_cross_check = static_cast<std::size_t>(cross);

  r.dim_orbit = r.dim_g - r.ind_g - 2 * r.s_m;
  r.commutative = r.defect == 0;
  r.thm1_integrable = r.defect < 2;
  r.thm2_integrable = (r.dim_g - r.ind_g) / 2 - r.s_m < 2;
  return r;
}

Covector coadjoint_action(const LieAlgebra& alg, const ScalarVector& x, const Covector& lambda) {
  const std::size_t n = alg.dim();
  Covector out(n, Scalar::zero(alg.mode()));
  for (std::size_t a = 0; a < n; ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (!alg.constant(a, b, c).is_zero()) out[b] -= x[a] * alg.constant(a, b, c) * lambda[c];
  }
  return out;
}

namespace {

Scalar quadratic_form(const ScalarMatrix& g, const Covector& l, const Covector& m) {
  Scalar s = Scalar::zero(g.mode());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (!g(i, j).is_zero()) s += l[i] * g(i, j) * m[j];
  return s;
}

}  // namespace

MetricAdmissibility metric_admissibility(const SubalgebraSpec& h, const MetricForm& g) {
  const auto& alg = h.parent();
  if (g.dim() != alg.dim()) throw std::invalid_argument("metric dimension differs from algebra dimension");
  if (g.matrix().mode() != alg.mode()) throw ModeMismatch("metric mode differs from algebra mode");
  const auto basis = hperp_basis(h);
  MetricAdmissibility out;

  ScalarMatrix restricted(basis.size(), basis.size(), alg.mode());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) restricted(i, j) = quadratic_form(g.matrix(), basis[i], basis[j]);
  out.restricted_rank = rank(restricted);
  out.rank_ok = out.restricted_rank == alg.dim() - h.dim();

  double scale = 1.0;
  for (double v : g.to_doubles()) scale = std::max(scale, std::abs(v));
  for (double v : alg.constants_double()) scale = std::max(scale, std::abs(v) * scale);
  if (!alg.is_exact()) out.tolerance = 1e-9 * scale;
  out.adh_invariant = true;
  for (const auto& x : h.basis()) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto adl = coadjoint_action(alg, x, basis[i]);
      for (std::size_t j = i; j < basis.size(); ++j) {
        const auto adm = coadjoint_action(alg, x, basis[j]);
        const Scalar v = quadratic_form(g.matrix(), adl, basis[j]) + quadratic_form(g.matrix(), basis[i], adm);
        out.max_invariance_residual = std::max(out.max_invariance_residual, std::abs(v.to_double()));
        const bool zero = alg.is_exact() ? v.is_zero() : std::abs(v.to_double()) <= out.tolerance;
        if (!zero) out.adh_invariant = false;
      }
    }
  }
  return out;
}

}  // namespace homflow
