#include "homflow/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace homflow {

namespace {

bool exactly_zero(const Scalar& s) { return s.is_exact() ? s.is_zero() : s.to_double() == 0.0; }

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, const Scalar& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index, ScalarMode mode) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(nvars, std::move(e), Scalar::one(mode));
}

Polynomial Polynomial::monomial(std::size_t nvars, Exponents exps, const Scalar& coeff) {
  if (exps.size() != nvars) throw std::invalid_argument("exponent vector has wrong length");
  Polynomial p(nvars);
  p.add_term(exps, coeff);
  return p;
}

void Polynomial::check_nvars(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials over different variable sets");
}

bool Polynomial::is_zero() const {
  for (const auto& [e, c] : terms_)
    if (!c.is_zero()) return false;
  return true;
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c.to_double()));
  return m;
}

void Polynomial::add_term(const Exponents& exps, const Scalar& coeff) {
  if (exps.size() != nvars_) throw std::invalid_argument("exponent vector has wrong length");
  if (exactly_zero(coeff)) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(exps, coeff);
    return;
  }
  it->second += coeff;
  if (exactly_zero(it->second)) terms_.erase(it);
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("derivative variable out of range");
  Polynomial d(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents de = e;
    de[var] -= 1;
    d.add_term(de, c.scaled(e[var]));
  }
  return d;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& images) const {
  if (images.size() != nvars_) throw std::invalid_argument("compose needs one image per variable");
  if (images.empty()) return *this;
  const std::size_t out_vars = images.front().nvars();
  for (const auto& im : images) {
    if (im.nvars() != out_vars) throw std::invalid_argument("images over different variable sets");
  }
  Polynomial out(out_vars);
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(out_vars, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i] != 0) term *= pow(images[i], e[i]);
    out += term;
  }
  return out;
}

Scalar Polynomial::evaluate(const ScalarVector& point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong length");
  ScalarMode mode = common_mode(point);
  Scalar sum = Scalar::zero(mode);
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (int k = 0; k < e[i]; ++k) t *= point[i];
      for (int k = 0; k > e[i]; --k) t /= point[i];
    }
    sum += t;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong length");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.to_double();
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i] != 0) t *= std::pow(point[i], e[i]);
    sum += t;
  }
  return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_nvars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_nvars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  check_nvars(o);
  Polynomial r(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  *this = std::move(r);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& s) {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.add_term(e, c * s);
  *this = std::move(r);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.add_term(e, -c);
  return r;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.to_string();
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      os << '*' << (i < names.size() ? names[i] : "v" + std::to_string(i));
      if (e[i] != 1) os << '^' << e[i];
    }
  }
  return os.str();
}

Polynomial pow(const Polynomial& base, int exponent) {
  if (exponent < 0) {
    if (base.term_count() != 1) throw std::domain_error("negative power of a non-monomial");
    const auto& [e, c] = *base.terms().begin();
    Exponents ne(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) ne[i] = e[i] * exponent;
    Scalar coeff = Scalar::one(c.mode());
    for (int k = 0; k > exponent; --k) coeff /= c;
    return Polynomial::monomial(base.nvars(), ne, coeff);
  }
  ScalarMode mode = base.terms().empty() ? ScalarMode::exact : base.terms().begin()->second.mode();
  Polynomial r = Polynomial::constant(base.nvars(), Scalar::one(mode));
  for (int k = 0; k < exponent; ++k) r *= base;
  return r;
}

}  // namespace homflow
