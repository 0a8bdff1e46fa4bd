#pragma once

#include "homflow/scalar.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace homflow {

/// Signed exponent vector; negative entries make Laurent monomials.
using Exponents = std::vector<int>;

/// Sparse multivariate Laurent polynomial with Scalar coefficients.
///
/// Laurent terms are allowed so that rational charts such as j/q^2 stay in a
/// ring that is closed under differentiation; identities on those charts can
/// then be checked exactly.
class Polynomial {
 public:
  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Scalar& c);
  static Polynomial variable(std::size_t nvars, std::size_t index, ScalarMode mode);
  static Polynomial monomial(std::size_t nvars, Exponents exps, const Scalar& coeff);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Scalar>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  /// True when every coefficient is zero (floating coefficients: within tolerance).
  bool is_zero() const;
  double max_abs_coefficient() const;

  void add_term(const Exponents& exps, const Scalar& coeff);
  Polynomial derivative(std::size_t var) const;

  /// Substitutes images[i] for variable i. Negative exponents require the
  /// image to be a single monomial.
  Polynomial compose(const std::vector<Polynomial>& images) const;

  Scalar evaluate(const ScalarVector& point) const;
  double evaluate(std::span<const double> point) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::size_t nvars_;
  std::map<Exponents, Scalar> terms_;

  void check_nvars(const Polynomial& o) const;
};

Polynomial pow(const Polynomial& base, int exponent);

}  // namespace homflow
