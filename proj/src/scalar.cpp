#include "homflow/scalar.hpp"

#include <cmath>
#include <cstdio>

namespace homflow {

Scalar Scalar::exact(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::floating(double v, double tol) {
  Scalar s;
  s.value_ = v;
  s.tol_ = tol;
  return s;
}

Scalar Scalar::zero(ScalarMode mode) {
  return mode == ScalarMode::exact ? Scalar() : floating(0.0);
}

Scalar Scalar::one(ScalarMode mode) {
  return mode == ScalarMode::exact ? exact(1) : floating(1.0);
}

const Rational& Scalar::rational() const {
  if (!is_exact()) throw ModeMismatch("rational() on a floating scalar");
  return std::get<Rational>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<Rational>(value_).get_d();
  return std::get<double>(value_);
}

bool Scalar::is_zero() const {
  if (is_exact()) return sgn(std::get<Rational>(value_)) == 0;
  return std::abs(std::get<double>(value_)) <= tol_;
}

Scalar Scalar::scaled(long k) const {
  Scalar r = *this;
  if (is_exact())
    std::get<Rational>(r.value_) *= k;
  else
    std::get<double>(r.value_) *= static_cast<double>(k);
  return r;
}

Scalar Scalar::operator-() const { return scaled(-1); }

void Scalar::require_same_mode(const Scalar& o, const char* op) const {
  if (mode() != o.mode())
    throw ModeMismatch(std::string("mixed exact/floating operands in '") + op + "'");
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same_mode(o, "+");
  if (is_exact()) {
    std::get<Rational>(value_) += std::get<Rational>(o.value_);
  } else {
    std::get<double>(value_) += std::get<double>(o.value_);
    tol_ = std::max(tol_, o.tol_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_same_mode(o, "-");
  if (is_exact()) {
    std::get<Rational>(value_) -= std::get<Rational>(o.value_);
  } else {
    std::get<double>(value_) -= std::get<double>(o.value_);
    tol_ = std::max(tol_, o.tol_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same_mode(o, "*");
  if (is_exact()) {
    std::get<Rational>(value_) *= std::get<Rational>(o.value_);
  } else {
    std::get<double>(value_) *= std::get<double>(o.value_);
    tol_ = std::max(tol_, o.tol_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require_same_mode(o, "/");
  if (o.is_exact() ? sgn(std::get<Rational>(o.value_)) == 0 : std::get<double>(o.value_) == 0.0)
    throw std::domain_error("division by zero scalar");
  if (is_exact()) {
    std::get<Rational>(value_) /= std::get<Rational>(o.value_);
  } else {
    std::get<double>(value_) /= std::get<double>(o.value_);
    tol_ = std::max(tol_, o.tol_);
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.require_same_mode(b, "==");
  if (a.is_exact()) return std::get<Rational>(a.value_) == std::get<Rational>(b.value_);
  return std::abs(std::get<double>(a.value_) - std::get<double>(b.value_)) <= std::max(a.tol_, b.tol_);
}

std::string Scalar::to_string() const {
  if (is_exact()) return std::get<Rational>(value_).get_str();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(value_));
  return buf;
}

ScalarMode common_mode(const ScalarVector& v) {
  if (v.empty()) return ScalarMode::exact;
  ScalarMode m = v.front().mode();
  for (const auto& s : v)
    if (s.mode() != m) throw ModeMismatch("vector mixes exact and floating scalars");
  return m;
}

std::vector<double> to_doubles(const ScalarVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.to_double());
  return out;
}

}  // namespace homflow
