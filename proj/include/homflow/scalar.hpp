#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace homflow {

using Rational = mpq_class;

/// Thrown when exact and floating scalars meet in one arithmetic expression.
class ModeMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class ScalarMode { exact, floating };

/// Default comparison tolerance for floating scalars.
inline constexpr double kDefaultFloatTolerance = 1e-12;

/// A field element that is either an exact rational or a double carrying its
/// own comparison tolerance. The two modes never mix silently: binary
/// arithmetic between an exact and a floating scalar throws ModeMismatch.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(const Rational& q) : value_(q) {}  // NOLINT(implicit)

  static Scalar exact(long num, long den = 1);
  static Scalar floating(double v, double tol = kDefaultFloatTolerance);
  static Scalar zero(ScalarMode mode);
  static Scalar one(ScalarMode mode);

  ScalarMode mode() const {
    return std::holds_alternative<Rational>(value_) ? ScalarMode::exact : ScalarMode::floating;
  }
  bool is_exact() const { return mode() == ScalarMode::exact; }
  const Rational& rational() const;
  double to_double() const;
  double tolerance() const { return is_exact() ? 0.0 : tol_; }

  bool is_zero() const;
  Scalar scaled(long k) const;
  Scalar operator-() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Exact equality for rationals; |a-b| <= max(tol) for floats.
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  std::variant<Rational, double> value_;
  double tol_ = kDefaultFloatTolerance;

  void require_same_mode(const Scalar& o, const char* op) const;
};

using ScalarVector = std::vector<Scalar>;

/// Common mode of a collection; throws ModeMismatch if mixed. Empty -> exact.
ScalarMode common_mode(const ScalarVector& v);
std::vector<double> to_doubles(const ScalarVector& v);

}  // namespace homflow
