#pragma once

#include "lcmsum/rational.hpp"

#include <mpfr.h>

#include <string>

namespace lcmsum {

inline constexpr mpfr_prec_t kDefaultPrecisionBits = 128;

// Owning handle for an MPFR number with a fixed precision.
class Real {
 public:
  explicit Real(mpfr_prec_t precision = kDefaultPrecisionBits);
  Real(double value, mpfr_prec_t precision);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real from_rational(const ExactRational& q, mpfr_prec_t precision, mpfr_rnd_t rnd = MPFR_RNDN);
  static Real from_int(const BigInt& n, mpfr_prec_t precision, mpfr_rnd_t rnd = MPFR_RNDN);

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // Scientific notation with the given number of significant digits.
  std::string to_string(int digits) const;
  // Fixed notation with the given number of digits after the point.
  std::string to_fixed(int decimals) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

 private:
  mpfr_t value_;
};

bool operator<(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);

// A real number known to lie in [value - abs_error, value + abs_error].
// All arithmetic propagates worst-case bounds; error terms are rounded
// upward and every rounding of the value is charged to the error.
class BoundedReal {
 public:
  explicit BoundedReal(mpfr_prec_t precision = kDefaultPrecisionBits);
  BoundedReal(Real value, Real abs_error);

  // Nearest representable value of q, error = the rounding.
  static BoundedReal from_rational(const ExactRational& q, mpfr_prec_t precision = kDefaultPrecisionBits);
  // value with a stated error bound (the error is taken as given).
  static BoundedReal with_error(const Real& value, double abs_error);

  const Real& value() const noexcept { return value_; }
  const Real& abs_error() const noexcept { return error_; }
  mpfr_prec_t precision() const noexcept { return value_.precision(); }

  Real lower() const;  // rounded down
  Real upper() const;  // rounded up

  bool contains(const Real& x) const;
  bool contains(const ExactRational& q) const;
  bool overlaps(const BoundedReal& other) const;
  // Every point of *this is strictly below every point of other.
  bool certainly_less(const BoundedReal& other) const;
  bool certainly_positive() const;

  double value_double() const { return value_.to_double(); }
  double error_double() const;

  // "value ± error" with the value in `digits` significant digits.
  std::string to_string(int digits = 20) const;

  BoundedReal pow(long long exponent) const;

  friend BoundedReal operator+(const BoundedReal& a, const BoundedReal& b);
  friend BoundedReal operator-(const BoundedReal& a, const BoundedReal& b);
  friend BoundedReal operator*(const BoundedReal& a, const BoundedReal& b);
  friend BoundedReal operator/(const BoundedReal& a, const BoundedReal& b);
  friend BoundedReal operator*(const BoundedReal& a, const ExactRational& q);
  friend BoundedReal operator*(const ExactRational& q, const BoundedReal& a) { return a * q; }

 private:
  Real value_;
  Real error_;
};

// |x| * 2^(2 - precision) rounded up: a bound on one round-to-nearest error in x
// plus slack for the error computation itself.
Real rounding_bound(const Real& x);

// Precision for the result of a binary operation.
inline mpfr_prec_t joint_precision(const BoundedReal& a, const BoundedReal& b) {
  return a.precision() > b.precision() ? a.precision() : b.precision();
}

}  // namespace lcmsum
