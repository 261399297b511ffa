#include "lcmsum/real.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace lcmsum {

Real::Real(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

Real::Real(double value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  // Leave `other` as a valid minimal-precision number.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::from_rational(const ExactRational& q, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  Real out(precision);
  mpfr_set_q(out.get(), q.backend().data(), rnd);
  return out;
}

Real Real::from_int(const BigInt& n, mpfr_prec_t precision, mpfr_rnd_t rnd) {
  Real out(precision);
  mpfr_set_z(out.get(), n.backend().data(), rnd);
  return out;
}

std::string Real::to_string(int digits) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Re", std::max(digits - 1, 0), value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

std::string Real::to_fixed(int decimals) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Rf", std::max(decimals, 0), value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }

Real rounding_bound(const Real& x) {
  Real out(x.precision());
  mpfr_abs(out.get(), x.get(), MPFR_RNDU);
  mpfr_mul_2si(out.get(), out.get(), 2 - static_cast<long>(x.precision()), MPFR_RNDU);
  return out;
}

namespace {

// error += extra, rounded up
void add_up(Real& error, const Real& extra) { mpfr_add(error.get(), error.get(), extra.get(), MPFR_RNDU); }

Real abs_up(const Real& x, mpfr_prec_t precision) {
  Real out(precision);
  mpfr_abs(out.get(), x.get(), MPFR_RNDU);
  return out;
}

Real abs_down(const Real& x, mpfr_prec_t precision) {
  Real out(precision);
  mpfr_abs(out.get(), x.get(), MPFR_RNDD);
  return out;
}

}  // namespace

BoundedReal::BoundedReal(mpfr_prec_t precision) : value_(precision), error_(precision) {}

BoundedReal::BoundedReal(Real value, Real abs_error) : value_(std::move(value)), error_(std::move(abs_error)) {
  if (error_.sign() < 0) throw std::invalid_argument("BoundedReal: negative error bound");
}

BoundedReal BoundedReal::from_rational(const ExactRational& q, mpfr_prec_t precision) {
  Real value = Real::from_rational(q, precision);
  Real error(precision);
  // exact |value - q|, rounded up
  ExactRational represented;
  mpfr_get_q(represented.backend().data(), value.get());
  ExactRational diff = represented - q;
  if (diff < 0) diff = -diff;
  mpfr_set_q(error.get(), diff.backend().data(), MPFR_RNDU);
  return BoundedReal(std::move(value), std::move(error));
}

BoundedReal BoundedReal::with_error(const Real& value, double abs_error) {
  Real error(value.precision());
  mpfr_set_d(error.get(), abs_error, MPFR_RNDU);
  return BoundedReal(value, std::move(error));
}

Real BoundedReal::lower() const {
  Real out(precision());
  mpfr_sub(out.get(), value_.get(), error_.get(), MPFR_RNDD);
  return out;
}

Real BoundedReal::upper() const {
  Real out(precision());
  mpfr_add(out.get(), value_.get(), error_.get(), MPFR_RNDU);
  return out;
}

bool BoundedReal::contains(const Real& x) const { return lower() <= x && x <= upper(); }

bool BoundedReal::contains(const ExactRational& q) const {
  ExactRational lo, hi;
  mpfr_get_q(lo.backend().data(), lower().get());
  mpfr_get_q(hi.backend().data(), upper().get());
  return lo <= q && q <= hi;
}

bool BoundedReal::overlaps(const BoundedReal& other) const {
  return lower() <= other.upper() && other.lower() <= upper();
}

bool BoundedReal::certainly_less(const BoundedReal& other) const { return upper() < other.lower(); }

bool BoundedReal::certainly_positive() const { return lower().sign() > 0; }

double BoundedReal::error_double() const { return mpfr_get_d(error_.get(), MPFR_RNDU); }

std::string BoundedReal::to_string(int digits) const {
  return value_.to_string(digits) + " +/- " + error_.to_string(3);
}

BoundedReal operator+(const BoundedReal& a, const BoundedReal& b) {
  const auto prec = joint_precision(a, b);
  Real value(prec), error(prec);
  mpfr_add(value.get(), a.value().get(), b.value().get(), MPFR_RNDN);
  mpfr_add(error.get(), a.abs_error().get(), b.abs_error().get(), MPFR_RNDU);
  add_up(error, rounding_bound(value));
  return BoundedReal(std::move(value), std::move(error));
}

BoundedReal operator-(const BoundedReal& a, const BoundedReal& b) {
  const auto prec = joint_precision(a, b);
  Real value(prec), error(prec);
  mpfr_sub(value.get(), a.value().get(), b.value().get(), MPFR_RNDN);
  mpfr_add(error.get(), a.abs_error().get(), b.abs_error().get(), MPFR_RNDU);
  add_up(error, rounding_bound(value));
  return BoundedReal(std::move(value), std::move(error));
}

BoundedReal operator*(const BoundedReal& a, const BoundedReal& b) {
  const auto prec = joint_precision(a, b);
  Real value(prec), error(prec), term(prec);
  mpfr_mul(value.get(), a.value().get(), b.value().get(), MPFR_RNDN);
  // |a| eb + |b| ea + ea eb
  mpfr_mul(error.get(), abs_up(a.value(), prec).get(), b.abs_error().get(), MPFR_RNDU);
  mpfr_mul(term.get(), abs_up(b.value(), prec).get(), a.abs_error().get(), MPFR_RNDU);
  add_up(error, term);
  mpfr_mul(term.get(), a.abs_error().get(), b.abs_error().get(), MPFR_RNDU);
  add_up(error, term);
  add_up(error, rounding_bound(value));
  return BoundedReal(std::move(value), std::move(error));
}

BoundedReal operator/(const BoundedReal& a, const BoundedReal& b) {
  const auto prec = joint_precision(a, b);
  Real margin(prec);
  mpfr_sub(margin.get(), abs_down(b.value(), prec).get(), b.abs_error().get(), MPFR_RNDD);
  if (margin.sign() <= 0) throw std::domain_error("BoundedReal: divisor interval contains zero");
  Real value(prec), error(prec), term(prec), denom(prec);
  mpfr_div(value.get(), a.value().get(), b.value().get(), MPFR_RNDN);
  // (|a| eb + |b| ea) / (|b| (|b| - eb))
  mpfr_mul(error.get(), abs_up(a.value(), prec).get(), b.abs_error().get(), MPFR_RNDU);
  mpfr_mul(term.get(), abs_up(b.value(), prec).get(), a.abs_error().get(), MPFR_RNDU);
  add_up(error, term);
  mpfr_mul(denom.get(), abs_down(b.value(), prec).get(), margin.get(), MPFR_RNDD);
  mpfr_div(error.get(), error.get(), denom.get(), MPFR_RNDU);
  add_up(error, rounding_bound(value));
  return BoundedReal(std::move(value), std::move(error));
}

BoundedReal operator*(const BoundedReal& a, const ExactRational& q) {
  return a * BoundedReal::from_rational(q, a.precision());
}

BoundedReal BoundedReal::pow(long long exponent) const {
  const auto prec = precision();
  if (exponent == 0) return BoundedReal::from_rational(ExactRational(1), prec);
  Real margin(prec);
  mpfr_sub(margin.get(), abs_down(value_, prec).get(), error_.get(), MPFR_RNDD);
  if (margin.sign() <= 0) throw std::domain_error("BoundedReal::pow: base interval contains zero");
  Real value(prec);
  mpfr_pow_si(value.get(), value_.get(), static_cast<long>(exponent), MPFR_RNDN);
  // true base = v (1 + t), |t| <= r = e/|v|; |(1+t)^n - 1| <= exp(|n| r / (1 - r)) - 1
  Real r(prec), one_minus_r(prec), growth(prec);
  mpfr_div(r.get(), error_.get(), abs_down(value_, prec).get(), MPFR_RNDU);
  mpfr_ui_sub(one_minus_r.get(), 1, r.get(), MPFR_RNDD);
  mpfr_div(growth.get(), r.get(), one_minus_r.get(), MPFR_RNDU);
  const unsigned long long magnitude =
      exponent < 0 ? static_cast<unsigned long long>(-(exponent + 1)) + 1ULL : static_cast<unsigned long long>(exponent);
  mpfr_mul_ui(growth.get(), growth.get(), static_cast<unsigned long>(magnitude), MPFR_RNDU);
  mpfr_expm1(growth.get(), growth.get(), MPFR_RNDU);
  Real error(prec), one_plus(prec);
  // |value| may sit one rounding below |x^n|; 1 + 2^-50 covers that
  mpfr_set_ui(one_plus.get(), 1, MPFR_RNDN);
  mpfr_mul_2si(margin.get(), one_plus.get(), -50, MPFR_RNDU);
  mpfr_add(one_plus.get(), one_plus.get(), margin.get(), MPFR_RNDU);
  mpfr_mul(error.get(), abs_up(value, prec).get(), growth.get(), MPFR_RNDU);
  mpfr_mul(error.get(), error.get(), one_plus.get(), MPFR_RNDU);
  add_up(error, rounding_bound(value));
  return BoundedReal(std::move(value), std::move(error));
}

}  // namespace lcmsum
