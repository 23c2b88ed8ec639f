#include "atem/precision_real.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <string>

namespace atem {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

struct MpfrStringDeleter {
  void operator()(char* text) const noexcept { mpfr_free_str(text); }
};

}  // namespace

int checked_precision(int precision_bits) {
  if (precision_bits < kMinPrecisionBits) {
    throw InvalidArgument("precision_bits must be >= " + std::to_string(kMinPrecisionBits) + ", got " +
                          std::to_string(precision_bits));
  }
  if (precision_bits > MPFR_PREC_MAX / 2) {
    throw InvalidArgument("precision_bits too large: " + std::to_string(precision_bits));
  }
  return precision_bits;
}

int decimal_digits_for_bits(int precision_bits) noexcept {
  return static_cast<int>(std::floor(precision_bits * 0.30102999566398120));
}

Real::Real(Uninitialized, int precision_bits) { mpfr_init2(value_, checked_precision(precision_bits)); }

Real::Real() : Real(Uninitialized{}, kDefaultPrecisionBits) { mpfr_set_zero(value_, 1); }

Real::Real(long value, int precision_bits) : Real(Uninitialized{}, precision_bits) {
  mpfr_set_si(value_, value, kRound);
}

Real Real::from_double(double value, int precision_bits) {
  if (!std::isfinite(value)) throw NumericError("Real::from_double: non-finite input");
  Real out(Uninitialized{}, precision_bits);
  mpfr_set_d(out.value_, value, kRound);
  return out;
}

Real Real::from_string(std::string_view text, int precision_bits) {
  std::string buffer(text);
  // Trim surrounding whitespace; internal whitespace is an error.
  const auto first = buffer.find_first_not_of(" \t\r\n");
  const auto last = buffer.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) throw InvalidArgument("empty numeric literal");
  buffer = buffer.substr(first, last - first + 1);

  Real out(Uninitialized{}, precision_bits);
  char* end = nullptr;
  mpfr_strtofr(out.value_, buffer.c_str(), &end, 10, kRound);
  if (end == buffer.c_str() || *end != '\0') {
    throw InvalidArgument("malformed numeric literal '" + std::string(text) + "'");
  }
  if (!mpfr_number_p(out.value_)) {
    throw NumericError("non-finite numeric literal '" + std::string(text) + "'");
  }
  return out;
}

Real Real::pi(int precision_bits) {
  Real out(Uninitialized{}, precision_bits);
  mpfr_const_pi(out.value_, kRound);
  return out;
}

Real Real::pow2(long exponent, int precision_bits) {
  Real out(Uninitialized{}, precision_bits);
  mpfr_set_ui_2exp(out.value_, 1, exponent, kRound);
  out.check_finite("Real::pow2");
  return out;
}

Real::Real(const Real& other) : Real(Uninitialized{}, other.precision_bits()) {
  mpfr_set(value_, other.value_, kRound);
}

Real::Real(Real&& other) noexcept {
  // Steal the limbs; leave `other` as a valid zero of minimal precision.
  mpfr_init2(value_, kMinPrecisionBits);
  mpfr_swap(value_, other.value_);
  mpfr_set_zero(other.value_, 1);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision_bits());
    mpfr_set(value_, other.value_, kRound);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::with_precision(int precision_bits) const {
  Real out(Uninitialized{}, precision_bits);
  mpfr_set(out.value_, value_, kRound);
  return out;
}

void Real::check_finite(const char* where) const {
  if (!mpfr_number_p(value_)) throw NumericError(std::string(where) + ": non-finite result");
}

void Real::widen_to(int precision_bits) {
  if (precision_bits > this->precision_bits()) mpfr_prec_round(value_, precision_bits, kRound);
}

std::string Real::to_string(int significant_digits) const {
  significant_digits = std::max(significant_digits, 1);
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, "%.*Rg", significant_digits, value_) < 0) {
    throw NumericError("Real::to_string: formatting failed");
  }
  std::unique_ptr<char, MpfrStringDeleter> text(raw);
  return std::string(text.get());
}

std::string Real::to_string() const {
  const int digits = 1 + static_cast<int>(std::ceil(precision_bits() * 0.30102999566398120));
  return to_string(digits);
}

Real& Real::operator+=(const Real& rhs) {
  widen_to(rhs.precision_bits());
  mpfr_add(value_, value_, rhs.value_, kRound);
  check_finite("Real::operator+=");
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  widen_to(rhs.precision_bits());
  mpfr_sub(value_, value_, rhs.value_, kRound);
  check_finite("Real::operator-=");
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  widen_to(rhs.precision_bits());
  mpfr_mul(value_, value_, rhs.value_, kRound);
  check_finite("Real::operator*=");
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  if (rhs.is_zero()) throw NumericError("Real::operator/=: division by zero");
  widen_to(rhs.precision_bits());
  mpfr_div(value_, value_, rhs.value_, kRound);
  check_finite("Real::operator/=");
  return *this;
}

Real& Real::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, kRound);
  check_finite("Real::operator*=");
  return *this;
}

Real& Real::operator/=(long rhs) {
  if (rhs == 0) throw NumericError("Real::operator/=: division by zero");
  mpfr_div_si(value_, value_, rhs, kRound);
  check_finite("Real::operator/=");
  return *this;
}

void Real::add_product(const Real& a, const Real& b) {
  widen_to(std::max(a.precision_bits(), b.precision_bits()));
  mpfr_fma(value_, a.value_, b.value_, value_, kRound);
  check_finite("Real::add_product");
}

Real operator-(Real value) {
  mpfr_neg(value.value_, value.value_, kRound);
  return value;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept {
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::strong_ordering operator<=>(const Real& a, long b) noexcept {
  const int c = mpfr_cmp_si(a.value_, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Real abs(Real value) {
  mpfr_abs(value.value_, value.value_, kRound);
  return value;
}

Real sqrt(Real value) {
  if (value.sign() < 0) throw NumericError("sqrt of negative value");
  mpfr_sqrt(value.value_, value.value_, kRound);
  return value;
}

Real exp(Real value) {
  mpfr_exp(value.value_, value.value_, kRound);
  value.check_finite("exp");
  return value;
}

Real log(Real value) {
  if (value.sign() <= 0) throw NumericError("log of non-positive value");
  mpfr_log(value.value_, value.value_, kRound);
  return value;
}

Real log10(Real value) {
  if (value.sign() <= 0) throw NumericError("log10 of non-positive value");
  mpfr_log10(value.value_, value.value_, kRound);
  return value;
}

Real floor(Real value) {
  mpfr_floor(value.value_, value.value_);
  return value;
}

Real pow(Real base, long exponent) {
  mpfr_pow_si(base.value_, base.value_, exponent, kRound);
  base.check_finite("pow");
  return base;
}

Real max(const Real& a, const Real& b) {
  Real out = a < b ? b : a;
  out.widen_to(std::max(a.precision_bits(), b.precision_bits()));
  return out;
}

Real min(const Real& a, const Real& b) {
  Real out = b < a ? b : a;
  out.widen_to(std::max(a.precision_bits(), b.precision_bits()));
  return out;
}

}  // namespace atem
