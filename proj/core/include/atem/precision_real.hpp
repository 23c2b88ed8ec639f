#pragma once

#include <mpfr.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace atem {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure: non-finite values, lost sign information, quadrature
/// or root-count instability.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Input that violates a documented precondition or schema.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

inline constexpr int kMinPrecisionBits = 64;
inline constexpr int kDefaultPrecisionBits = 256;

/// Finite real number with a per-value mantissa width, backed by MPFR.
///
/// Binary operations round to the larger of the two operand precisions.
/// Every constructor and arithmetic result is checked for finiteness; NaN or
/// infinity raises NumericError.
class Real {
 public:
  /// Zero at the default precision.
  Real();
  explicit Real(long value, int precision_bits = kDefaultPrecisionBits);
  /// Rounds the binary double to the requested precision. Prefer
  /// from_string for decimal literals that are not dyadic.
  static Real from_double(double value, int precision_bits = kDefaultPrecisionBits);
  /// Parses a decimal (or scientific) literal directly at the target precision.
  static Real from_string(std::string_view text, int precision_bits = kDefaultPrecisionBits);
  static Real pi(int precision_bits = kDefaultPrecisionBits);
  /// 2^exponent, exact.
  static Real pow2(long exponent, int precision_bits = kDefaultPrecisionBits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  [[nodiscard]] int precision_bits() const noexcept { return static_cast<int>(mpfr_get_prec(value_)); }
  /// Same value re-rounded to a new precision.
  [[nodiscard]] Real with_precision(int precision_bits) const;

  [[nodiscard]] bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  /// -1, 0 or +1.
  [[nodiscard]] int sign() const noexcept { return mpfr_sgn(value_); }
  [[nodiscard]] double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Base-2 exponent e with |x| in [2^(e-1), 2^e); meaningless for zero.
  [[nodiscard]] long exponent2() const noexcept { return mpfr_get_exp(value_); }

  /// Decimal rendering with `significant_digits` significant digits in
  /// scientific or plain notation, whichever is shorter for the magnitude.
  [[nodiscard]] std::string to_string(int significant_digits) const;
  /// Round-trip decimal rendering at full precision.
  [[nodiscard]] std::string to_string() const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);

  /// this += a * b with a single rounding.
  void add_product(const Real& a, const Real& b);
  /// Overwrites with +0, keeping the current precision.
  void set_zero() noexcept { mpfr_set_zero(value_, 1); }

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
  friend Real operator*(Real lhs, long rhs) { return lhs *= rhs; }
  friend Real operator*(long lhs, Real rhs) { return rhs *= lhs; }
  friend Real operator/(Real lhs, long rhs) { return lhs /= rhs; }
  friend Real operator-(Real value);

  friend bool operator==(const Real& a, const Real& b) noexcept { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept;
  friend bool operator==(const Real& a, long b) noexcept { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::strong_ordering operator<=>(const Real& a, long b) noexcept;

  friend Real abs(Real value);
  friend Real sqrt(Real value);
  friend Real exp(Real value);
  /// Natural logarithm; argument must be positive.
  friend Real log(Real value);
  friend Real log10(Real value);
  friend Real floor(Real value);
  friend Real pow(Real base, long exponent);
  friend Real max(const Real& a, const Real& b);
  friend Real min(const Real& a, const Real& b);

  [[nodiscard]] mpfr_srcptr raw() const noexcept { return value_; }

 private:
  struct Uninitialized {};
  Real(Uninitialized, int precision_bits);
  void check_finite(const char* where) const;
  void widen_to(int precision_bits);

  mpfr_t value_;
};

/// Decimal digits resolvable at a binary precision, floor(bits * log10 2).
int decimal_digits_for_bits(int precision_bits) noexcept;

/// Validates and returns a precision, throwing InvalidArgument below 64 bits.
int checked_precision(int precision_bits);

}  // namespace atem
