#pragma once

#include <span>
#include <vector>

#include "atem/precision_real.hpp"

namespace atem {

/// Dense univariate polynomial in x with ascending coefficients.
///
/// Canonical form: trailing zero coefficients are stripped, so the zero
/// polynomial has no stored coefficients and degree() == kZeroDegree.
/// The polynomial remembers the widest precision it has seen so that the
/// zero polynomial still evaluates at a definite precision.
class Poly {
 public:
  static constexpr int kZeroDegree = -1;

  explicit Poly(int precision_bits = kDefaultPrecisionBits);
  explicit Poly(std::vector<Real> coeffs);
  /// As above, with the tracked precision at least `precision_bits`.
  Poly(std::vector<Real> coeffs, int precision_bits);
  static Poly constant(const Real& c);
  /// x^power with unit coefficient.
  static Poly monomial(int power, int precision_bits = kDefaultPrecisionBits);

  [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
  [[nodiscard]] int precision_bits() const noexcept { return precision_bits_; }
  [[nodiscard]] std::span<const Real> coeffs() const noexcept { return coeffs_; }
  /// Coefficient of x^k; zero beyond the degree.
  [[nodiscard]] Real coeff(int k) const;
  [[nodiscard]] const Real& leading() const;

  /// Exact coefficient extraction, no arithmetic.
  [[nodiscard]] Real eval_at_zero() const;
  /// Horner evaluation.
  [[nodiscard]] Real eval(const Real& x) const;

  [[nodiscard]] bool is_even() const noexcept;
  [[nodiscard]] bool is_odd() const noexcept;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  void canonicalize();

  std::vector<Real> coeffs_;
  int precision_bits_;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
/// Formal derivative.
Poly poly_diff(const Poly& a);
/// Multiplies every coefficient by c. Any finite c is accepted here;
/// renormalization callers must pass c > 0 themselves.
Poly poly_scale(const Poly& a, const Real& c);

}  // namespace atem
