#pragma once

#include <optional>
#include <string>

#include "atem/poly.hpp"

namespace atem {

/// Exponent s(x) of the envelope in psi(x) = exp(-s(x)) f(x).
///
/// s must have even degree >= 2 and a positive leading coefficient so the
/// envelope decays in both directions. A constant term only rescales psi
/// and is dropped.
class AnsatzExponent {
 public:
  explicit AnsatzExponent(const Poly& s);
  /// s(x) = alpha x^2 / 2 + beta x^4 / 4.
  static AnsatzExponent gaussian_quartic(const Real& alpha, const Real& beta);

  [[nodiscard]] const Poly& s() const noexcept { return s_; }
  [[nodiscard]] bool is_even() const noexcept { return s_.is_even(); }

 private:
  Poly s_;
};

/// Bound-state problem  -psi'' + V psi = lambda E psi  with hbar^2 = 2m = 1.
///
/// `energy_scale` is lambda. It is 1 for the plain Schroedinger operator;
/// lambda = 2 reports energies of  -psi''/2 + V psi/2 , the convention used by
/// the bistable-sextic reference table.
struct ProblemSpec {
  Poly potential;
  AnsatzExponent ansatz;
  bool symmetric = false;
  long energy_scale = 1;

  /// Builds and validates a problem; `symmetric` is detected from parity of
  /// V and s.
  static ProblemSpec make(Poly potential, AnsatzExponent ansatz, long energy_scale = 1);
  /// Throws InvalidArgument when an invariant is broken.
  void validate() const;
  [[nodiscard]] int precision_bits() const noexcept;
};

/// Coefficients of  f'' = p0 f' + q0 f  obtained from the envelope transform,
/// with q0(x; E) = q0_base(x) - energy_scale * E.
struct SeedPair {
  Poly p0;
  Poly q0_base;
  long energy_scale = 1;
  bool symmetric = false;
  /// Set when q0_base grows positive at large |x|; eigenvalues may still
  /// converge, but slowly.
  std::optional<std::string> warning;

  [[nodiscard]] Poly q0(const Real& energy) const;
  [[nodiscard]] int precision_bits() const noexcept;
};

/// p0 = 2 s',  q0_base = s'' - s'^2 + V.
SeedPair derive_seed(const ProblemSpec& problem);

}  // namespace atem
