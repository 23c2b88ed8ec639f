#pragma once

#include <vector>

#include "atem/problem.hpp"

namespace atem {

enum class SeriesParity { even, odd, generic };

/// Truncated Maclaurin series of f at one energy, together with what is
/// needed to turn it into psi(x) = N exp(-s(x)) f(x).
struct WavefunctionSeries {
  Real energy;
  SeriesParity parity = SeriesParity::generic;
  /// f_coeffs[k] multiplies x^k.
  std::vector<Real> f_coeffs;
  AnsatzExponent ansatz;
  Poly potential;
  long energy_scale = 1;
  /// Zero until normalize() runs.
  Real norm_constant;
  int truncation_order = 0;

  [[nodiscard]] Poly f() const;
  [[nodiscard]] bool normalized() const noexcept { return norm_constant.sign() > 0; }
  /// Same series with every f coefficient multiplied by c; drops the norm.
  [[nodiscard]] WavefunctionSeries scaled(const Real& c) const;
};

inline constexpr int kDefaultTruncationOrder = 17;

/// Builds f from the recurrence at `energy`, run to depth
/// max(m + 1, truncation_order - 2) without renormalization so the
/// coefficients keep their physical ratios.
///
/// even:    f(0) = 1, f'(0) = 0, x^n weight q_{n-2}(0)/n!
/// odd:     f(0) = 0, f'(0) = 1, x^n weight p_{n-2}(0)/n!
/// generic: f'(0)/f(0) from the truncation rows at depths m and m-1; throws
///          NumericError when those rows are independent (energy is not a
///          root at this m).
WavefunctionSeries build_series(const ProblemSpec& problem, const Real& energy, int m,
                                int truncation_order = kDefaultTruncationOrder,
                                SeriesParity parity = SeriesParity::generic);

/// Fixes norm_constant so that the integral of psi^2 over [-L, L] is one,
/// using composite Simpson with interval halving. L is chosen where the
/// integrand has dropped below quad_tol^2 relative to its peak. The sign of
/// f is flipped if needed so its lowest nonzero coefficient is positive.
WavefunctionSeries normalize(const WavefunctionSeries& series, const Real& quad_tol);

struct SamplePoint {
  Real x;
  Real psi;
};

/// psi at n_points uniform abscissae in [x_min, x_max], endpoints included.
std::vector<SamplePoint> sample(const WavefunctionSeries& series, const Real& x_min, const Real& x_max,
                                int n_points);

/// psi(x) at one point.
Real evaluate_psi(const WavefunctionSeries& series, const Real& x);

/// |-psi'' + V psi - lambda E psi| at each point, with psi'' taken
/// analytically from the series and envelope. Uses norm_constant when set,
/// otherwise N = 1.
std::vector<Real> residual(const WavefunctionSeries& series, const std::vector<Real>& x_points);

}  // namespace atem
