#include "atem/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <tuple>
#include <utility>

#include "atem/recurrence.hpp"

namespace atem {

Poly WavefunctionSeries::f() const {
  return Poly(f_coeffs, std::max(energy.precision_bits(), potential.precision_bits()));
}

WavefunctionSeries WavefunctionSeries::scaled(const Real& c) const {
  WavefunctionSeries out = *this;
  for (auto& coeff : out.f_coeffs) coeff *= c;
  out.norm_constant = Real(0, energy.precision_bits());
  return out;
}

namespace {

// Boundary values (f(0), f'(0)) for the generic channel: the null vector of
// the truncation rows (q_n(0), p_n(0)), n = m, m-1.
//
// A row is judged against the largest of its neighbours rather than itself:
// for symmetric problems one row at a root is (0, p) with p ~ 0, and only the
// adjacent levels say how small "0" is.
std::pair<Real, Real> generic_boundary(const RecurrenceTrace& trace, int m) {
  const int bits = trace.energy.precision_bits();
  const auto row_norm = [&](int n) {
    const auto i = static_cast<std::size_t>(n);
    return max(abs(trace.q_at_zero[i]), abs(trace.p_at_zero[i]));
  };
  const auto row_scale = [&](int n) { return max(row_norm(n - 1), max(row_norm(n), row_norm(n + 1))); };

  const Real scale_m = row_scale(m);
  const Real scale_prev = row_scale(m - 1);
  if (scale_m.is_zero() || scale_prev.is_zero()) throw NumericError("build_series: truncation rows vanish identically");

  // Null vector from the healthier row, tested against the other one.
  const bool use_m = row_norm(m) / scale_m >= row_norm(m - 1) / scale_prev;
  const int chosen = use_m ? m : m - 1;
  const int other = use_m ? m - 1 : m;
  const auto ci = static_cast<std::size_t>(chosen);
  const auto oi = static_cast<std::size_t>(other);
  Real f0 = -trace.p_at_zero[ci];
  Real f1 = trace.q_at_zero[ci];
  const Real v_norm = max(abs(f0), abs(f1));
  if (v_norm.is_zero()) throw NumericError("build_series: truncation rows vanish identically");

  Real mismatch = trace.q_at_zero[oi] * f0;
  mismatch.add_product(trace.p_at_zero[oi], f1);
  const Real relative = abs(mismatch) / (v_norm * (use_m ? scale_prev : scale_m));
  if (relative > Real::from_string("1e-8", bits)) {
    throw NumericError("build_series: truncation system has rank 2 at E=" + trace.energy.to_string(20) +
                       " (relative mismatch " + relative.to_string(3) + "); energy is not an eigenvalue at m=" +
                       std::to_string(m));
  }

  // Prefer f(0) = 1; fall back to f'(0) = 1 when f(0) is zero at working precision.
  if (abs(f0) > abs(f1) * Real::pow2(-bits / 2, bits)) return {Real(1, bits), f1 / f0};
  return {Real(0, bits), Real(1, bits)};
}

Real unnormalized_psi(const WavefunctionSeries& series, const Poly& f, const Real& x) {
  return exp(-series.ansatz.s().eval(x)) * f.eval(x);
}

// Half-width of the quadrature window.
Real quadrature_half_width(const WavefunctionSeries& series, const Poly& f, const Real& quad_tol) {
  const int bits = quad_tol.precision_bits();
  const int digits = std::max(1, static_cast<int>(std::ceil(-log10(quad_tol).to_double())));
  const Real decay = Real(digits, bits) * log(Real(10, bits));

  // Envelope criterion: s(L) > digits * ln 10, i.e. exp(-2 s(L)) < 10^(-2 digits).
  Real half_width(1, bits);
  const Poly& s = series.ansatz.s();
  while (s.eval(half_width) <= decay && s.eval(-half_width) <= decay) half_width *= 2;
  Real lo(0, bits);
  Real hi = half_width;
  for (int i = 0; i < 60; ++i) {
    Real mid = (lo + hi) / 2;
    if (s.eval(mid) > decay && s.eval(-mid) > decay) {
      hi = std::move(mid);
    } else {
      lo = std::move(mid);
    }
  }
  half_width = hi;

  // Polynomial growth of f can outrun the envelope near L; widen until the
  // integrand at the edges is negligible against its peak.
  Real peak(0, bits);
  const int probes = 200;
  for (int i = 0; i <= probes; ++i) {
    const Real x = -half_width + half_width * 2 * static_cast<long>(i) / static_cast<long>(probes);
    const Real v = unnormalized_psi(series, f, x);
    peak = max(peak, v * v);
  }
  const Real edge_limit = peak * quad_tol * quad_tol;
  for (int i = 0; i < 200; ++i) {
    const Real left = unnormalized_psi(series, f, -half_width);
    const Real right = unnormalized_psi(series, f, half_width);
    if (left * left <= edge_limit && right * right <= edge_limit) return half_width;
    half_width = half_width * 11 / 10;
  }
  throw NumericError("normalize: integrand does not decay inside the search window");
}

}  // namespace

WavefunctionSeries build_series(const ProblemSpec& problem, const Real& energy, int m, int truncation_order,
                                SeriesParity parity) {
  problem.validate();
  if (truncation_order < 1) throw InvalidArgument("build_series: truncation_order must be >= 1");
  if (m < 2) throw InvalidArgument("build_series: m must be >= 2");
  if (parity != SeriesParity::generic && !problem.symmetric) {
    throw InvalidArgument("build_series: parity-resolved series need a symmetric problem");
  }

  const SeedPair seed = derive_seed(problem);
  const int bits = std::max(seed.precision_bits(), energy.precision_bits());
  RecurrenceOptions options;
  options.renormalize = false;
  const int depth = std::max({m + 1, truncation_order - 2, 2});
  const RecurrenceTrace trace = run_recurrence(seed, energy.with_precision(bits), depth, options);

  Real f0(0, bits);
  Real f1(0, bits);
  switch (parity) {
    case SeriesParity::even:
      f0 = Real(1, bits);
      break;
    case SeriesParity::odd:
      f1 = Real(1, bits);
      break;
    case SeriesParity::generic:
      std::tie(f0, f1) = generic_boundary(trace, m);
      break;
  }

  std::vector<Real> coeffs;
  coeffs.reserve(static_cast<std::size_t>(truncation_order) + 1);
  coeffs.push_back(f0);
  coeffs.push_back(f1);
  Real n_factorial(1, bits);
  for (int n = 2; n <= truncation_order; ++n) {
    n_factorial *= static_cast<long>(n);
    const auto level = static_cast<std::size_t>(n - 2);
    Real derivative = trace.q_at_zero[level] * f0;
    derivative.add_product(trace.p_at_zero[level], f1);
    coeffs.push_back(derivative / n_factorial);
  }
  coeffs.resize(static_cast<std::size_t>(truncation_order) + 1, Real(0, bits));

  return WavefunctionSeries{energy.with_precision(bits),
                            parity,
                            std::move(coeffs),
                            problem.ansatz,
                            problem.potential,
                            problem.energy_scale,
                            Real(0, bits),
                            truncation_order};
}

WavefunctionSeries normalize(const WavefunctionSeries& series, const Real& quad_tol) {
  if (quad_tol.sign() <= 0) throw InvalidArgument("normalize: quad_tol must be positive");
  WavefunctionSeries out = series;
  const int bits = std::max(series.energy.precision_bits(), quad_tol.precision_bits());

  const auto first = std::find_if(out.f_coeffs.begin(), out.f_coeffs.end(), [](const Real& c) { return !c.is_zero(); });
  if (first == out.f_coeffs.end()) throw NumericError("normalize: f is identically zero");
  if (first->sign() < 0) {
    for (auto& c : out.f_coeffs) c = -c;
  }
  const Poly f = out.f();
  const Real tol = quad_tol.with_precision(bits);
  const Real half_width = quadrature_half_width(out, f, tol);
  const auto integrand = [&](const Real& x) {
    const Real v = unnormalized_psi(out, f, x);
    return v * v;
  };

  // Trapezoid sums with reused nodes; Simpson is (4 T_2n - T_n) / 3.
  long intervals = 32;
  Real width = half_width * 2;
  Real h = width / intervals;
  Real trapezoid = (integrand(-half_width) + integrand(half_width)) / 2;
  for (long i = 1; i < intervals; ++i) trapezoid += integrand(-half_width + h * i);
  trapezoid *= h;

  std::optional<Real> previous_simpson;
  constexpr int kMaxHalvings = 16;
  for (int halving = 0; halving < kMaxHalvings; ++halving) {
    Real midpoints(0, bits);
    const Real half_h = h / 2;
    for (long i = 0; i < intervals; ++i) midpoints += integrand(-half_width + h * i + half_h);
    Real refined = trapezoid / 2 + half_h * midpoints;
    Real simpson = (refined * 4 - trapezoid) / 3;
    if (previous_simpson && abs(simpson - *previous_simpson) < tol * abs(simpson)) {
      out.norm_constant = Real(1, bits) / sqrt(simpson);
      return out;
    }
    previous_simpson = std::move(simpson);
    trapezoid = std::move(refined);
    h = half_h;
    intervals *= 2;
  }
  throw NumericError("normalize: Simpson quadrature did not converge after " + std::to_string(kMaxHalvings) +
                     " halvings");
}

Real evaluate_psi(const WavefunctionSeries& series, const Real& x) {
  const Real norm = series.normalized() ? series.norm_constant : Real(1, series.energy.precision_bits());
  return norm * unnormalized_psi(series, series.f(), x);
}

std::vector<SamplePoint> sample(const WavefunctionSeries& series, const Real& x_min, const Real& x_max, int n_points) {
  if (n_points < 2) throw InvalidArgument("sample: n_points must be >= 2");
  if (!(x_min < x_max)) throw InvalidArgument("sample: x_min must be < x_max");
  const Poly f = series.f();
  const Real norm = series.normalized() ? series.norm_constant : Real(1, series.energy.precision_bits());
  std::vector<SamplePoint> points;
  points.reserve(static_cast<std::size_t>(n_points));
  const Real span = x_max - x_min;
  for (int i = 0; i < n_points; ++i) {
    Real x = x_min + span * static_cast<long>(i) / static_cast<long>(n_points - 1);
    Real psi = norm * unnormalized_psi(series, f, x);
    points.push_back({std::move(x), std::move(psi)});
  }
  return points;
}

std::vector<Real> residual(const WavefunctionSeries& series, const std::vector<Real>& x_points) {
  // psi = N e^{-s} f  =>  -psi'' + (V - lambda E) psi = N e^{-s} (-f'' + 2 s' f' + (s'' - s'^2 + V - lambda E) f)
  const Poly f = series.f();
  const Poly df = poly_diff(f);
  const Poly d2f = poly_diff(df);
  const Poly ds = poly_diff(series.ansatz.s());
  const Poly d2s = poly_diff(ds);
  const Poly shifted = series.potential - Poly::constant(series.energy * series.energy_scale);
  const Poly operator_on_f = -d2f + poly_scale(ds, Real(2, ds.precision_bits())) * df + (d2s - ds * ds + shifted) * f;

  const Real norm = series.normalized() ? series.norm_constant : Real(1, series.energy.precision_bits());
  std::vector<Real> out;
  out.reserve(x_points.size());
  for (const auto& x : x_points) out.push_back(abs(norm * exp(-series.ansatz.s().eval(x)) * operator_on_f.eval(x)));
  return out;
}

}  // namespace atem
