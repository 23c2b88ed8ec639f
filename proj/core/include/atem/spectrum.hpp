#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "atem/problem.hpp"
#include "atem/recurrence.hpp"

namespace atem {

enum class StateParity { even, odd, unknown };

std::string_view to_string(StateParity parity) noexcept;

struct ScanConfig {
  Real e_min;
  Real e_max;
  int grid_points = 512;
  std::vector<int> m_schedule{30, 40, 60, 80, 100, 120};
  /// Interpretation of the values in m_schedule and of EigenvalueRecord::m_used.
  MConvention m_convention = MConvention::recurrence_depth;
  int target_digits = 15;
  /// Empty selects automatically: both parity channels for symmetric
  /// problems, the determinant otherwise.
  std::optional<Channel> channel;
  /// Absolute bisection width. Defaults to 10^-(target_digits + 4) scaled by
  /// max(1, |E|).
  std::optional<Real> bisection_tol;
  /// Roots at consecutive depths pair up when they differ by at most
  /// max(match_relative * |E|, match_absolute).
  Real match_relative = Real::from_string("1e-3");
  Real match_absolute = Real::from_string("1e-6");
  /// Grid halvings tried when the two deepest m disagree on the root count.
  int max_grid_refinements = 3;
  /// Worker threads for grid and bracket evaluation; 0 uses the hardware
  /// concurrency.
  int threads = 0;

  /// Throws InvalidArgument on broken invariants.
  void validate(int precision_bits) const;
  /// m_schedule translated to recurrence depths.
  [[nodiscard]] std::vector<int> depth_schedule() const;
};

struct Bracket {
  Real lo;
  Real hi;
  /// A grid point where the channel function is exactly zero.
  [[nodiscard]] bool degenerate() const { return lo == hi; }
};

/// Energy of one tracked root at one depth of the m schedule.
struct ConvergenceStep {
  int m = 0;
  Real energy;
  /// Digits shared with the previous step; 0 for the first step.
  int stable_digits = 0;
};

struct EigenvalueRecord {
  /// Ordinal within its channel.
  int index = 0;
  /// Ordinal in the merged, energy-sorted spectrum.
  int state = 0;
  StateParity parity = StateParity::unknown;
  Channel channel = Channel::determinant;
  Real energy;
  Bracket bracket;
  int m_used = 0;
  /// Digits shared by the two deepest m, capped at the bisection resolution
  /// (target_digits + 4 unless bisection_tol is given).
  int stable_digits = 0;
  bool converged = false;
  std::vector<ConvergenceStep> history;
};

/// floor(-log10(|b - a| / max(|b|, 1))), clamped to [0, cap]; equal inputs
/// yield `cap`.
int stable_digits_between(const Real& a, const Real& b, int cap);

/// Lowest value of V / energy_scale sampled on [-10, 10]; a safe lower
/// bound for the spectrum.
Real potential_minimum(const ProblemSpec& problem, int samples = 4001);

/// Sign changes of the channel function over a uniform grid of
/// config.grid_points energies including both endpoints. Exact zeros on a
/// grid point come back as degenerate brackets.
std::vector<Bracket> scan_brackets(const SeedPair& seed, const ScanConfig& config, int m, Channel channel);
/// As above with the channel taken from the config, which must name one.
std::vector<Bracket> scan_brackets(const SeedPair& seed, const ScanConfig& config, int m);

/// Bisects until hi - lo < tol and returns the midpoint. The channel function
/// must have opposite signs (or an exact zero) at the bracket ends.
Real refine_root(const SeedPair& seed, const Bracket& bracket, int m, Channel channel, const Real& tol);

/// Like refine_root but also reports the final bracket.
struct RefinedRoot {
  Real energy;
  Bracket bracket;
};
RefinedRoot refine_root_bracketed(const SeedPair& seed, const Bracket& bracket, int m, Channel channel,
                                  const Real& tol);

/// Scans and refines at every depth in the schedule, pairs roots across
/// consecutive depths and drops those that fail to reappear. Records are
/// sorted by energy.
std::vector<EigenvalueRecord> converge_spectrum(const ProblemSpec& problem, const ScanConfig& config);

}  // namespace atem
