#include "atem/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "parallel.hpp"

namespace atem {

std::string_view to_string(StateParity parity) noexcept {
  switch (parity) {
    case StateParity::even:
      return "even";
    case StateParity::odd:
      return "odd";
    case StateParity::unknown:
      return "unknown";
  }
  return "unknown";
}

void ScanConfig::validate(int precision_bits) const {
  if (!(e_min < e_max)) throw InvalidArgument("scan: e_min must be < e_max");
  if (grid_points < 16) throw InvalidArgument("scan: grid_points must be >= 16, got " + std::to_string(grid_points));
  if (m_schedule.empty()) throw InvalidArgument("scan: m_schedule must not be empty");
  const auto depths = depth_schedule();
  for (std::size_t i = 0; i < m_schedule.size(); ++i) {
    if (depths[i] < 2) {
      throw InvalidArgument("scan: every m in m_schedule must be >= " +
                            std::to_string(user_m(2, m_convention)) + " (" + std::string(to_string(m_convention)) +
                            ")");
    }
    if (i > 0 && m_schedule[i] <= m_schedule[i - 1]) {
      throw InvalidArgument("scan: m_schedule must be strictly ascending");
    }
  }
  if (match_relative.sign() < 0 || match_absolute.sign() < 0 || (match_relative.is_zero() && match_absolute.is_zero())) {
    throw InvalidArgument("scan: match window must be non-negative and not identically zero");
  }
  const int max_digits = decimal_digits_for_bits(precision_bits);
  if (target_digits < 1 || target_digits > max_digits) {
    throw InvalidArgument("scan: target_digits must be in [1, " + std::to_string(max_digits) + "] at " +
                          std::to_string(precision_bits) + " bits");
  }
  if (bisection_tol && bisection_tol->sign() <= 0) throw InvalidArgument("scan: bisection_tol must be positive");
  if (max_grid_refinements < 0) throw InvalidArgument("scan: max_grid_refinements must be >= 0");
  if (channel && *channel != Channel::determinant) {
    for (int m : depths) {
      if (m % 2 != 0) throw InvalidArgument("scan: parity channels need even m, got " + std::to_string(m));
    }
  }
}

std::vector<int> ScanConfig::depth_schedule() const {
  std::vector<int> depths;
  depths.reserve(m_schedule.size());
  for (int m : m_schedule) depths.push_back(recurrence_depth(m, m_convention));
  return depths;
}

int stable_digits_between(const Real& a, const Real& b, int cap) {
  const Real diff = abs(b - a);
  if (diff.is_zero()) return cap;
  const Real scale = max(abs(b), Real(1, b.precision_bits()));
  const double digits = std::floor(-log10(diff / scale).to_double());
  if (digits <= 0) return 0;
  return static_cast<int>(std::min<double>(digits, cap));
}

Real potential_minimum(const ProblemSpec& problem, int samples) {
  const int bits = problem.precision_bits();
  const Real half_width(10, bits);
  Real lowest = problem.potential.eval_at_zero();
  for (int i = 0; i < samples; ++i) {
    const Real x = -half_width + half_width * 2 * static_cast<long>(i) / static_cast<long>(samples - 1);
    lowest = min(lowest, problem.potential.eval(x));
  }
  return lowest / problem.energy_scale;
}

namespace {

int working_bits(const SeedPair& seed, const ScanConfig& config) {
  return std::max({seed.precision_bits(), config.e_min.precision_bits(), config.e_max.precision_bits()});
}

std::vector<Real> energy_grid(const ScanConfig& config, int points, int bits) {
  const Real lo = config.e_min.with_precision(bits);
  const Real span = config.e_max.with_precision(bits) - lo;
  std::vector<Real> grid;
  grid.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid.push_back(lo + span * static_cast<long>(i) / static_cast<long>(points - 1));
  return grid;
}

Real evaluate_channel(const SeedPair& seed, const Real& energy, int m, Channel channel) {
  return channel_value(run_recurrence(seed, energy, m), channel, m);
}

std::vector<Bracket> brackets_from_signs(const std::vector<Real>& grid, const std::vector<int>& signs) {
  std::vector<Bracket> brackets;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (signs[i] == 0) {
      brackets.push_back({grid[i], grid[i]});
      continue;
    }
    if (i + 1 < grid.size() && signs[i + 1] != 0 && signs[i] != signs[i + 1]) {
      brackets.push_back({grid[i], grid[i + 1]});
    }
  }
  return brackets;
}

Real default_tol(const ScanConfig& config, const Bracket& bracket) {
  if (config.bisection_tol) return *config.bisection_tol;
  const int bits = bracket.lo.precision_bits();
  const Real scale = max(Real(1, bits), max(abs(bracket.lo), abs(bracket.hi)));
  Real tol = scale * pow(Real(10, bits), -(config.target_digits + 4));
  // Never ask for more than the working precision can resolve.
  const Real floor_tol = scale * Real::pow2(-(bits - 16), bits);
  return max(tol, floor_tol);
}

// Turns a grid bracket into a refined root, widening exact grid zeros by one
// spacing on each side.
RefinedRoot resolve_bracket(const SeedPair& seed, Bracket bracket, int m, Channel channel, const Real& spacing,
                            const Real& tol) {
  if (!bracket.degenerate()) return refine_root_bracketed(seed, bracket, m, channel, tol);
  const Real center = bracket.lo;
  Bracket widened{center - spacing, center + spacing};
  const int lo_sign = evaluate_channel(seed, widened.lo, m, channel).sign();
  const int hi_sign = evaluate_channel(seed, widened.hi, m, channel).sign();
  if (lo_sign != 0 && hi_sign != 0 && lo_sign != hi_sign) {
    return refine_root_bracketed(seed, widened, m, channel, tol);
  }
  return {center, std::move(widened)};
}

struct Track {
  std::vector<ConvergenceStep> steps;
  Bracket last_bracket;
  bool alive = true;
};

Real match_window(const ScanConfig& config, const Real& energy) {
  return max(abs(energy) * config.match_relative, config.match_absolute);
}

struct ChannelOutcome {
  std::vector<Track> confirmed;
  bool count_stable = true;
};

ChannelOutcome track_channel(const SeedPair& seed, const ScanConfig& config, Channel channel, int grid_points) {
  const int bits = working_bits(seed, config);
  // Agreement finer than the bisection width is not information.
  int cap = decimal_digits_for_bits(bits);
  if (config.bisection_tol) {
    cap = std::min(cap, std::max(0, static_cast<int>(std::floor(-log10(*config.bisection_tol).to_double()))));
  } else {
    cap = std::min(cap, config.target_digits + 4);
  }
  const auto schedule = config.depth_schedule();
  const int m_top = schedule.back();

  const std::vector<Real> grid = energy_grid(config, grid_points, bits);
  const Real spacing = grid[1] - grid[0];

  // One recurrence per grid energy serves every depth in the schedule.
  std::vector<std::vector<int>> signs(schedule.size(), std::vector<int>(grid.size(), 0));
  detail::parallel_for(grid.size(), config.threads, [&](std::size_t i) {
    const RecurrenceTrace trace = run_recurrence(seed, grid[i], m_top);
    for (std::size_t s = 0; s < schedule.size(); ++s) signs[s][i] = channel_value(trace, channel, schedule[s]).sign();
  });

  std::vector<std::vector<RefinedRoot>> roots(schedule.size());
  for (std::size_t s = 0; s < schedule.size(); ++s) {
    const auto brackets = brackets_from_signs(grid, signs[s]);
    std::vector<std::optional<RefinedRoot>> refined(brackets.size());
    detail::parallel_for(brackets.size(), config.threads, [&](std::size_t b) {
      refined[b] = resolve_bracket(seed, brackets[b], schedule[s], channel, spacing, default_tol(config, brackets[b]));
    });
    for (auto& r : refined) roots[s].push_back(std::move(*r));
    std::sort(roots[s].begin(), roots[s].end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });
  }

  std::vector<Track> tracks;
  for (auto& root : roots.front()) {
    Track t;
    t.steps.push_back({schedule.front(), root.energy, 0});
    t.last_bracket = root.bracket;
    tracks.push_back(std::move(t));
  }

  ChannelOutcome outcome;
  for (std::size_t s = 1; s < schedule.size(); ++s) {
    auto& current = roots[s];
    std::vector<bool> claimed(current.size(), false);

    // Greedy nearest pairing, closest pairs first.
    struct Candidate {
      Real distance;
      std::size_t track;
      std::size_t root;
    };
    std::vector<Candidate> candidates;
    for (std::size_t t = 0; t < tracks.size(); ++t) {
      if (!tracks[t].alive) continue;
      const Real& previous = tracks[t].steps.back().energy;
      const Real window = match_window(config, previous);
      for (std::size_t r = 0; r < current.size(); ++r) {
        Real distance = abs(current[r].energy - previous);
        if (distance <= window) candidates.push_back({std::move(distance), t, r});
      }
    }
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) { return a.distance < b.distance; });

    std::vector<bool> extended(tracks.size(), false);
    for (const auto& c : candidates) {
      if (extended[c.track] || claimed[c.root]) continue;
      extended[c.track] = true;
      claimed[c.root] = true;
      auto& track = tracks[c.track];
      const int digits = stable_digits_between(track.steps.back().energy, current[c.root].energy, cap);
      track.steps.push_back({schedule[s], current[c.root].energy, digits});
      track.last_bracket = current[c.root].bracket;
    }
    for (std::size_t t = 0; t < tracks.size(); ++t) {
      if (tracks[t].alive && !extended[t]) tracks[t].alive = false;  // spurious at the previous depth
    }

    const bool last = s + 1 == schedule.size();
    for (std::size_t r = 0; r < current.size(); ++r) {
      if (claimed[r]) continue;
      if (last) {
        // A root first seen at the deepest m is unconfirmed. Tolerate it only
        // when it sits at the edge of the range, where it may have crossed in.
        const Real window = match_window(config, current[r].energy);
        const bool at_edge = current[r].energy - config.e_min <= window || config.e_max - current[r].energy <= window;
        if (!at_edge) outcome.count_stable = false;
        continue;
      }
      Track t;
      t.steps.push_back({schedule[s], current[r].energy, 0});
      t.last_bracket = current[r].bracket;
      tracks.push_back(std::move(t));
    }
  }

  std::sort(tracks.begin(), tracks.end(),
            [](const auto& a, const auto& b) { return a.steps.back().energy < b.steps.back().energy; });
  for (auto& track : tracks) {
    if (!track.alive) continue;
    if (schedule.size() > 1 && track.steps.size() < 2) continue;
    if (track.steps.back().m != m_top) continue;
    outcome.confirmed.push_back(std::move(track));
  }
  return outcome;
}

StateParity parity_of(Channel channel) {
  switch (channel) {
    case Channel::parity_even:
      return StateParity::even;
    case Channel::parity_odd:
      return StateParity::odd;
    case Channel::determinant:
      return StateParity::unknown;
  }
  return StateParity::unknown;
}

}  // namespace

std::vector<Bracket> scan_brackets(const SeedPair& seed, const ScanConfig& config, int m, Channel channel) {
  const int bits = working_bits(seed, config);
  config.validate(bits);
  const std::vector<Real> grid = energy_grid(config, config.grid_points, bits);
  std::vector<int> signs(grid.size(), 0);
  detail::parallel_for(grid.size(), config.threads,
                       [&](std::size_t i) { signs[i] = evaluate_channel(seed, grid[i], m, channel).sign(); });
  return brackets_from_signs(grid, signs);
}

std::vector<Bracket> scan_brackets(const SeedPair& seed, const ScanConfig& config, int m) {
  if (!config.channel) throw InvalidArgument("scan_brackets: config does not name a channel");
  return scan_brackets(seed, config, m, *config.channel);
}

RefinedRoot refine_root_bracketed(const SeedPair& seed, const Bracket& bracket, int m, Channel channel,
                                  const Real& tol) {
  if (tol.sign() <= 0) throw InvalidArgument("refine_root: tol must be positive");
  if (!(bracket.lo <= bracket.hi)) throw InvalidArgument("refine_root: bracket must satisfy lo <= hi");
  Real lo = bracket.lo;
  Real hi = bracket.hi;
  const int lo_sign = evaluate_channel(seed, lo, m, channel).sign();
  if (lo_sign == 0) return {lo, {lo, hi}};
  const int hi_sign = evaluate_channel(seed, hi, m, channel).sign();
  if (hi_sign == 0) return {hi, {lo, hi}};
  if (lo_sign == hi_sign) {
    throw NumericError("refine_root: no sign change on [" + lo.to_string(12) + ", " + hi.to_string(12) + "] at m=" +
                       std::to_string(m));
  }
  while (hi - lo >= tol) {
    Real mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;  // precision exhausted
    const int mid_sign = evaluate_channel(seed, mid, m, channel).sign();
    if (mid_sign == 0) return {mid, {lo, hi}};
    if (mid_sign == lo_sign) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  Real energy = (lo + hi) / 2;
  return {std::move(energy), {std::move(lo), std::move(hi)}};
}

Real refine_root(const SeedPair& seed, const Bracket& bracket, int m, Channel channel, const Real& tol) {
  return refine_root_bracketed(seed, bracket, m, channel, tol).energy;
}

std::vector<EigenvalueRecord> converge_spectrum(const ProblemSpec& problem, const ScanConfig& config) {
  const SeedPair seed = derive_seed(problem);
  const int bits = working_bits(seed, config);
  config.validate(bits);

  std::vector<Channel> channels;
  if (config.channel) {
    channels.push_back(*config.channel);
  } else if (problem.symmetric) {
    for (int m : config.depth_schedule()) {
      if (m % 2 != 0) {
        throw InvalidArgument("scan: automatic parity channels need an even recurrence depth, got " + std::to_string(m));
      }
    }
    channels = {Channel::parity_even, Channel::parity_odd};
  } else {
    channels.push_back(Channel::determinant);
  }
  if (!problem.symmetric && (channels.front() != Channel::determinant)) {
    throw InvalidArgument("scan: parity channels need a symmetric problem");
  }

  std::vector<EigenvalueRecord> records;
  for (Channel channel : channels) {
    int grid_points = config.grid_points;
    ChannelOutcome outcome = track_channel(seed, config, channel, grid_points);
    for (int attempt = 0; !outcome.count_stable && attempt < config.max_grid_refinements; ++attempt) {
      grid_points = 2 * grid_points - 1;
      outcome = track_channel(seed, config, channel, grid_points);
    }
    if (!outcome.count_stable) {
      throw NumericError("scan: root count differs between m=" +
                         std::to_string(config.m_schedule[config.m_schedule.size() - 2]) + " and m=" +
                         std::to_string(config.m_schedule.back()) + " in channel " + std::string(to_string(channel)) +
                         " after " + std::to_string(config.max_grid_refinements) + " grid refinements");
    }

    int index = 0;
    for (auto& track : outcome.confirmed) {
      EigenvalueRecord record;
      record.index = index++;
      record.parity = parity_of(channel);
      record.channel = channel;
      record.energy = track.steps.back().energy;
      record.bracket = std::move(track.last_bracket);
      for (auto& step : track.steps) step.m = user_m(step.m, config.m_convention);
      record.m_used = track.steps.back().m;
      record.stable_digits = track.steps.size() > 1 ? track.steps.back().stable_digits
                                                    : decimal_digits_for_bits(bits);
      record.converged = record.stable_digits >= config.target_digits;
      record.history = std::move(track.steps);
      records.push_back(std::move(record));
    }
  }

  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });
  for (std::size_t i = 0; i < records.size(); ++i) records[i].state = static_cast<int>(i);
  return records;
}

}  // namespace atem
