#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "atem/poly.hpp"
#include "atem/problem.hpp"

namespace atem {

enum class Parity { even, odd };

/// Which function of E is driven to zero to quantize the spectrum.
enum class Channel {
  determinant,  ///< q_m(0) p_{m-1}(0) - p_m(0) q_{m-1}(0); any problem
  parity_even,  ///< q_m(0); symmetric problems, f(0)=1, f'(0)=0
  parity_odd,   ///< p_{m-1}(0); symmetric problems, f(0)=0, f'(0)=1
};

/// How a user-facing iteration count m maps onto the recurrence.
///
/// recurrence_depth: quantize with levels m and m-1 of the recurrence.
/// taylor_order: m is the order at which the Taylor series of f is cut, so
/// the highest derivative involved is f^(m) = p_{m-2} f' + q_{m-2} f and the
/// recurrence runs to depth m - 2.
enum class MConvention { recurrence_depth, taylor_order };

/// Recurrence depth for a user-facing m.
int recurrence_depth(int m, MConvention convention) noexcept;
/// Inverse of recurrence_depth.
int user_m(int depth, MConvention convention) noexcept;

std::string_view to_string(MConvention convention) noexcept;
std::optional<MConvention> m_convention_from_string(std::string_view name) noexcept;

std::string_view to_string(Channel channel) noexcept;
std::optional<Channel> channel_from_string(std::string_view name) noexcept;

struct RenormEvent {
  int step = 0;
  /// Positive factor the pair (p_n, q_n) was multiplied by.
  Real factor;
};

struct RecurrenceOptions {
  bool retain_polys = false;
  bool renormalize = true;
  /// Rescale once max |coeff| exceeds 2^renorm_threshold_bits. Defaults to
  /// half the working precision.
  std::optional<long> renorm_threshold_bits;
};

/// Values p_n(0), q_n(0) for n = 0..m_max at one fixed energy.
///
/// When the overflow guard fires at step n, (p_n, q_n) and every later level
/// carry the logged positive factor; earlier entries are untouched. Each
/// quantization function is homogeneous of degree one in the newest level
/// it reads, so its sign is unaffected.
struct RecurrenceTrace {
  Real energy;
  int m_max = 0;
  bool symmetric = false;
  std::vector<Real> p_at_zero;
  std::vector<Real> q_at_zero;
  std::vector<RenormEvent> renorm_log;
  /// Populated only with RecurrenceOptions::retain_polys.
  std::vector<Poly> p_polys;
  std::vector<Poly> q_polys;
};

/// Runs  p_n = p0 p_{n-1} + p'_{n-1} + q_{n-1},  q_n = q0 p_{n-1} + q'_{n-1}
/// at the numeric energy E up to n = m_max.
RecurrenceTrace run_recurrence(const SeedPair& seed, const Real& energy, int m_max,
                               const RecurrenceOptions& options = {});

/// delta_m(E) = q_m(0) p_{m-1}(0) - p_m(0) q_{m-1}(0). Only its sign and zero
/// crossings are meaningful.
Real quantization_determinant(const RecurrenceTrace& trace, int m);

/// q_m(0) for even parity, p_{m-1}(0) for odd parity; m must be even and the
/// trace must come from a symmetric problem.
Real parity_quantization(const RecurrenceTrace& trace, Parity parity, int m);

/// Dispatches to one of the two functions above.
Real channel_value(const RecurrenceTrace& trace, Channel channel, int m);

}  // namespace atem
