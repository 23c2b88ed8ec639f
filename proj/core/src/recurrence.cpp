#include "atem/recurrence.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace atem {

int recurrence_depth(int m, MConvention convention) noexcept {
  return convention == MConvention::taylor_order ? m - 2 : m;
}

int user_m(int depth, MConvention convention) noexcept {
  return convention == MConvention::taylor_order ? depth + 2 : depth;
}

std::string_view to_string(MConvention convention) noexcept {
  return convention == MConvention::taylor_order ? "taylor-order" : "recurrence-depth";
}

std::optional<MConvention> m_convention_from_string(std::string_view name) noexcept {
  if (name == "recurrence-depth") return MConvention::recurrence_depth;
  if (name == "taylor-order") return MConvention::taylor_order;
  return std::nullopt;
}

std::string_view to_string(Channel channel) noexcept {
  switch (channel) {
    case Channel::determinant:
      return "determinant";
    case Channel::parity_even:
      return "parity-even";
    case Channel::parity_odd:
      return "parity-odd";
  }
  return "unknown";
}

std::optional<Channel> channel_from_string(std::string_view name) noexcept {
  if (name == "determinant") return Channel::determinant;
  if (name == "parity-even") return Channel::parity_even;
  if (name == "parity-odd") return Channel::parity_odd;
  return std::nullopt;
}

namespace {

struct SparseTerm {
  std::size_t power;
  const Real* coeff;
};

std::vector<SparseTerm> nonzero_terms(const Poly& poly) {
  std::vector<SparseTerm> terms;
  const auto coeffs = poly.coeffs();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k].is_zero()) terms.push_back({k, &coeffs[k]});
  }
  return terms;
}

// Working storage for one level: dense coefficients up to `degree`.
struct Level {
  std::vector<Real> coeffs;
  int degree = Poly::kZeroDegree;

  Level(std::size_t capacity, int bits) : coeffs(capacity, Real(0, bits)) {}

  void load(const Poly& poly) {
    degree = poly.degree();
    for (int k = 0; k <= degree; ++k) coeffs[static_cast<std::size_t>(k)] = poly.coeffs()[static_cast<std::size_t>(k)];
  }

  void clear_to(int new_degree) {
    for (int k = 0; k <= new_degree; ++k) coeffs[static_cast<std::size_t>(k)].set_zero();
    degree = new_degree;
  }

  void trim() {
    while (degree >= 0 && coeffs[static_cast<std::size_t>(degree)].is_zero()) --degree;
  }

  [[nodiscard]] Real at_zero(int bits) const { return degree >= 0 ? coeffs.front() : Real(0, bits); }

  [[nodiscard]] Poly to_poly(int bits) const {
    return Poly(std::vector<Real>(coeffs.begin(), coeffs.begin() + (degree + 1)), bits);
  }

  // Index of the largest |coefficient|, or -1 when identically zero.
  [[nodiscard]] int argmax_abs() const {
    int best = -1;
    for (int k = 0; k <= degree; ++k) {
      const auto& c = coeffs[static_cast<std::size_t>(k)];
      if (c.is_zero()) continue;
      if (best < 0 || mpfr_cmpabs(c.raw(), coeffs[static_cast<std::size_t>(best)].raw()) > 0) best = k;
    }
    return best;
  }
};

// Degree bounds for every level, used to size the buffers once.
int max_degree_bound(int dp0, int dq0, int m_max) {
  int dp = dp0;
  int dq = dq0;
  int widest = std::max(dp, dq);
  for (int n = 1; n <= m_max; ++n) {
    const int next_p = std::max({dp0 + dp, dp - 1, dq});
    const int next_q = std::max(dq0 + dp, dq - 1);
    dp = next_p;
    dq = next_q;
    widest = std::max({widest, dp, dq});
  }
  return widest;
}

}  // namespace

RecurrenceTrace run_recurrence(const SeedPair& seed, const Real& energy, int m_max, const RecurrenceOptions& options) {
  if (m_max < 2) throw InvalidArgument("run_recurrence: m_max must be >= 2, got " + std::to_string(m_max));
  const int bits = std::max(seed.precision_bits(), energy.precision_bits());

  const Poly q0 = seed.q0(energy);
  const Poly& p0 = seed.p0;
  const auto p0_terms = nonzero_terms(p0);
  const auto q0_terms = nonzero_terms(q0);

  const int widest = std::max(0, max_degree_bound(p0.degree(), q0.degree(), m_max));
  const auto capacity = static_cast<std::size_t>(widest) + 2;

  std::vector<Real> integers;
  integers.reserve(capacity);
  for (std::size_t k = 0; k < capacity; ++k) integers.emplace_back(static_cast<long>(k), bits);

  const long threshold_bits = options.renorm_threshold_bits.value_or(bits / 2);
  const Real threshold = Real::pow2(threshold_bits, bits);

  RecurrenceTrace trace;
  trace.energy = energy;
  trace.m_max = m_max;
  trace.symmetric = seed.symmetric;
  trace.p_at_zero.reserve(static_cast<std::size_t>(m_max) + 1);
  trace.q_at_zero.reserve(static_cast<std::size_t>(m_max) + 1);

  Level p(capacity, bits);
  Level q(capacity, bits);
  Level next_p(capacity, bits);
  Level next_q(capacity, bits);
  p.load(p0);
  q.load(q0);

  trace.p_at_zero.push_back(p.at_zero(bits));
  trace.q_at_zero.push_back(q.at_zero(bits));
  if (options.retain_polys) {
    trace.p_polys.push_back(p.to_poly(bits));
    trace.q_polys.push_back(q.to_poly(bits));
  }

  for (int n = 1; n <= m_max; ++n) {
    const int dp0 = p0.degree();
    const int dq0 = q0.degree();
    const int bound_p = std::max({p.degree >= 0 && dp0 >= 0 ? dp0 + p.degree : -1, p.degree - 1, q.degree});
    const int bound_q = std::max({p.degree >= 0 && dq0 >= 0 ? dq0 + p.degree : -1, q.degree - 1});
    next_p.clear_to(bound_p);
    next_q.clear_to(bound_q);

    for (int i = 0; i <= p.degree; ++i) {
      const Real& pi = p.coeffs[static_cast<std::size_t>(i)];
      if (pi.is_zero()) continue;
      for (const auto& term : p0_terms) next_p.coeffs[i + term.power].add_product(*term.coeff, pi);
      for (const auto& term : q0_terms) next_q.coeffs[i + term.power].add_product(*term.coeff, pi);
      if (i >= 1) next_p.coeffs[static_cast<std::size_t>(i - 1)].add_product(pi, integers[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i <= q.degree; ++i) {
      const Real& qi = q.coeffs[static_cast<std::size_t>(i)];
      if (qi.is_zero()) continue;
      next_p.coeffs[static_cast<std::size_t>(i)] += qi;
      if (i >= 1) next_q.coeffs[static_cast<std::size_t>(i - 1)].add_product(qi, integers[static_cast<std::size_t>(i)]);
    }
    next_p.trim();
    next_q.trim();

    if (options.renormalize) {
      const int ip = next_p.argmax_abs();
      const int iq = next_q.argmax_abs();
      const Real* largest = nullptr;
      if (ip >= 0) largest = &next_p.coeffs[static_cast<std::size_t>(ip)];
      if (iq >= 0 && (largest == nullptr || mpfr_cmpabs(next_q.coeffs[static_cast<std::size_t>(iq)].raw(), largest->raw()) > 0)) {
        largest = &next_q.coeffs[static_cast<std::size_t>(iq)];
      }
      if (largest != nullptr && mpfr_cmpabs(largest->raw(), threshold.raw()) > 0) {
        Real factor = Real(1, bits) / abs(*largest);
        for (int k = 0; k <= next_p.degree; ++k) next_p.coeffs[static_cast<std::size_t>(k)] *= factor;
        for (int k = 0; k <= next_q.degree; ++k) next_q.coeffs[static_cast<std::size_t>(k)] *= factor;
        trace.renorm_log.push_back({n, std::move(factor)});
      }
    }

    std::swap(p, next_p);
    std::swap(q, next_q);
    trace.p_at_zero.push_back(p.at_zero(bits));
    trace.q_at_zero.push_back(q.at_zero(bits));
    if (options.retain_polys) {
      trace.p_polys.push_back(p.to_poly(bits));
      trace.q_polys.push_back(q.to_poly(bits));
    }
  }
  return trace;
}

Real quantization_determinant(const RecurrenceTrace& trace, int m) {
  if (m < 1 || m > trace.m_max) {
    throw InvalidArgument("quantization_determinant: m=" + std::to_string(m) + " outside [1, " +
                          std::to_string(trace.m_max) + "]");
  }
  const auto at = [](const std::vector<Real>& values, int n) -> const Real& {
    return values[static_cast<std::size_t>(n)];
  };
  Real delta = at(trace.q_at_zero, m) * at(trace.p_at_zero, m - 1);
  delta -= at(trace.p_at_zero, m) * at(trace.q_at_zero, m - 1);
  return delta;
}

Real parity_quantization(const RecurrenceTrace& trace, Parity parity, int m) {
  if (!trace.symmetric) {
    throw InvalidArgument("parity_quantization: parity channels need a symmetric potential and ansatz");
  }
  if (m < 2 || m > trace.m_max || m % 2 != 0) {
    throw InvalidArgument("parity_quantization: m must be even and in [2, " + std::to_string(trace.m_max) +
                          "], got " + std::to_string(m));
  }
  return parity == Parity::even ? trace.q_at_zero[static_cast<std::size_t>(m)]
                                : trace.p_at_zero[static_cast<std::size_t>(m - 1)];
}

Real channel_value(const RecurrenceTrace& trace, Channel channel, int m) {
  switch (channel) {
    case Channel::determinant:
      return quantization_determinant(trace, m);
    case Channel::parity_even:
      return parity_quantization(trace, Parity::even, m);
    case Channel::parity_odd:
      return parity_quantization(trace, Parity::odd, m);
  }
  throw InvalidArgument("channel_value: unknown channel");
}

}  // namespace atem
