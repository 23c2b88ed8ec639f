#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "atem/recurrence.hpp"

using atem::Poly;
using atem::Real;

namespace {

Poly decimals(std::initializer_list<const char*> values) {
  std::vector<Real> coeffs;
  for (const char* v : values) coeffs.push_back(Real::from_string(v));
  return Poly(std::move(coeffs));
}

atem::SeedPair harmonic_seed() {
  return atem::derive_seed(atem::ProblemSpec::make(decimals({"0", "0", "1"}),
                                                   atem::AnsatzExponent::gaussian_quartic(Real(1), Real(0))));
}

atem::SeedPair quartic_seed() {
  return atem::derive_seed(atem::ProblemSpec::make(decimals({"0", "0", "1", "0", "0.1"}),
                                                   atem::AnsatzExponent::gaussian_quartic(Real(4), Real(0))));
}

atem::SeedPair sextic_seed() {
  return atem::derive_seed(atem::ProblemSpec::make(decimals({"1", "0", "-2", "0", "-2", "0", "1"}),
                                                   atem::AnsatzExponent::gaussian_quartic(Real(4), Real(1)), 2));
}

// Straightforward dense recurrence in long double, written independently of
// the library's sparse, buffered implementation.
using DPoly = std::vector<long double>;

DPoly d_add(const DPoly& a, const DPoly& b) {
  DPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}
DPoly d_mul(const DPoly& a, const DPoly& b) {
  if (a.empty() || b.empty()) return {};
  DPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}
DPoly d_diff(const DPoly& a) {
  if (a.size() <= 1) return {};
  DPoly out(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = static_cast<long double>(i) * a[i];
  return out;
}
DPoly to_d(const Poly& p) {
  DPoly out;
  for (const auto& c : p.coeffs()) out.push_back(static_cast<long double>(c.to_double()));
  return out;
}

}  // namespace

// With s = x^2/2 and V = x^2: p1 = 4x^2 + 3 - E, q1 = 2x(1 - E),
// q2(0) = (1 - E)(5 - E), p2(0) = 0, so delta_2 = (1 - E)(3 - E)(5 - E).
TEST(Recurrence, HarmonicHandExpansion) {
  const auto seed = harmonic_seed();
  for (const char* e : {"0", "0.5", "1", "2.25", "3", "4.75", "5", "7"}) {
    const Real E = Real::from_string(e);
    const auto trace = atem::run_recurrence(seed, E, 2);
    EXPECT_EQ(trace.p_at_zero[1], Real(3) - E);
    EXPECT_EQ(trace.q_at_zero[2], (Real(1) - E) * (Real(5) - E));
    EXPECT_TRUE(trace.p_at_zero[2].is_zero());
    EXPECT_EQ(atem::quantization_determinant(trace, 2), (Real(1) - E) * (Real(3) - E) * (Real(5) - E)) << e;
  }
}

TEST(Recurrence, MatchesIndependentDenseRecurrence) {
  for (const auto& seed : {quartic_seed(), sextic_seed()}) {
    const double energy = 2.7;
    const auto trace = atem::run_recurrence(seed, Real::from_double(energy), 12, {.renormalize = false});
    const DPoly p0 = to_d(seed.p0);
    const DPoly q0 = to_d(seed.q0(Real::from_double(energy)));
    DPoly p = p0;
    DPoly q = q0;
    for (int n = 1; n <= 12; ++n) {
      DPoly next_p = d_add(d_add(d_mul(p0, p), d_diff(p)), q);
      DPoly next_q = d_add(d_mul(q0, p), d_diff(q));
      p = std::move(next_p);
      q = std::move(next_q);
      const long double p_ref = p.empty() ? 0 : p[0];
      const long double q_ref = q.empty() ? 0 : q[0];
      const auto i = static_cast<std::size_t>(n);
      EXPECT_NEAR(trace.p_at_zero[i].to_double(), static_cast<double>(p_ref), 1e-12 * (1 + std::fabs(static_cast<double>(p_ref))));
      EXPECT_NEAR(trace.q_at_zero[i].to_double(), static_cast<double>(q_ref), 1e-12 * (1 + std::fabs(static_cast<double>(q_ref))));
    }
  }
}

TEST(Recurrence, RetainedPolynomialsEvaluateToTheStoredValues) {
  const auto seed = quartic_seed();
  const auto trace = atem::run_recurrence(seed, Real(2), 8, {.retain_polys = true, .renormalize = false});
  ASSERT_EQ(trace.p_polys.size(), 9u);
  for (std::size_t n = 0; n <= 8; ++n) {
    EXPECT_EQ(trace.p_polys[n].eval_at_zero(), trace.p_at_zero[n]);
    EXPECT_EQ(trace.q_polys[n].eval_at_zero(), trace.q_at_zero[n]);
  }
  // p_1 = p0 p0 + p0' + q0, checked with the library's own polynomial algebra.
  const Poly q0 = seed.q0(Real(2));
  EXPECT_EQ(trace.p_polys[1], seed.p0 * seed.p0 + poly_diff(seed.p0) + q0);
  EXPECT_EQ(trace.q_polys[1], q0 * seed.p0 + poly_diff(q0));
}

// For symmetric problems p_n has the parity of n + 1 and q_n that of n, so
// p_n(0) vanishes for even n and q_n(0) for odd n -- exactly, not approximately.
TEST(Recurrence, ParityAlternationIsExact) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> energies(-1, 30);
  for (const auto& seed : {harmonic_seed(), quartic_seed(), sextic_seed()}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto trace = atem::run_recurrence(seed, Real::from_double(energies(rng)), 40);
      for (std::size_t n = 0; n <= 40; ++n) {
        if (n % 2 == 0) {
          EXPECT_TRUE(trace.p_at_zero[n].is_zero()) << n;
        } else {
          EXPECT_TRUE(trace.q_at_zero[n].is_zero()) << n;
        }
      }
    }
  }
  const auto trace = atem::run_recurrence(quartic_seed(), Real(3), 10, {.retain_polys = true});
  for (std::size_t n = 0; n <= 10; ++n) {
    EXPECT_TRUE(n % 2 == 0 ? trace.p_polys[n].is_odd() : trace.p_polys[n].is_even());
    EXPECT_TRUE(n % 2 == 0 ? trace.q_polys[n].is_even() : trace.q_polys[n].is_odd());
  }
}

TEST(Recurrence, RenormalizationPreservesChannelSigns) {
  const auto seed = quartic_seed();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> energies(0, 25);
  for (int trial = 0; trial < 20; ++trial) {
    const Real E = Real::from_double(energies(rng));
    const auto plain = atem::run_recurrence(seed, E, 60, {.renormalize = false});
    const auto forced = atem::run_recurrence(seed, E, 60, {.renorm_threshold_bits = 4});
    EXPECT_FALSE(forced.renorm_log.empty());
    for (int m = 2; m <= 60; m += 2) {
      for (auto channel : {atem::Channel::determinant, atem::Channel::parity_even, atem::Channel::parity_odd}) {
        EXPECT_EQ(atem::channel_value(plain, channel, m).sign(), atem::channel_value(forced, channel, m).sign());
      }
    }
  }
}

TEST(Recurrence, RenormalizationFactorsAreLogged) {
  const auto seed = quartic_seed();
  const Real E(5);
  const auto plain = atem::run_recurrence(seed, E, 30, {.renormalize = false});
  const auto forced = atem::run_recurrence(seed, E, 30, {.renorm_threshold_bits = 8});
  // Undo the logged factors and recover the plain values.
  Real accumulated(1);
  std::size_t next = 0;
  for (int n = 0; n <= 30; ++n) {
    while (next < forced.renorm_log.size() && forced.renorm_log[next].step == n) {
      EXPECT_GT(forced.renorm_log[next].factor.sign(), 0);
      accumulated *= forced.renorm_log[next].factor;
      ++next;
    }
    const auto i = static_cast<std::size_t>(n);
    const Real restored = forced.q_at_zero[i] / accumulated;
    EXPECT_LT(abs(restored - plain.q_at_zero[i]), abs(plain.q_at_zero[i]) * Real::from_string("1e-60") + Real::from_string("1e-60"));
  }
}

TEST(Recurrence, ArgumentChecks) {
  const auto seed = quartic_seed();
  EXPECT_THROW(atem::run_recurrence(seed, Real(1), 1), atem::InvalidArgument);
  const auto trace = atem::run_recurrence(seed, Real(1), 10);
  EXPECT_THROW(atem::parity_quantization(trace, atem::Parity::even, 9), atem::InvalidArgument);
  EXPECT_THROW(atem::quantization_determinant(trace, 11), atem::InvalidArgument);

  const auto asym = atem::derive_seed(atem::ProblemSpec::make(
      decimals({"0", "1", "1"}), atem::AnsatzExponent::gaussian_quartic(Real(1), Real(0))));
  const auto asym_trace = atem::run_recurrence(asym, Real(1), 4);
  EXPECT_THROW(atem::parity_quantization(asym_trace, atem::Parity::odd, 4), atem::InvalidArgument);
}

TEST(Recurrence, MConventionConversions) {
  using atem::MConvention;
  EXPECT_EQ(atem::recurrence_depth(120, MConvention::taylor_order), 118);
  EXPECT_EQ(atem::recurrence_depth(120, MConvention::recurrence_depth), 120);
  EXPECT_EQ(atem::user_m(118, MConvention::taylor_order), 120);
  EXPECT_EQ(atem::m_convention_from_string("taylor-order"), MConvention::taylor_order);
  EXPECT_FALSE(atem::m_convention_from_string("depth").has_value());
  EXPECT_EQ(atem::channel_from_string("parity-odd"), atem::Channel::parity_odd);
}
