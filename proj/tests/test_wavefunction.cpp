#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "atem/spectrum.hpp"
#include "atem/wavefunction.hpp"

using atem::Poly;
using atem::Real;
using atem::SeriesParity;

namespace {

Poly decimals(std::initializer_list<const char*> values) {
  std::vector<Real> coeffs;
  for (const char* v : values) coeffs.push_back(Real::from_string(v));
  return Poly(std::move(coeffs));
}

atem::ProblemSpec harmonic() {
  return atem::ProblemSpec::make(decimals({"0", "0", "1"}), atem::AnsatzExponent::gaussian_quartic(Real(1), Real(0)));
}

atem::ProblemSpec quartic() {
  return atem::ProblemSpec::make(decimals({"0", "0", "1", "0", "0.1"}),
                                 atem::AnsatzExponent::gaussian_quartic(Real(4), Real(0)));
}

const Real kQuadTol = Real::from_string("1e-20");

double rel(const Real& a, const Real& b) { return (abs(a - b) / abs(b)).to_double(); }

}  // namespace

TEST(BuildSeries, HarmonicGroundStateIsPureGaussian) {
  const auto s = atem::build_series(harmonic(), Real(1), 20, 17, SeriesParity::even);
  ASSERT_EQ(s.f_coeffs.size(), 18u);
  EXPECT_EQ(s.f_coeffs[0], Real(1));
  for (std::size_t k = 1; k < s.f_coeffs.size(); ++k) EXPECT_TRUE(s.f_coeffs[k].is_zero()) << k;
}

TEST(BuildSeries, HarmonicFirstExcitedIsX) {
  const auto s = atem::build_series(harmonic(), Real(3), 20, 17, SeriesParity::odd);
  EXPECT_TRUE(s.f_coeffs[0].is_zero());
  EXPECT_EQ(s.f_coeffs[1], Real(1));
  for (std::size_t k = 2; k < s.f_coeffs.size(); ++k) EXPECT_TRUE(s.f_coeffs[k].is_zero()) << k;
}

// H_2(x) = 4x^2 - 2, so f is proportional to 1 - 2x^2 at E = 5.
TEST(BuildSeries, HarmonicSecondExcitedIsHermite) {
  const auto s = atem::build_series(harmonic(), Real(5), 20, 17, SeriesParity::even);
  EXPECT_EQ(s.f_coeffs[0], Real(1));
  EXPECT_EQ(s.f_coeffs[2], Real(-2));
  EXPECT_TRUE(s.f_coeffs[4].is_zero());
}

TEST(BuildSeries, ParitySeriesArePure) {
  const auto even = atem::build_series(quartic(), Real::from_string("1.065285509543717701"), 60, 30,
                                       SeriesParity::even);
  const auto odd = atem::build_series(quartic(), Real::from_string("3.306872013152913680"), 60, 30,
                                      SeriesParity::odd);
  for (std::size_t k = 1; k < even.f_coeffs.size(); k += 2) EXPECT_TRUE(even.f_coeffs[k].is_zero());
  for (std::size_t k = 0; k < odd.f_coeffs.size(); k += 2) EXPECT_TRUE(odd.f_coeffs[k].is_zero());
  EXPECT_TRUE(even.f().is_even());
  EXPECT_TRUE(odd.f().is_odd());
}

// V = x^2 + x/2 is a harmonic well centred at -1/4, shifted down by 1/16,
// so psi_0 = exp(-(x + 1/4)^2 / 2) and f = exp(-x/4) up to a constant.
TEST(BuildSeries, GenericChannelRecoversShiftedGaussian) {
  const auto problem = atem::ProblemSpec::make(decimals({"0", "0.5", "1"}),
                                               atem::AnsatzExponent::gaussian_quartic(Real(1), Real(0)));
  ASSERT_FALSE(problem.symmetric);
  const auto s = atem::build_series(problem, Real::from_string("0.9375"), 60, 12);
  double factorial = 1;
  for (int k = 0; k <= 12; ++k) {
    if (k > 0) factorial *= k;
    const double expected = std::pow(-0.25, k) / factorial;
    EXPECT_NEAR(s.f_coeffs[static_cast<std::size_t>(k)].to_double() / s.f_coeffs[0].to_double(), expected,
                1e-12 * std::max(1.0, std::abs(expected)))
        << k;
  }
}

TEST(BuildSeries, GenericChannelRejectsNonRoots) {
  EXPECT_THROW(atem::build_series(harmonic(), Real(2), 40), atem::NumericError);
}

TEST(BuildSeries, RejectsBadArguments) {
  EXPECT_THROW(atem::build_series(harmonic(), Real(1), 1), atem::InvalidArgument);
  EXPECT_THROW(atem::build_series(harmonic(), Real(1), 20, 0), atem::InvalidArgument);
  const auto asym = atem::ProblemSpec::make(decimals({"0", "0.5", "1"}),
                                            atem::AnsatzExponent::gaussian_quartic(Real(1), Real(0)));
  EXPECT_THROW(atem::build_series(asym, Real(1), 20, 17, SeriesParity::even), atem::InvalidArgument);
}

// Integral of exp(-x^2) is sqrt(pi); of x^2 exp(-x^2) is sqrt(pi)/2.
TEST(Normalize, HarmonicConstants) {
  const Real sqrt_pi = sqrt(Real::pi());
  const auto ground = atem::normalize(atem::build_series(harmonic(), Real(1), 20), kQuadTol);
  EXPECT_LT(rel(ground.norm_constant, Real(1) / sqrt(sqrt_pi)), 1e-18);
  const auto first = atem::normalize(atem::build_series(harmonic(), Real(3), 20, 17, SeriesParity::odd), kQuadTol);
  EXPECT_LT(rel(first.norm_constant, sqrt(Real(2) / sqrt_pi)), 1e-18);
}

TEST(Normalize, IndependentOfSeriesScale) {
  const auto base = atem::build_series(quartic(), Real::from_string("1.065285509543717701"), 118, 17,
                                       SeriesParity::even);
  const auto a = atem::normalize(base, kQuadTol);
  const auto b = atem::normalize(base.scaled(Real::from_string("-37.5")), kQuadTol);
  EXPECT_TRUE(a.normalized());
  const Real x = Real::from_string("0.7");
  EXPECT_LT(rel(atem::evaluate_psi(b, x), atem::evaluate_psi(a, x)), 1e-18);
  EXPECT_GT(b.f_coeffs[0].sign(), 0);
}

TEST(Normalize, Idempotent) {
  const auto once = atem::normalize(
      atem::build_series(quartic(), Real::from_string("1.065285509543717701"), 118, 17, SeriesParity::even), kQuadTol);
  const auto twice = atem::normalize(once, kQuadTol);
  EXPECT_LT(rel(twice.norm_constant, once.norm_constant), 1e-18);
}

TEST(Normalize, RejectsNonPositiveTolerance) {
  EXPECT_THROW(atem::normalize(atem::build_series(harmonic(), Real(1), 20), Real(0)), atem::InvalidArgument);
}

TEST(Sample, OddStateIsAntisymmetric) {
  const auto s = atem::normalize(
      atem::build_series(quartic(), Real::from_string("3.306872013152913680"), 118, 17, SeriesParity::odd), kQuadTol);
  const auto pts = atem::sample(s, Real(-2), Real(2), 41);
  ASSERT_EQ(pts.size(), 41u);
  EXPECT_EQ(pts.front().x, Real(-2));
  EXPECT_EQ(pts.back().x, Real(2));
  EXPECT_TRUE(pts[20].psi.is_zero());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& mirror = pts[pts.size() - 1 - i];
    EXPECT_LT(abs(pts[i].x + mirror.x), Real::from_string("1e-70")) << i;
    EXPECT_LT(abs(pts[i].psi + mirror.psi), Real::from_string("1e-60")) << i;
  }
}

TEST(Sample, RejectsBadGrid) {
  const auto s = atem::build_series(harmonic(), Real(1), 20);
  EXPECT_THROW(atem::sample(s, Real(0), Real(1), 1), atem::InvalidArgument);
  EXPECT_THROW(atem::sample(s, Real(1), Real(0), 10), atem::InvalidArgument);
}

TEST(Residual, ExactEigenfunctionSatisfiesEquation) {
  const auto s = atem::normalize(atem::build_series(harmonic(), Real(5), 20), kQuadTol);
  std::vector<Real> xs;
  for (int i = -10; i <= 10; ++i) xs.push_back(Real(i) / 4);
  for (const auto& r : atem::residual(s, xs)) EXPECT_LT(r, Real::from_string("1e-60"));
}

// Near the origin any energy's series solves the equation to the truncation
// order; the wrong energy shows once the growing solution takes over.
TEST(Residual, WrongEnergyIsVisible) {
  const Real e = Real::from_string("1.065285509543717701");
  const Real off = e + Real::from_string("1e-6");
  const std::vector<Real> xs{Real::from_string("1.5"), Real(2)};
  const auto good = atem::residual(
      atem::normalize(atem::build_series(quartic(), e, 118, 120, SeriesParity::even), kQuadTol), xs);
  const auto bad = atem::residual(
      atem::normalize(atem::build_series(quartic(), off, 118, 120, SeriesParity::even), kQuadTol), xs);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_LT(good[i] * 1000, bad[i]) << i;
}

TEST(Residual, UnnormalizedUsesUnitConstant) {
  const auto s = atem::build_series(harmonic(), Real(1), 20);
  EXPECT_FALSE(s.normalized());
  EXPECT_EQ(atem::evaluate_psi(s, Real(0)), Real(1));
  EXPECT_LT(rel(atem::evaluate_psi(s, Real(1)), exp(Real::from_string("-0.5"))), 1e-60);
}
