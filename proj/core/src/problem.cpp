#include "atem/problem.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace atem {

namespace {

Poly strip_constant(const Poly& s) {
  std::vector<Real> coeffs(s.coeffs().begin(), s.coeffs().end());
  if (!coeffs.empty()) coeffs.front() = Real(0, coeffs.front().precision_bits());
  return Poly(std::move(coeffs), s.precision_bits());
}

}  // namespace

AnsatzExponent::AnsatzExponent(const Poly& s) : s_(strip_constant(s)) {
  if (s_.degree() < 2 || s_.degree() % 2 != 0) {
    throw InvalidArgument("ansatz exponent s(x) must have even degree >= 2, got degree " +
                          std::to_string(s_.degree()));
  }
  if (s_.leading().sign() <= 0) {
    throw InvalidArgument("ansatz exponent s(x) must have a positive leading coefficient");
  }
}

AnsatzExponent AnsatzExponent::gaussian_quartic(const Real& alpha, const Real& beta) {
  const int bits = std::max(alpha.precision_bits(), beta.precision_bits());
  const Real zero(0, bits);
  return AnsatzExponent(Poly({zero, zero, alpha / 2, zero, beta / 4}, bits));
}

ProblemSpec ProblemSpec::make(Poly potential, AnsatzExponent ansatz, long energy_scale) {
  ProblemSpec problem{std::move(potential), std::move(ansatz), false, energy_scale};
  problem.symmetric = problem.potential.is_even() && problem.ansatz.is_even();
  problem.validate();
  return problem;
}

void ProblemSpec::validate() const {
  if (potential.degree() < 2) {
    throw InvalidArgument("potential must have degree >= 2, got " + std::to_string(potential.degree()));
  }
  if (energy_scale <= 0) throw InvalidArgument("energy_scale must be positive");
  if (symmetric && !(potential.is_even() && ansatz.is_even())) {
    throw InvalidArgument("problem flagged symmetric but V or s has odd-power terms");
  }
}

int ProblemSpec::precision_bits() const noexcept {
  return std::max(potential.precision_bits(), ansatz.s().precision_bits());
}

Poly SeedPair::q0(const Real& energy) const {
  return q0_base - Poly::constant(energy * energy_scale);
}

int SeedPair::precision_bits() const noexcept { return std::max(p0.precision_bits(), q0_base.precision_bits()); }

SeedPair derive_seed(const ProblemSpec& problem) {
  problem.validate();
  const Poly ds = poly_diff(problem.ansatz.s());
  const Poly d2s = poly_diff(ds);

  SeedPair seed;
  seed.p0 = poly_scale(ds, Real(2, ds.precision_bits()));
  seed.q0_base = d2s - ds * ds + problem.potential;
  seed.energy_scale = problem.energy_scale;
  seed.symmetric = problem.symmetric;

  if (!seed.q0_base.is_zero() && seed.q0_base.degree() >= 1 && seed.q0_base.leading().sign() > 0) {
    seed.warning = "q0 leading coefficient is positive (degree " + std::to_string(seed.q0_base.degree()) +
                   "): the envelope under-confines the potential; convergence in m may be slow";
  }
  return seed;
}

}  // namespace atem
