#include "atem/poly.hpp"

#include <algorithm>
#include <utility>

namespace atem {

Poly::Poly(int precision_bits) : precision_bits_(checked_precision(precision_bits)) {}

Poly::Poly(std::vector<Real> coeffs) : coeffs_(std::move(coeffs)), precision_bits_(kMinPrecisionBits) {
  for (const auto& c : coeffs_) precision_bits_ = std::max(precision_bits_, c.precision_bits());
  canonicalize();
}

Poly::Poly(std::vector<Real> coeffs, int precision_bits) : Poly(std::move(coeffs)) {
  precision_bits_ = std::max(precision_bits_, checked_precision(precision_bits));
}

Poly Poly::constant(const Real& c) { return Poly(std::vector<Real>{c}); }

Poly Poly::monomial(int power, int precision_bits) {
  if (power < 0) throw InvalidArgument("Poly::monomial: negative power");
  std::vector<Real> coeffs(static_cast<std::size_t>(power) + 1, Real(0, precision_bits));
  coeffs.back() = Real(1, precision_bits);
  return Poly(std::move(coeffs));
}

void Poly::canonicalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Real Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return Real(0, precision_bits_);
  return coeffs_[static_cast<std::size_t>(k)];
}

const Real& Poly::leading() const {
  if (coeffs_.empty()) throw InvalidArgument("Poly::leading: zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Real Poly::eval_at_zero() const { return coeffs_.empty() ? Real(0, precision_bits_) : coeffs_.front(); }

Real Poly::eval(const Real& x) const {
  Real acc(0, std::max(precision_bits_, x.precision_bits()));
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

bool Poly::is_even() const noexcept {
  for (std::size_t k = 1; k < coeffs_.size(); k += 2) {
    if (!coeffs_[k].is_zero()) return false;
  }
  return true;
}

bool Poly::is_odd() const noexcept {
  for (std::size_t k = 0; k < coeffs_.size(); k += 2) {
    if (!coeffs_[k].is_zero()) return false;
  }
  return true;
}

Poly operator+(const Poly& a, const Poly& b) {
  const Poly& longer = a.coeffs_.size() >= b.coeffs_.size() ? a : b;
  const Poly& shorter = &longer == &a ? b : a;
  std::vector<Real> out(longer.coeffs_);
  for (std::size_t k = 0; k < shorter.coeffs_.size(); ++k) out[k] += shorter.coeffs_[k];
  return Poly(std::move(out), std::max(a.precision_bits_, b.precision_bits_));
}

Poly operator-(const Poly& a) {
  std::vector<Real> out;
  out.reserve(a.coeffs_.size());
  for (const auto& c : a.coeffs_) out.push_back(-c);
  return Poly(std::move(out), a.precision_bits_);
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  const int bits = std::max(a.precision_bits_, b.precision_bits_);
  if (a.is_zero() || b.is_zero()) return Poly(bits);
  std::vector<Real> out(a.coeffs_.size() + b.coeffs_.size() - 1, Real(0, bits));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      out[i + j].add_product(a.coeffs_[i], b.coeffs_[j]);
    }
  }
  return Poly(std::move(out), bits);
}

bool operator==(const Poly& a, const Poly& b) {
  return std::equal(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(), b.coeffs_.end());
}

Poly poly_add(const Poly& a, const Poly& b) { return a + b; }

Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }

Poly poly_diff(const Poly& a) {
  const auto coeffs = a.coeffs();
  if (coeffs.size() <= 1) return Poly(a.precision_bits());
  std::vector<Real> out;
  out.reserve(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k) out.push_back(coeffs[k] * static_cast<long>(k));
  return Poly(std::move(out), a.precision_bits());
}

Poly poly_scale(const Poly& a, const Real& c) {
  std::vector<Real> out;
  out.reserve(a.coeffs().size());
  for (const auto& coeff : a.coeffs()) out.push_back(coeff * c);
  return Poly(std::move(out), std::max(a.precision_bits(), c.precision_bits()));
}

}  // namespace atem
