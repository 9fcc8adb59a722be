#include "mfp/coupling.hpp"

#include <cmath>
#include <limits>

#include "mfp/error.hpp"
#include "mfp/scalar.hpp"

namespace mfp {

std::string to_string(CouplingFamily family) {
  switch (family) {
    case CouplingFamily::Zero: return "zero";
    case CouplingFamily::Power: return "power";
    case CouplingFamily::Log: return "log";
  }
  return "zero";
}

CouplingSpec::CouplingSpec(CouplingFamily family, double epsilon, double c, double a)
    : family_(family), epsilon_(epsilon), c_(c), a_(a) {
  if (!std::isfinite(epsilon) || epsilon < 0.0)
    throw ValidationError("coupling.epsilon", "must be finite and >= 0");
  if (!std::isfinite(c) || c < 0.0)
    throw ValidationError("coupling.f_params.c", "must be >= 0 (f nondecreasing)");
  if (family == CouplingFamily::Power && (!std::isfinite(a) || a <= 0.0))
    throw ValidationError("coupling.f_params.a", "must be > 0");
}

CouplingSpec CouplingSpec::zero(double epsilon) {
  return CouplingSpec(CouplingFamily::Zero, epsilon, 0.0, 0.0);
}

CouplingSpec CouplingSpec::power(double epsilon, double c, double a) {
  return CouplingSpec(CouplingFamily::Power, epsilon, c, a);
}

CouplingSpec CouplingSpec::log(double epsilon, double c) {
  return CouplingSpec(CouplingFamily::Log, epsilon, c, 0.0);
}

CouplingSpec CouplingSpec::with_epsilon(double epsilon) const {
  return CouplingSpec(family_, epsilon, c_, a_);
}

double CouplingSpec::f(double m) const {
  switch (family_) {
    case CouplingFamily::Zero: return 0.0;
    case CouplingFamily::Power: return c_ * std::pow(m, a_);
    case CouplingFamily::Log: return c_ * std::log(m);
  }
  return 0.0;
}

double CouplingSpec::df(double m) const {
  switch (family_) {
    case CouplingFamily::Zero: return 0.0;
    case CouplingFamily::Power: return c_ * a_ * std::pow(m, a_ - 1.0);
    case CouplingFamily::Log: return c_ / m;
  }
  return 0.0;
}

double CouplingSpec::d2f(double m) const {
  switch (family_) {
    case CouplingFamily::Zero: return 0.0;
    case CouplingFamily::Power: return c_ * a_ * (a_ - 1.0) * std::pow(m, a_ - 2.0);
    case CouplingFamily::Log: return -c_ / (m * m);
  }
  return 0.0;
}

double CouplingSpec::F(double m) const {
  switch (family_) {
    case CouplingFamily::Zero: return 0.0;
    case CouplingFamily::Power: return c_ * (std::pow(m, a_ + 1.0) - 1.0) / (a_ + 1.0);
    case CouplingFamily::Log:
      // c (m log m - m + 1), continuous extension c at m = 0
      return m > 0.0 ? c_ * (m * std::log(m) - m + 1.0) : c_;
  }
  return 0.0;
}

double CouplingSpec::f_eps(double m, double tau) const {
  return tau * f(m) + (epsilon_ > 0.0 ? epsilon_ * std::log(m) : 0.0);
}

double CouplingSpec::phi(double r, double tau) const {
  const double tc = tau * c_;
  const bool f_active = family_ != CouplingFamily::Zero && tc > 0.0;
  if (!f_active) {
    if (epsilon_ <= 0.0) throw NumericalError("phi: f + eps log is not invertible (eps = 0, f = 0)");
    return std::exp(r / epsilon_);
  }
  if (family_ == CouplingFamily::Log) return std::exp(r / (tc + epsilon_));
  // Power coupling: g(y) = tc e^{a y} + eps y - r, increasing in y.
  if (epsilon_ <= 0.0) {
    if (r <= 0.0) throw NumericalError("phi: r outside the range of f (eps = 0)");
    return std::pow(r / tc, 1.0 / a_);
  }
  auto g = [&](double y) { return tc * std::exp(a_ * y) + epsilon_ * y - r; };
  auto eval = [&](double y) {
    const double e = tc * std::exp(a_ * y);
    return std::pair<double, double>{e + epsilon_ * y - r, a_ * e + epsilon_};
  };
  // g(r/eps) >= 0. From below: g(y) <= tc e^{a y} + eps y - r, and the
  // f-term is tiny once y is very negative.
  double hi = r / epsilon_;
  if (r > 0.0) hi = std::min(hi, std::log(r / tc) / a_);
  double lo = hi - 1.0;
  if (!scalar::bracket_increasing(g, lo, hi))
    throw NumericalError("phi: failed to bracket f_eps^{-1}");
  // Start from the branch that dominates at r.
  double y0 = std::min(r / epsilon_, r > 0.0 ? std::log(r / tc) / a_ : r / epsilon_);
  const auto root = scalar::increasing_root(eval, lo, hi, y0, 1e-16, 0.0, 300);
  if (!root.converged) throw NumericalError("phi: Newton did not converge");
  return std::exp(root.x);
}

std::optional<std::pair<double, double>> CouplingSpec::growth_hypothesis() const {
  if (c_ <= 0.0) return std::nullopt;
  switch (family_) {
    case CouplingFamily::Zero: return std::nullopt;
    // c a r^{a-1} >= c0 / r  <=>  c a r^a >= c0, true for r >= 1 with c0 = c a.
    case CouplingFamily::Power: return std::make_pair(c_ * a_, 1.0);
    case CouplingFamily::Log: return std::make_pair(c_, 1.0);
  }
  return std::nullopt;
}

bool CouplingSpec::mf_prime_nondecreasing() const {
  // r f'(r) = c a r^a (power), c (log), 0 (zero).
  return true;
}

}  // namespace mfp
