#include "mfp/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfp/error.hpp"
#include "mfp/scalar.hpp"

namespace mfp {
namespace {

constexpr double kSampleRange = 1e3;
constexpr int kSamples = 20000;

// sup over p in [0, kSampleRange] of g, by dense quadratic-spaced sampling
// followed by golden-section refinement around the best sample.
template <class G>
double sampled_sup(G&& g) {
  double best = -std::numeric_limits<double>::infinity();
  int best_j = 0;
  auto node = [](int j) {
    const double s = static_cast<double>(j) / kSamples;
    return kSampleRange * s * s;
  };
  for (int j = 0; j <= kSamples; ++j) {
    const double v = g(node(j));
    if (v > best) {
      best = v;
      best_j = j;
    }
  }
  const double a = node(std::max(0, best_j - 1));
  const double b = node(std::min(kSamples, best_j + 1));
  if (b > a) best = std::max(best, scalar::golden_max(g, a, b).second);
  return best;
}

}  // namespace

std::string to_string(HamiltonianFamily family) {
  return family == HamiltonianFamily::Quadratic ? "quadratic" : "power";
}

HamiltonianSpec HamiltonianSpec::quadratic(double scale) {
  return HamiltonianSpec(HamiltonianFamily::Quadratic, 2.0, 0.0, scale);
}

HamiltonianSpec HamiltonianSpec::power(double q, double varpi, double scale) {
  return HamiltonianSpec(HamiltonianFamily::Power, q, varpi, scale);
}

HamiltonianSpec::HamiltonianSpec(HamiltonianFamily family, double q, double varpi, double scale)
    : family_(family), q_(q), varpi_(varpi), scale_(scale) {
  if (!std::isfinite(scale) || scale <= 0.0)
    throw ValidationError("hamiltonian.scale", "must be finite and > 0");
  if (!std::isfinite(q) || q <= 1.0) throw ValidationError("hamiltonian.q", "must be > 1");
  if (!std::isfinite(varpi) || varpi < 0.0)
    throw ValidationError("hamiltonian.varpi", "must be >= 0");
  compute_constants();
}

HamiltonianValue HamiltonianSpec::eval(double p) const {
  HamiltonianValue out;
  if (family_ == HamiltonianFamily::Quadratic) {
    out.H = 0.5 * scale_ * p * p;
    out.Hp = scale_ * p;
    out.Hpp = scale_;
    return out;
  }
  const double r = p * p + varpi_ * varpi_;
  if (r == 0.0) {
    out.H = 0.0;
    out.Hp = 0.0;
    if (q_ == 2.0) out.Hpp = 2.0 * scale_;
    else if (q_ > 2.0) out.Hpp = 0.0;
    else {
      out.Hpp = std::numeric_limits<double>::infinity();
      out.singular = true;
    }
    return out;
  }
  const double half = 0.5 * q_;
  out.H = scale_ * std::pow(r, half);
  out.Hp = scale_ * q_ * p * std::pow(r, half - 1.0);
  out.Hpp = scale_ * q_ * std::pow(r, half - 2.0) * ((q_ - 1.0) * p * p + varpi_ * varpi_);
  return out;
}

double HamiltonianSpec::third_derivative(double p) const {
  if (family_ == HamiltonianFamily::Quadratic || q_ == 2.0) return 0.0;
  const double r = p * p + varpi_ * varpi_;
  if (r == 0.0) return 0.0;
  return scale_ * q_ * (q_ - 2.0) * p * std::pow(r, 0.5 * q_ - 3.0) *
         ((q_ - 1.0) * p * p + 3.0 * varpi_ * varpi_);
}

bool HamiltonianSpec::nondegenerate() const {
  return family_ == HamiltonianFamily::Quadratic || varpi_ > 0.0 || q_ == 2.0;
}

double HamiltonianSpec::hp_inverse(double v) const {
  if (v == 0.0) return 0.0;
  const double sign = v < 0.0 ? -1.0 : 1.0;
  const double a = std::abs(v);
  if (family_ == HamiltonianFamily::Quadratic) return v / scale_;
  // Asymptotic guess from s q p^(q-1) = a, exact when varpi = 0.
  const double guess = std::pow(a / (scale_ * q_), 1.0 / (q_ - 1.0));
  if (varpi_ == 0.0) return sign * guess;
  double hi = std::max(guess, 1.0);
  while (eval(hi).Hp < a) hi *= 2.0;
  auto g = [&](double p) {
    const auto h = eval(p);
    return std::pair<double, double>{h.Hp - a, h.Hpp};
  };
  const auto root = scalar::increasing_root(g, 0.0, hi, guess, 1e-16, 0.0, 300);
  return sign * root.x;
}

double HamiltonianSpec::legendre(double v) const {
  if (family_ == HamiltonianFamily::Quadratic) return v * v / (2.0 * scale_);
  const double p = hp_inverse(v);
  return p * v - eval(p).H;
}

void HamiltonianSpec::compute_constants() {
  if (family_ == HamiltonianFamily::Quadratic) {
    alpha_ = beta_ = scale_;
    gamma0_ = 0.5 * scale_;
    gamma1_ = 0.0;
    return;
  }
  if (varpi_ == 0.0) {
    alpha_ = beta_ = q_ * (q_ - 1.0) * scale_;
    gamma0_ = (q_ - 1.0) * scale_;
    gamma1_ = 0.0;
    return;
  }
  // The ratio H_pp / (|p| + varpi)^(q-2) only depends on t = |p| / varpi.
  alpha_ = std::numeric_limits<double>::infinity();
  beta_ = 0.0;
  auto ratio = [&](double t) {
    return q_ * scale_ * std::pow(t * t + 1.0, 0.5 * q_ - 2.0) * ((q_ - 1.0) * t * t + 1.0) /
           std::pow(t + 1.0, q_ - 2.0);
  };
  for (int j = -1; j <= 1200; ++j) {
    const double t = j < 0 ? 0.0 : std::pow(10.0, -6.0 + 12.0 * j / 1200.0);
    const double rt = ratio(t);
    alpha_ = std::min(alpha_, rt);
    beta_ = std::max(beta_, rt);
  }
  // Both asymptotes: q s at t = 0 and q (q-1) s as t -> infinity.
  alpha_ = std::min({alpha_, q_ * scale_, q_ * (q_ - 1.0) * scale_});
  beta_ = std::max({beta_, q_ * scale_, q_ * (q_ - 1.0) * scale_});

  if (q_ == 2.0) {
    // H_p p - H = s p^2 - s varpi^2 exactly.
    gamma0_ = scale_;
    gamma1_ = scale_ * varpi_ * varpi_;
    return;
  }
  gamma0_ = 0.5 * (q_ - 1.0) * scale_;
  auto deficit = [&](double p) {
    const auto h = eval(p);
    return gamma0_ * std::pow(p, q_) - (h.Hp * p - h.H);
  };
  const double sup = std::max(0.0, sampled_sup(deficit));
  gamma1_ = sup + 1e-12 * (1.0 + sup);
}

std::pair<double, double> HamiltonianSpec::theta_constants() const {
  if (family_ == HamiltonianFamily::Quadratic) return {0.5, 0.0};
  if (q_ == 2.0) return {0.5, 2.0 * scale_ * varpi_ * varpi_};
  if (varpi_ == 0.0) return {0.5 * (q_ - 1.0), 0.0};
  const double theta = 0.25 * (q_ - 1.0);
  auto deficit = [&](double p) {
    const auto h = eval(p);
    return (1.0 + 2.0 * theta) * h.H - h.Hp * p;
  };
  const double sup = std::max(0.0, sampled_sup(deficit));
  return {theta, sup + 1e-12 * (1.0 + sup)};
}

double HamiltonianSpec::third_derivative_growth_constant() const {
  const double expo = 1.5 * (q_ - 2.0);
  double sup = 0.0;
  for (int j = 0; j <= kSamples; ++j) {
    const double s = static_cast<double>(j) / kSamples;
    const double p = kSampleRange * s * s;
    if (p == 0.0 && varpi_ == 0.0 && q_ != 2.0) continue;
    sup = std::max(sup, std::abs(third_derivative(p)) / std::pow(1.0 + p, expo));
  }
  return sup;
}

}  // namespace mfp
