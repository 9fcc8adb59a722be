#pragma once

#include <string>
#include <utility>

namespace mfp {

enum class HamiltonianFamily { Quadratic, Power };

std::string to_string(HamiltonianFamily family);

struct HamiltonianValue {
  double H = 0.0;
  double Hp = 0.0;
  double Hpp = 0.0;
  /// Set when H_pp does not exist at p (power family, varpi = 0, q < 2, p = 0).
  bool singular = false;
};

/// Radial Hamiltonian H(p) = h(|p|) in one space dimension.
///
///   quadratic: H(p) = scale |p|^2 / 2
///   power:     H(p) = scale (|p|^2 + varpi^2)^(q/2)
///
/// Construction precomputes the growth constants alpha_H, beta_H with
/// alpha_H (|p|+varpi)^(q-2) <= H_pp(p) <= beta_H (|p|+varpi)^(q-2), and the
/// coercivity pair (gamma0, gamma1) with H_p(p) p - H(p) >= gamma0 |p|^q - gamma1.
class HamiltonianSpec {
 public:
  static HamiltonianSpec quadratic(double scale = 1.0);
  static HamiltonianSpec power(double q, double varpi, double scale = 1.0);

  HamiltonianFamily family() const { return family_; }
  double q() const { return q_; }
  double varpi() const { return varpi_; }
  double scale() const { return scale_; }

  HamiltonianValue eval(double p) const;
  double value(double p) const { return eval(p).H; }
  double third_derivative(double p) const;

  /// Nondegenerate means H_pp > 0 everywhere and finite: quadratic, power with
  /// varpi > 0, or power with q = 2.
  bool nondegenerate() const;
  /// H_pp bounded above and below by positive constants (q = 2 growth).
  bool quadratic_growth() const { return q_ == 2.0; }

  /// Inverse of H_p: the p with H_p(p) = v.
  double hp_inverse(double v) const;
  /// Fenchel conjugate L(v) = sup_p (p v - H(p)).
  double legendre(double v) const;

  double alpha_H() const { return alpha_; }
  double beta_H() const { return beta_; }
  std::pair<double, double> coercivity_constants() const { return {gamma0_, gamma1_}; }

  /// theta > 0 and c with H_p(p) p >= (1 + 2 theta) H(p) - c for all p.
  std::pair<double, double> theta_constants() const;

  /// Sampled sup over |p| <= 1e3 of |H_ppp(p)| / (1+|p|)^(3(q-2)/2).
  double third_derivative_growth_constant() const;

 private:
  HamiltonianSpec(HamiltonianFamily family, double q, double varpi, double scale);
  void compute_constants();

  HamiltonianFamily family_;
  double q_;
  double varpi_;
  double scale_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double gamma0_ = 0.0;
  double gamma1_ = 0.0;
};

// Free-function forms used by the config layer and tests.
inline HamiltonianValue h_eval(const HamiltonianSpec& H, double p) { return H.eval(p); }
inline std::pair<double, double> coercivity_constants(const HamiltonianSpec& H) {
  return H.coercivity_constants();
}
inline double legendre_L(const HamiltonianSpec& H, double v) { return H.legendre(v); }

}  // namespace mfp
