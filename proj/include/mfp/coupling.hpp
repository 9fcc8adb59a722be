#pragma once

#include <optional>
#include <string>
#include <utility>

namespace mfp {

enum class CouplingFamily { Zero, Power, Log };

std::string to_string(CouplingFamily family);

/// Nondecreasing congestion coupling f plus entropy weight epsilon, defining
/// f_eps(m) = f(m) + epsilon log m and its inverse phi.
///
///   zero:  f(m) = 0
///   power: f(m) = c m^a    (c >= 0, a > 0)
///   log:   f(m) = c log m  (c >= 0)
///
/// F is the antiderivative of f normalized by F(1) = 0.
class CouplingSpec {
 public:
  static CouplingSpec zero(double epsilon);
  static CouplingSpec power(double epsilon, double c, double a);
  static CouplingSpec log(double epsilon, double c);

  CouplingFamily family() const { return family_; }
  double epsilon() const { return epsilon_; }
  double c() const { return c_; }
  double a() const { return a_; }

  /// Copy with a different entropy weight.
  CouplingSpec with_epsilon(double epsilon) const;

  double f(double m) const;
  double df(double m) const;
  double d2f(double m) const;
  double F(double m) const;

  /// tau f(m) + epsilon log m (tau = 1 gives f_eps).
  double f_eps(double m, double tau = 1.0) const;

  /// The unique m > 0 with tau f(m) + epsilon log m = r. Solved in y = log m by
  /// safeguarded Newton. Throws NumericalError when the map is not invertible
  /// at r (epsilon = 0 and r outside the range of tau f).
  double phi(double r, double tau = 1.0) const;

  /// (c0, r0) with f'(r) >= c0 / r for r >= r0, when such a pair exists.
  std::optional<std::pair<double, double>> growth_hypothesis() const;

  /// r -> r f'(r) nondecreasing.
  bool mf_prime_nondecreasing() const;

 private:
  CouplingSpec(CouplingFamily family, double epsilon, double c, double a);

  CouplingFamily family_;
  double epsilon_;
  double c_;
  double a_;
};

inline double phi(const CouplingSpec& C, double r) { return C.phi(r); }

}  // namespace mfp
