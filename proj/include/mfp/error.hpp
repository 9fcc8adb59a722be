#pragma once

#include <stdexcept>
#include <string>

namespace mfp {

/// Invalid problem data or parameters. `key()` names the offending input
/// (e.g. "grid.n_t") when one is known.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& key, const std::string& what)
      : std::invalid_argument(key.empty() ? what : key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Numerical failure inside a solver (non-convergence of an inner iteration,
/// factorization failure, degenerate Hamiltonian for the dual route, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mfp
