#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace causal {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Numerical tolerances shared by every module.
namespace tol {
inline constexpr double structural = 1e-12;  // traceless / hermitian checks
inline constexpr double prune = 1e-13;       // coefficient pruning
inline constexpr double equality = 1e-10;    // element equality
inline constexpr double unitary = 1e-10;
inline constexpr double null_space = 1e-8;
}  // namespace tol

// Error hierarchy. The CLI maps each class onto an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class UnknownFactorError : public Error {
 public:
  using Error::Error;
};

class WordLengthError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

class GnsError : public Error {
 public:
  using Error::Error;
};

}  // namespace causal
