#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fipm {

// Largest physical state handled by the library (1D Euler: rho, rho*v, rho*E).
inline constexpr int kMaxStateDim = 3;

/// Point state u in R^m, or entropy variables v in R^m. Never heap-allocates.
using State = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxStateDim, 1>;
using StateJacobian =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxStateDim, kMaxStateDim>;

/// (N+1) x m matrix of gPC moments (rows: order i, columns: state component k).
using MomentMatrix = Eigen::MatrixXd;
/// Same layout as MomentMatrix, holding dual (entropy) variables.
using DualMatrix = Eigen::MatrixXd;

/// Invalid argument ranges: out-of-range order, point outside [-1, 1], empty rule, ...
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A physical state outside the admissible set (rho <= 0 or p <= 0).
class InadmissibleStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fipm
