#pragma once

#include <string>
#include <vector>

#include "fipm/types.hpp"

namespace fipm {

/// Per-cell expectation and variance of every conserved component.
struct StatField {
  std::vector<double> x;  // cell centers
  double dx = 0.0;
  Eigen::MatrixXd mean;      // N_x x m
  Eigen::MatrixXd variance;  // N_x x m, >= 0
  std::vector<std::string> component_names;

  int cells() const { return static_cast<int>(x.size()); }
  int components() const { return static_cast<int>(mean.cols()); }
};

}  // namespace fipm
