#pragma once

#include <Eigen/Core>

#include <array>
#include <stdexcept>
#include <string>

namespace zk {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// An iterative solver failed to converge or detected a breakdown
/// (Petviashvili stagnation, Newton divergence, Arnoldi breakdown,
/// simulation blow-up).  Maps to CLI exit code 3.
class solver_error : public std::runtime_error {
 public:
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid or inconsistent configuration / input file.  Maps to CLI exit
/// code 4.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Mismatched grids, field sizes, or a size cap exceeded.
class shape_error : public std::invalid_argument {
 public:
  explicit shape_error(const std::string& what) : std::invalid_argument(what) {}
};

using Index3 = std::array<int, 3>;
using Double3 = std::array<double, 3>;

}  // namespace zk
