#pragma once

#include <Eigen/Dense>
#include <numbers>

namespace sparray {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace sparray
