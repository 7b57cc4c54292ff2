#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace kleinian2 {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

}  // namespace kleinian2
