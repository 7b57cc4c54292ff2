#pragma once

#include <array>

#include "kleinian2/types.hpp"

namespace kleinian2 {

/// Riemann matrix plus truncation target for the genus-2 theta series.
class ThetaParams {
 public:
  explicit ThetaParams(const Mat2& omega, double eps_target = 1e-14);

  const Mat2& omega() const { return omega_; }
  double eps_target() const { return eps_; }
  double lambda_min() const { return lambda_min_; }
  const Eigen::Matrix2d& im_inverse() const { return yinv_; }

 private:
  Mat2 omega_;
  double eps_;
  double lambda_min_;
  Eigen::Matrix2d yinv_;
};

/// theta and its derivatives at one point, all multiplied by exp(-log_scale)
/// so that the largest series term has modulus at most 1.
struct ThetaJet {
  int order = 0;
  double log_scale = 0.0;
  double max_term = 0.0;
  cplx v{};
  std::array<cplx, 2> d1{};  // 1, 2
  std::array<cplx, 3> d2{};  // 11, 12, 22
  std::array<cplx, 4> d3{};  // 111, 112, 122, 222
  int terms = 0;

  /// scaled partial derivative d^(k1+k2) / dz1^k1 dz2^k2
  cplx scaled(int k1, int k2) const;
  cplx value() const;
  /// |theta| relative to the dominant series term; near 0 on the theta divisor
  double closeness() const { return std::abs(v) / max_term; }
};

ThetaJet theta_jet(const ThetaParams& tp, const Vec2& z, int order);
cplx theta_eval(const ThetaParams& tp, const Vec2& z);
cplx theta_deriv(const ThetaParams& tp, const Vec2& z, int k1, int k2);

}  // namespace kleinian2
