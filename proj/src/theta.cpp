#include "kleinian2/theta.hpp"

#include <cmath>

#include "kleinian2/error.hpp"

namespace kleinian2 {

namespace {
constexpr double kTailConstant = 100.0;
constexpr double kRadiusCap = 60.0;
}  // namespace

ThetaParams::ThetaParams(const Mat2& omega, double eps_target) : eps_(eps_target) {
  omega_ = 0.5 * (omega + omega.transpose());
  const Eigen::Matrix2d Y = omega_.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(Y);
  lambda_min_ = es.eigenvalues()(0);
  if (!(lambda_min_ > 0.0))
    throw Error(ErrorCode::RiemannMatrixError, "Im(Omega) is not positive definite");
  yinv_ = Y.inverse();
}

cplx ThetaJet::scaled(int k1, int k2) const {
  switch (k1 + k2) {
    case 0: return v;
    case 1: return d1[k1 ? 0 : 1];
    case 2: return d2[2 - k1];
    case 3: return d3[3 - k1];
    default: break;
  }
  throw Error(ErrorCode::InputError, "theta derivatives are available up to order 3");
}

cplx ThetaJet::value() const { return v * std::exp(log_scale); }

ThetaJet theta_jet(const ThetaParams& tp, const Vec2& z_in, int order) {
  if (order < 0 || order > 3)
    throw Error(ErrorCode::InputError, "theta derivatives are available up to order 3");
  const Mat2& Om = tp.omega();
  // theta is 1-periodic in each coordinate
  Vec2 z = z_in;
  for (int j = 0; j < 2; ++j) z(j) -= std::round(z(j).real());
  const Eigen::Vector2d yz = z.imag();
  const Eigen::Vector2d c = -tp.im_inverse() * yz;
  const Eigen::Matrix2d Y = Om.imag();

  ThetaJet jet;
  jet.order = order;
  jet.log_scale = pi * c.dot(Y * c);

  const double base = std::log(kTailConstant / tp.eps_target());
  const double r0 = std::sqrt(base / (pi * tp.lambda_min()));
  double T = base;
  if (order > 0)
    T += order * std::log(2.0 * pi * (c.norm() + r0 + 2.0));
  const double rad = std::sqrt(T / (pi * tp.lambda_min()));
  if (rad > kRadiusCap)
    throw Error(ErrorCode::TruncationRadiusError, "theta truncation radius exceeds the cap");

  const double b1 = std::sqrt(T / pi * tp.im_inverse()(0, 0)) + 1.0;
  const double b2 = std::sqrt(T / pi * tp.im_inverse()(1, 1)) + 1.0;
  const long lo1 = static_cast<long>(std::floor(c(0) - b1)), hi1 = static_cast<long>(std::ceil(c(0) + b1));
  const long lo2 = static_cast<long>(std::floor(c(1) - b2)), hi2 = static_cast<long>(std::ceil(c(1) + b2));
  const cplx tpi = 2.0 * pi * I;
  double max_term = 0.0;
  for (long n1 = lo1; n1 <= hi1; ++n1) {
    for (long n2 = lo2; n2 <= hi2; ++n2) {
      const double e1 = n1 - c(0), e2 = n2 - c(1);
      const double q = pi * (Y(0, 0) * e1 * e1 + 2.0 * Y(0, 1) * e1 * e2 + Y(1, 1) * e2 * e2);
      if (q > T + 1.0) continue;
      const double m1 = static_cast<double>(n1), m2 = static_cast<double>(n2);
      const double ph = pi * (Om(0, 0).real() * m1 * m1 + 2.0 * Om(0, 1).real() * m1 * m2 +
                              Om(1, 1).real() * m2 * m2) +
                        2.0 * pi * (m1 * z(0).real() + m2 * z(1).real());
      const cplx t = std::polar(std::exp(-q), ph);
      max_term = std::max(max_term, std::exp(-q));
      ++jet.terms;
      jet.v += t;
      if (order >= 1) {
        const cplx a = tpi * m1, b = tpi * m2;
        jet.d1[0] += a * t;
        jet.d1[1] += b * t;
        if (order >= 2) {
          jet.d2[0] += a * a * t;
          jet.d2[1] += a * b * t;
          jet.d2[2] += b * b * t;
          if (order >= 3) {
            jet.d3[0] += a * a * a * t;
            jet.d3[1] += a * a * b * t;
            jet.d3[2] += a * b * b * t;
            jet.d3[3] += b * b * b * t;
          }
        }
      }
    }
  }
  jet.max_term = max_term;
  return jet;
}

cplx theta_eval(const ThetaParams& tp, const Vec2& z) { return theta_jet(tp, z, 0).value(); }

cplx theta_deriv(const ThetaParams& tp, const Vec2& z, int k1, int k2) {
  if (k1 < 0 || k2 < 0)
    throw Error(ErrorCode::InputError, "negative derivative order");
  const ThetaJet jet = theta_jet(tp, z, k1 + k2);
  return jet.scaled(k1, k2) * std::exp(jet.log_scale);
}

}  // namespace kleinian2
