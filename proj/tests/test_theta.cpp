#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kleinian2/error.hpp"
#include "kleinian2/theta.hpp"
#include "oracle.hpp"

using namespace kleinian2;

namespace {

cplx to_d(oracle::cld v) { return {static_cast<double>(v.real()), static_cast<double>(v.imag())}; }

Mat2 generic_omega() {
  Mat2 m;
  m << cplx(0.21, 1.13), cplx(-0.37, 0.41), cplx(-0.37, 0.41), cplx(0.55, 0.92);
  return m;
}

}  // namespace

TEST_CASE("theta(0; iI) equals the square of the one-dimensional series") {
  const ThetaParams tp(I * Mat2::Identity());
  const cplx v = theta_eval(tp, Vec2::Zero());
  const cplx t3 = to_d(oracle::theta3(0, oracle::cld(0, 1)));
  CHECK(std::abs(v - t3 * t3) < 1e-12);
  CHECK(std::abs(v - 1.1803405990160962) < 1e-12);
}

TEST_CASE("diagonal period matrices factor into products of Jacobi theta_3") {
  Mat2 om = Mat2::Zero();
  om(0, 0) = cplx(0.3, 0.8);
  om(1, 1) = cplx(-0.45, 1.6);
  const ThetaParams tp(om);
  for (const Vec2& z : {Vec2(cplx(0.1, 0.2), cplx(-0.3, 0.05)), Vec2(cplx(2.7, -1.1), cplx(0.4, 1.9))}) {
    const cplx want = to_d(oracle::theta3(oracle::cld(z(0).real(), z(0).imag()),
                                          oracle::cld(om(0, 0).real(), om(0, 0).imag())) *
                           oracle::theta3(oracle::cld(z(1).real(), z(1).imag()),
                                          oracle::cld(om(1, 1).real(), om(1, 1).imag())));
    CHECK(std::abs(theta_eval(tp, z) - want) < 1e-12 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("quasi-periodicity and evenness with large imaginary parts") {
  const ThetaParams tp(generic_omega());
  const Mat2& om = tp.omega();
  const Vec2 z(cplx(0.3, 1.7), cplx(-0.8, -2.2));
  const ThetaJet base = theta_jet(tp, z, 0);
  const Vec2 m(1.0, -2.0), n(3.0, 1.0);
  const ThetaJet shifted = theta_jet(tp, z + n + om * m, 0);
  const cplx expo = -pi * I * (m.transpose() * om * m)(0, 0) - 2.0 * pi * I * (m.transpose() * z)(0, 0);
  const cplx ratio = shifted.v / base.v * std::exp(shifted.log_scale - base.log_scale - expo);
  CHECK(std::abs(ratio - 1.0) < 1e-11);
  const ThetaJet neg = theta_jet(tp, -z, 0);
  CHECK(std::abs(neg.v * std::exp(neg.log_scale - base.log_scale) - base.v) < 1e-13 * base.max_term);
}

TEST_CASE("derivatives up to order three against finite differences") {
  const ThetaParams tp(generic_omega());
  const Vec2 z(cplx(0.17, 0.3), cplx(-0.42, -0.21));
  const ThetaJet j = theta_jet(tp, z, 3);
  const double h = 1e-4;
  // 4th-order central differences of the value for first derivatives
  for (int k = 0; k < 2; ++k) {
    Vec2 e = Vec2::Zero();
    e(k) = h;
    const cplx fd = (-theta_eval(tp, z + 2.0 * e) + 8.0 * theta_eval(tp, z + e) - 8.0 * theta_eval(tp, z - e) +
                     theta_eval(tp, z - 2.0 * e)) / (12.0 * h);
    CHECK(std::abs(fd - theta_deriv(tp, z, k == 0, k == 1)) < 1e-8);
  }
  // each order from the one below
  for (int k1 = 0; k1 <= 3; ++k1)
    for (int k2 = 0; k1 + k2 <= 3; ++k2) {
      if (k1 + k2 == 0) continue;
      const int dir = k1 > 0 ? 0 : 1;
      Vec2 e = Vec2::Zero();
      e(dir) = 1e-5;
      const int l1 = k1 - (dir == 0), l2 = k2 - (dir == 1);
      const cplx fd = (theta_deriv(tp, z + e, l1, l2) - theta_deriv(tp, z - e, l1, l2)) / 2e-5;
      const cplx an = j.scaled(k1, k2) * std::exp(j.log_scale);
      INFO("multi-index " << k1 << "," << k2);
      CHECK(std::abs(fd - an) < 1e-6 * std::max(1.0, std::abs(an)));
    }
}

TEST_CASE("invalid period matrices are rejected") {
  Mat2 bad;
  bad << cplx(0, 1), 0.0, 0.0, cplx(0, -1);
  CHECK_THROWS_AS(ThetaParams{bad}, Error);
  CHECK_THROWS_AS(theta_jet(ThetaParams(generic_omega()), Vec2::Zero(), 4), Error);
}

TEST_CASE("odd half-period characteristic gives a zero") {
  Mat2 om;
  om << cplx(0.1, 1.2), cplx(0.3, 0.2), cplx(0.3, 0.2), cplx(-0.2, 0.9);
  const ThetaParams tp(om);
  // a = (1, 0), b = (1, 0): a.b odd
  const Vec2 v = 0.5 * (Vec2(1, 0) + om * Vec2(1, 0));
  CHECK(theta_jet(tp, v, 0).closeness() < 1e-14);
  CHECK(theta_jet(tp, 0.5 * (Vec2(1, 0) + om * Vec2(0, 1)), 0).closeness() > 1e-3);
}
