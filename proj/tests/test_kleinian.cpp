#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>

#include "kleinian2/error.hpp"
#include "kleinian2/kleinian.hpp"
#include "kleinian2/verify.hpp"
#include "test_curves.hpp"

using namespace kleinian2;

namespace {

const KleinianContext& ctx(int which) {
  static std::unique_ptr<KleinianContext> c[3];
  if (!c[which]) {
    const auto& co = which == 0 ? testcurves::W5 : which == 1 ? testcurves::G6 : testcurves::C6;
    const AdmissiblePolynomial f = AdmissiblePolynomial::validate(co);
    c[which] = std::make_unique<KleinianContext>(make_context(f, compute_period_data(f)));
  }
  return *c[which];
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InputError;
}

const Vec2 kZ(cplx(0.13, 0.07), cplx(-0.21, 0.11));

}  // namespace

TEST_CASE("values at the origin") {
  for (int w = 0; w < 3; ++w) {
    const Sjk s = S_jk_eval(ctx(w), Vec2::Zero());
    CHECK(std::abs(S_eval(ctx(w), Vec2::Zero())) < 1e-12);
    CHECK(std::abs(s.s11 - 1.0) < 1e-7);
    CHECK(std::abs(s.s12) < 1e-7);
    CHECK(std::abs(s.s22) < 1e-7);
  }
}

TEST_CASE("measured Taylor jets") {
  for (int w = 0; w < 3; ++w) {
    const TaylorJets t = measure_taylor_jets(ctx(w));
    CHECK(std::abs(2.0 * t.S.c20 - 2.0) < 1e-6);
    CHECK(std::abs(t.S.c11) < 1e-6);
    CHECK(std::abs(t.S.c02) < 1e-6);
    CHECK(std::abs(t.S22.c11 - 2.0) < 1e-6);
    CHECK(std::abs(2.0 * t.S12.c02 + 2.0) < 1e-6);
    CHECK(std::abs(t.S11.c00 - 1.0) < 1e-6);
  }
}

TEST_CASE("log Hessian of S: finite differences, theta derivatives and wp agree") {
  for (int w = 0; w < 3; ++w) {
    const KleinianContext& c = ctx(w);
    const double h = 1e-5;
    Mat2 H;
    for (int k = 0; k < 2; ++k) {
      Vec2 e = Vec2::Zero();
      e(k) = h;
      H.col(k) = (log_gradient_S(c, kZ + e) - log_gradient_S(c, kZ - e)) / (2 * h);
    }
    const Mat2 L = log_hessian_S(c, kZ);
    const Wp p = wp_eval(c, kZ);
    const Mat2 E = log_hessian_from_wp(c.curve(), p);
    const double sc = std::max(1.0, L.cwiseAbs().maxCoeff());
    CHECK((H - L).cwiseAbs().maxCoeff() < 1e-7 * sc);
    CHECK((E - L).cwiseAbs().maxCoeff() < 1e-9 * sc);
    CHECK(quartic_residual(c.curve(), p) < 1e-9);
    if (w == 0) {
      // Weierstrass form: wp_jk = -(1/2) d_j d_k ln S
      CHECK(std::abs(-0.5 * L(0, 0) - p.p11) < 1e-9 * sc);
      CHECK(std::abs(-0.5 * L(0, 1) - p.p12) < 1e-9 * sc);
      CHECK(std::abs(-0.5 * L(1, 1) - p.p22) < 1e-9 * sc);
    }
  }
}

TEST_CASE("forward map and inversion agree with the divisor") {
  for (int w = 0; w < 3; ++w) {
    const KleinianContext& c = ctx(w);
    const AdmissiblePolynomial& f = c.curve();
    const Divisor D{point_over(f, cplx(0.35, 0.2)), point_over(f, cplx(-0.45, -0.6), -1)};
    const Vec2 z = abel_forward(c, D);
    const Wp p = wp_eval(c, z);
    const Xi xi = xi_eval(f, D);
    CHECK(std::abs(p.p11 - xi.xi11) < 1e-8 * std::max(1.0, std::abs(xi.xi11)));
    CHECK(std::abs(p.p12 - xi.xi12) < 1e-9);
    CHECK(std::abs(p.p22 - xi.xi22) < 1e-9);
    const Divisor E = jacobi_invert(c, z);
    const bool direct = same_point(f, D.p, E.p, 1e-7) && same_point(f, D.q, E.q, 1e-7);
    const bool swapped = same_point(f, D.p, E.q, 1e-7) && same_point(f, D.q, E.p, 1e-7);
    CHECK((direct || swapped));
    // involution maps z to -z
    CHECK(lattice_distance(c.periods(), abel_forward(c, involution(f, D)) + z) < 1e-9);
  }
}

TEST_CASE("S vanishes on the Abel image of the curve") {
  for (int w = 0; w < 3; ++w) {
    const KleinianContext& c = ctx(w);
    const Divisor D{point_over(c.curve(), cplx(0.6, -0.3)), CurvePoint::infinity(1)};
    const Vec2 z = abel_forward(c, D);
    CHECK(c.zero_closeness(z) < 1e-9);
    CHECK(code_of([&] { wp_eval(c, z); }) == ErrorCode::OnThetaDivisorError);
    // S_jk stay finite and continuous across the zero set
    const Sjk at = S_jk_eval(c, z);
    const Sjk near = S_jk_eval(c, z + Vec2(cplx(1e-4, 0), cplx(0, 1e-4)));
    CHECK(std::isfinite(std::abs(at.s11) + std::abs(at.s12) + std::abs(at.s22)));
    CHECK(std::abs(at.s11 - near.s11) < 1e-2);
  }
}

TEST_CASE("special divisors collapse to the origin") {
  const KleinianContext& c = ctx(1);
  const CurvePoint P = point_over(c.curve(), cplx(0.3, 0.4));
  CHECK(lattice_distance(c.periods(), abel_forward(c, Divisor{P, involution(c.curve(), P)})) < 1e-10);
}

TEST_CASE("first-derivative identity through rho and lambda") {
  for (int w = 0; w < 3; ++w) {
    const KleinianContext& c = ctx(w);
    const Divisor D{point_over(c.curve(), cplx(0.25, 0.5)), point_over(c.curve(), cplx(-0.7, 0.15), -1)};
    const RhoLambda rl = rho_lambda_eval(c, D);
    const Vec2 g = log_gradient_S(c, rl.z);
    CHECK(std::abs(g(0) - (-2.0 * rl.rho1 + rl.lambda)) < 1e-8 * std::max(1.0, std::abs(g(0))));
    CHECK(std::abs(g(1) + 2.0 * rl.rho2) < 1e-8 * std::max(1.0, std::abs(g(1))));
  }
}

TEST_CASE("sigma on the Weierstrass curve") {
  const KleinianContext& c = ctx(0);
  REQUIRE(c.c_sigma().has_value());
  CHECK(std::abs(sigma_eval(c, Vec2::Zero())) < 1e-14);
  const cplx s = sigma_eval(c, kZ);
  CHECK(std::abs(s * s - S_eval(c, kZ)) < 1e-10 * std::abs(s * s));
  CHECK(std::abs(sigma_eval(c, -kZ) + s) < 1e-12 * std::abs(s));
  // sigma = z1 + higher order
  const double r = 1e-2;
  cplx d1 = 0.0, d2 = 0.0;
  for (int k = 0; k < 16; ++k) {
    const cplx w = std::polar(1.0, 2 * pi * k / 16);
    d1 += sigma_eval(c, Vec2(r * w, 0.0)) / w;
    d2 += sigma_eval(c, Vec2(0.0, r * w)) / w;
  }
  CHECK(std::abs(d1 / (16.0 * r) - 1.0) < 1e-10);
  CHECK(std::abs(d2 / (16.0 * r)) < 1e-10);
  const SigmaLogDerivs d = sigma_log_derivs(c, kZ);
  const double h = 1e-5;
  const cplx fd = (std::log(sigma_eval(c, kZ + Vec2(h, 0))) - std::log(sigma_eval(c, kZ - Vec2(h, 0)))) / (2 * h);
  CHECK(std::abs(fd - d.zeta1) < 1e-7 * std::max(1.0, std::abs(d.zeta1)));
  const cplx fdp = (wp_eval(c, kZ + Vec2(0, h)).p11 - wp_eval(c, kZ - Vec2(0, h)).p11) / (2 * h);
  CHECK(std::abs(fdp - d.p112) < 1e-6 * std::max(1.0, std::abs(d.p112)));
}

TEST_CASE("sigma needs Weierstrass form") {
  CHECK(code_of([] { sigma_eval(ctx(1), kZ); }) == ErrorCode::NotWeierstrassFormError);
  CHECK_FALSE(ctx(1).c_sigma().has_value());
}

TEST_CASE("eval bundle omits what is undefined") {
  const EvalBundle at0 = eval_bundle(ctx(0), Vec2::Zero(), true);
  CHECK_FALSE(at0.wp.has_value());
  CHECK(at0.sigma.has_value());
  CHECK_FALSE(at0.sigma_derivs.has_value());
  const EvalBundle b = eval_bundle(ctx(2), kZ, false);
  CHECK(b.wp.has_value());
  CHECK_FALSE(b.sigma.has_value());
}

TEST_CASE("rho and lambda reject unusable divisors") {
  const KleinianContext& c = ctx(1);
  const CurvePoint P = point_over(c.curve(), cplx(0.3, 0.4));
  CHECK(code_of([&] { rho_lambda_eval(c, Divisor{P, CurvePoint::infinity(1)}); }) ==
        ErrorCode::InfinitePointError);
  CHECK(code_of([&] { rho_lambda_eval(c, Divisor{P, involution(c.curve(), P)}); }) ==
        ErrorCode::SpecialDivisorError);
  CHECK(code_of([&] { rho_lambda_eval(c, Divisor{P, P}); }) == ErrorCode::DiagonalError);
}
