#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/multiprecision/cpp_complex.hpp>

#include "kleinian2/curve.hpp"
#include "kleinian2/error.hpp"
#include "test_curves.hpp"

using namespace kleinian2;
using testcurves::C6;
using testcurves::G6;
using testcurves::W5;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InputError;
}

}  // namespace

TEST_CASE("validation accepts the test curves") {
  const AdmissiblePolynomial w = AdmissiblePolynomial::validate(W5);
  CHECK(w.degree() == 5);
  CHECK(w.weierstrass_form());
  const std::vector<cplx> e{-1.0, cplx(0, -1), 0.0, cplx(0, 1), 1.0};
  REQUIRE(w.branch_points().size() == 5);
  for (int k = 0; k < 5; ++k) CHECK(std::abs(w.branch_points()[k] - e[k]) < 1e-14);
  CHECK(w.min_root_separation() == doctest::Approx(1.0).epsilon(1e-12));

  const AdmissiblePolynomial g = AdmissiblePolynomial::validate(G6);
  CHECK(g.degree() == 6);
  CHECK_FALSE(g.weierstrass_form());
  CHECK(g.branch_points().size() == 6);

  CHECK(AdmissiblePolynomial::validate(C6).degree() == 6);
}

TEST_CASE("validation rejects bad polynomials") {
  CHECK(code_of([] { AdmissiblePolynomial::validate({1, 0, 0, 0, 1, 0, 0}); }) == ErrorCode::DegreeError);
  CHECK(code_of([] { AdmissiblePolynomial::validate({}); }) == ErrorCode::DegreeError);
  // x^2 (x^3 - 1)
  CHECK(code_of([] { AdmissiblePolynomial::validate({0, 0, -1, 0, 0, 1, 0}); }) ==
        ErrorCode::RepeatedRootError);
  // (x - 1)^3 (x^3 + 2): a triple root that the eigenvalue solver splits apart
  CHECK(code_of([] { AdmissiblePolynomial::validate({-2, 6, -6, 1, 3, -3, 1}); }) ==
        ErrorCode::RepeatedRootError);
  CHECK(code_of([] {
          AdmissiblePolynomial::validate({0, -4, 0, 0, 0, cplx(NAN, 0), 0});
        }) == ErrorCode::InputError);
}

TEST_CASE("points on the curve") {
  const AdmissiblePolynomial f = AdmissiblePolynomial::validate(C6);
  const cplx x(0.37, -0.81);
  const CurvePoint P = point_over(f, x);
  CHECK(on_curve_residual(f, P) < 1e-15);
  CHECK(std::abs(P.y() - std::sqrt(f.eval(x))) == 0.0);
  const CurvePoint Q = involution(f, P);
  CHECK(Q.y() == -P.y());
  CHECK(code_of([&] { on_curve(f, CurvePoint::affine(x, P.y() * 1.001)); }) == ErrorCode::NotOnCurveError);
  CHECK(code_of([] { (void)CurvePoint::infinity(1).x(); }) == ErrorCode::InfinitePointError);

  const AdmissiblePolynomial w = AdmissiblePolynomial::validate(W5);
  CHECK(on_curve(w, CurvePoint::infinity(2)).infinity_index() == 1);
  CHECK(involution(f, CurvePoint::infinity(1)).infinity_index() == 2);

  CHECK(is_special(f, Divisor{P, Q}));
  CHECK_FALSE(is_special(f, Divisor{P, P}));
  CHECK(code_of([&] { xi_eval(f, Divisor{P, Q}); }) == ErrorCode::SpecialDivisorError);
}

TEST_CASE("xi symmetric functions") {
  const AdmissiblePolynomial f = AdmissiblePolynomial::validate(C6);
  const CurvePoint P = point_over(f, cplx(0.2, 0.4)), Q = point_over(f, cplx(-0.6, 0.1), -1);
  const Xi xi = xi_eval(f, Divisor{P, Q});
  CHECK(std::abs(xi.xi22 - (P.x() + Q.x())) < 1e-15);
  CHECK(std::abs(xi.xi12 + P.x() * Q.x()) < 1e-15);
  const Xi swapped = xi_eval(f, Divisor{Q, P});
  CHECK(std::abs(xi.xi11 - swapped.xi11) < 1e-13);
}

TEST_CASE("xi11 near the diagonal matches 50-digit arithmetic") {
  using boost::multiprecision::cpp_complex_50;
  const AdmissiblePolynomial f = AdmissiblePolynomial::validate(C6);
  const std::array<cplx, 7>& c = f.coeffs();
  auto mp = [](cplx v) { return cpp_complex_50(v.real(), v.imag()); };
  auto eval50 = [&](const cpp_complex_50& x) {
    cpp_complex_50 acc = 0;
    for (int k = 6; k >= 0; --k) acc = acc * x + mp(c[k]);
    return acc;
  };
  const cplx x1(0.31, -0.27);
  for (double d : {1e-3, 1e-5, 1e-7, 1e-9}) {
    const cplx x2 = x1 + cplx(d, 0.5 * d);
    const Divisor D{point_over(f, x1), point_over(f, x2)};
    const cpp_complex_50 a = mp(x1), b = mp(x2);
    cpp_complex_50 y1 = sqrt(eval50(a)), y2 = sqrt(eval50(b));
    if (abs(y1 - mp(D.p.y())) > abs(y1 + mp(D.p.y()))) y1 = -y1;
    if (abs(y2 - mp(D.q.y())) > abs(y2 + mp(D.q.y()))) y2 = -y2;
    const cpp_complex_50 Fv = 2 * mp(c[0]) + mp(c[1]) * (a + b) + 2 * mp(c[2]) * a * b +
                              mp(c[3]) * a * b * (a + b) + 2 * mp(c[4]) * a * a * b * b +
                              mp(c[5]) * a * a * b * b * (a + b) + 2 * mp(c[6]) * a * a * a * b * b * b;
    const cpp_complex_50 want = (Fv - 2 * y1 * y2) / (4 * (a - b) * (a - b));
    const cplx w(static_cast<double>(want.real()), static_cast<double>(want.imag()));
    const cplx got = xi_eval(f, D).xi11;
    INFO("d = " << d << " got " << got << " want " << w);
    CHECK(std::abs(got - w) / std::abs(w) < 1e-8);
  }
}

TEST_CASE("F is symmetric and matches the square of y at the diagonal") {
  const AdmissiblePolynomial f = AdmissiblePolynomial::validate(C6);
  const cplx a(0.4, 0.3), b(-0.2, 0.9);
  CHECK(std::abs(F_eval(f, a, b) - F_eval(f, b, a)) < 1e-14);
  CHECK(std::abs(F_eval(f, a, a) - 2.0 * f.eval(a)) < 1e-13);
}
