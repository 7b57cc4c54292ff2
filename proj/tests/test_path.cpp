#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kleinian2/error.hpp"
#include "kleinian2/path.hpp"
#include "kleinian2/quadrature.hpp"
#include "oracle.hpp"
#include "test_curves.hpp"

using namespace kleinian2;

TEST_CASE("tanh-sinh resolves endpoint singularities") {
  // int_0^1 dt / sqrt(t (1 - t)) = pi, int_0^1 log(t) dt = -1
  const CVec<2> v = tanh_sinh<2>([](double t, double tc) {
    return CVec<2>{1.0 / std::sqrt(t * tc), std::log(t)};
  });
  CHECK(std::abs(v[0] - pi) < 1e-13);
  CHECK(std::abs(v[1] + 1.0) < 1e-13);
}

TEST_CASE("tanh-sinh reports non-convergence") {
  TanhSinhOptions opt;
  opt.max_level = 4;
  CHECK_THROWS_AS(tanh_sinh<1>([](double t, double) { return CVec<1>{std::sin(400.0 * t)}; }, opt), Error);
}

TEST_CASE("W5 segment 0 -> 1 against Gauss-Kronrod with x = sin^2 t") {
  const AdmissiblePolynomial f = AdmissiblePolynomial::validate(testcurves::W5);
  const PathIntegrator integ(f);
  // y^2 = 4x(x^4 - 1) < 0 on (0, 1); with x = sin^2 t,
  // dx / y = -i dt / sqrt((1 + sin^2 t)(1 + sin^4 t)) on the principal sheet
  auto g = [](double t) {
    const double s2 = std::sin(t) * std::sin(t);
    return 1.0 / std::sqrt((1.0 + s2) * (1.0 + s2 * s2));
  };
  const double mag = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, pi / 2, 15, 1e-15);
  const cplx got = integrate_differential(integ, {0.0, 1.0}, 0.0, Form::omega1);
  // y ~ 2i sqrt(x) at the start
  CHECK(std::abs(got - cplx(0, -mag)) < 1e-10);
}

TEST_CASE("every chain segment of the test curves against the long-double oracle") {
  for (const auto& coeffs : {testcurves::W5, testcurves::G6, testcurves::C6}) {
    const AdmissiblePolynomial f = AdmissiblePolynomial::validate(coeffs);
    const PathIntegrator integ(f);
    const std::vector<cplx>& e = f.branch_points();
    for (int a = 0; a < static_cast<int>(e.size()); ++a)
      for (int b = 0; b < static_cast<int>(e.size()); ++b) {
        if (a == b) continue;
        // skip segments that pass through another branch point
        bool blocked = false;
        for (int k = 0; k < static_cast<int>(e.size()); ++k) {
          if (k == a || k == b) continue;
          const cplx h = e[b] - e[a];
          const cplx t = (e[k] - e[a]) / h;
          if (std::abs(t.imag()) * std::abs(h) < 1e-9 && t.real() > 0 && t.real() < 1) blocked = true;
        }
        if (blocked) continue;
        const PathResult r = integ.integrate(Chart::Kind::X, {e[a], e[b]}, 0.0, 1);
        const auto want = oracle::Segment(coeffs, e, a, b).integrals();
        for (int m = 0; m < 4; ++m) {
          const cplx w(static_cast<double>(want[m].real()), static_cast<double>(want[m].imag()));
          INFO("segment " << a << " -> " << b << " form " << m << " got " << r.value[m] << " want " << w);
          CHECK(std::abs(r.value[m] - w) < 1e-10 * std::max(1.0, std::abs(w)));
        }
      }
  }
}

TEST_CASE("paths through interior branch points are refused") {
  const AdmissiblePolynomial f = AdmissiblePolynomial::validate(testcurves::W5);
  const PathIntegrator integ(f);
  CHECK_THROWS_AS(integ.integrate(Chart::Kind::X, {cplx(-1.0), cplx(0.0), cplx(1.0)}, 0.0, 1), Error);
}

TEST_CASE("closed loop around one branch point flips the sheet") {
  const AdmissiblePolynomial f = AdmissiblePolynomial::validate(testcurves::G6);
  const PathIntegrator integ(f);
  const cplx x0(1.3, 0.0);
  const cplx y0 = point_over(f, x0).y();
  const PathResult r = integ.integrate(
      Chart::Kind::X, {x0, cplx(1.0, 0.3), cplx(0.7, 0.0), cplx(1.0, -0.3), x0}, y0);
  CHECK(std::abs(r.y_end + y0) < 1e-12 * std::abs(y0));
  const PathResult r2 = integ.integrate(
      Chart::Kind::X, {x0, cplx(1.3, 0.3), cplx(1.6, 0.0), cplx(1.3, -0.3), x0}, y0);
  CHECK(std::abs(r2.y_end - y0) < 1e-12 * std::abs(y0));
  CHECK(std::abs(r2.value[0]) < 1e-12);
}

TEST_CASE("a leg threading between two close branch points") {
  const AdmissiblePolynomial f = AdmissiblePolynomial::validate(testcurves::W5);
  const PathIntegrator integ(f);
  // the straight leg passes 0.45 from both 0 and -i; the bent route stays
  // between them, so both are homotopic
  const cplx end(0.8, -0.9);
  const PathResult straight = integ.integrate(Chart::Kind::X, {cplx(-1.0), end}, 0.0, 1);
  const PathResult bent = integ.integrate(Chart::Kind::X, {cplx(-1.0), cplx(0.0, -0.5), end}, 0.0, 1);
  for (int m = 0; m < 4; ++m) CHECK(std::abs(straight.value[m] - bent.value[m]) < 1e-11);
  CHECK(std::abs(straight.y_end - bent.y_end) < 1e-12);
}
