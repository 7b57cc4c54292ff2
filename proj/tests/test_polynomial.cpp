#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "kleinian2/polynomial.hpp"

using namespace kleinian2;

TEST_CASE("horner evaluation and derivatives") {
  const std::vector<cplx> c{1.0, -2.0, 0.0, 3.0};  // 1 - 2x + 3x^3
  const cplx x(0.5, -1.25);
  CHECK(std::abs(poly_eval(c, x) - (1.0 - 2.0 * x + 3.0 * x * x * x)) < 1e-14);
  CHECK(std::abs(poly_deriv(c, x) - (-2.0 + 9.0 * x * x)) < 1e-14);
  CHECK(std::abs(poly_deriv(c, x, 2) - 18.0 * x) < 1e-14);
  CHECK(std::abs(poly_deriv(c, x, 3) - 18.0) < 1e-14);
  CHECK(poly_deriv(c, x, 4) == cplx(0.0));
}

TEST_CASE("roots of unity come back sorted and polished") {
  std::vector<cplx> c(7, 0.0);
  c[0] = -1.0;
  c[6] = 1.0;
  std::vector<cplx> r = poly_roots(c);
  REQUIRE(r.size() == 6);
  sort_canonical(r);
  const cplx expected[6] = {-1.0, std::polar(1.0, 4 * pi / 3), std::polar(1.0, 2 * pi / 3),
                            std::polar(1.0, -pi / 3), std::polar(1.0, pi / 3), 1.0};
  for (int k = 0; k < 6; ++k) CHECK(std::abs(r[k] - expected[k]) < 1e-14);
}

TEST_CASE("roots of a product with prescribed complex roots") {
  const std::vector<cplx> want{cplx(0.3, 2.0), cplx(-1.5, 0.1), cplx(2.2, -0.7), cplx(0.0, -1.0),
                               cplx(-0.4, 0.9)};
  std::vector<cplx> c{cplx(2.0, 0.5)};
  for (const cplx& w : want) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= w * c[k];
    }
    c = next;
  }
  std::vector<cplx> r = poly_roots(c);
  std::vector<cplx> expect = want;
  sort_canonical(r);
  sort_canonical(expect);
  for (std::size_t k = 0; k < r.size(); ++k) CHECK(std::abs(r[k] - expect[k]) < 1e-13);
}

TEST_CASE("canonical order breaks real-part ties by imaginary part") {
  std::vector<cplx> r{cplx(0, 1), cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 0)};
  sort_canonical(r);
  CHECK(r[0] == cplx(-1, 0));
  CHECK(r[1] == cplx(0, -1));
  CHECK(r[2] == cplx(0, 0));
  CHECK(r[3] == cplx(0, 1));
  CHECK(r[4] == cplx(1, 0));
}
