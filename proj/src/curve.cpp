#include "kleinian2/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kleinian2/error.hpp"
#include "kleinian2/polynomial.hpp"

namespace kleinian2 {

AdmissiblePolynomial AdmissiblePolynomial::validate(const std::array<cplx, 7>& coeffs,
                                                    const CurveTolerances& tol) {
  for (const cplx& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorCode::InputError, "coefficients must be finite");
  AdmissiblePolynomial f;
  f.c_ = coeffs;
  f.tol_ = tol;
  if (coeffs[6] != cplx(0.0))
    f.degree_ = 6;
  else if (coeffs[5] != cplx(0.0))
    f.degree_ = 5;
  else
    throw Error(ErrorCode::DegreeError, "f6 = f5 = 0: degree is below 5");

  f.roots_ = poly_roots(std::span<const cplx>(coeffs.data(), f.degree_ + 1));
  for (const cplx& r : f.roots_) f.scale_ = std::max(f.scale_, std::abs(r));

  f.min_sep_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.roots_.size(); ++i)
    for (std::size_t j = i + 1; j < f.roots_.size(); ++j)
      f.min_sep_ = std::min(f.min_sep_, std::abs(f.roots_[i] - f.roots_[j]));
  if (f.min_sep_ < tol.sep * f.scale_)
    throw Error(ErrorCode::RepeatedRootError, "root separation below threshold");

  // Clusters of a multiple root split by about eps^(1/m) and can exceed the
  // separation threshold; at such a "root" f f'' / f'^2 stays O(1) instead of
  // rounding-small.
  for (const cplx& r : f.roots_) {
    const cplx d1 = f.deriv(r), d2 = f.deriv(r, 2);
    const double ratio = std::abs(f.eval(r) * d2) / std::norm(d1);
    if (d1 == cplx(0.0) || ratio > 1e-4)
      throw Error(ErrorCode::RepeatedRootError, "ill-conditioned (multiple) root");
  }
  return f;
}

cplx AdmissiblePolynomial::eval(cplx x) const { return poly_eval(c_, x); }

cplx AdmissiblePolynomial::deriv(cplx x, int order) const { return poly_deriv(c_, x, order); }

std::vector<cplx> branch_points(const AdmissiblePolynomial& f) { return f.branch_points(); }

CurvePoint CurvePoint::affine(cplx x, cplx y) {
  CurvePoint P;
  P.x_ = x;
  P.y_ = y;
  return P;
}

CurvePoint CurvePoint::infinity(int index) {
  if (index != 1 && index != 2)
    throw Error(ErrorCode::InputError, "infinity index must be 1 or 2");
  CurvePoint P;
  P.inf_ = index;
  return P;
}

cplx CurvePoint::x() const {
  if (inf_) throw Error(ErrorCode::InfinitePointError, "point at infinity has no x");
  return x_;
}

cplx CurvePoint::y() const {
  if (inf_) throw Error(ErrorCode::InfinitePointError, "point at infinity has no y");
  return y_;
}

double on_curve_residual(const AdmissiblePolynomial& f, const CurvePoint& P) {
  if (P.is_infinity()) return 0.0;
  const cplx fx = f.eval(P.x());
  return std::abs(P.y() * P.y() - fx) / (1.0 + std::abs(fx));
}

CurvePoint on_curve(const AdmissiblePolynomial& f, const CurvePoint& P) {
  if (P.is_infinity())
    return f.degree() == 5 ? CurvePoint::infinity(1) : P;
  if (on_curve_residual(f, P) > f.tolerances().on_curve)
    throw Error(ErrorCode::NotOnCurveError, "point does not satisfy y^2 = f(x)");
  return P;
}

CurvePoint point_over(const AdmissiblePolynomial& f, cplx x, int sign) {
  return CurvePoint::affine(x, static_cast<double>(sign) * std::sqrt(f.eval(x)));
}

CurvePoint involution(const AdmissiblePolynomial& f, const CurvePoint& P) {
  if (P.is_affine()) return CurvePoint::affine(P.x(), -P.y());
  if (f.degree() == 5) return CurvePoint::infinity(1);
  return CurvePoint::infinity(3 - P.infinity_index());
}

Divisor involution(const AdmissiblePolynomial& f, const Divisor& D) {
  return {involution(f, D.p), involution(f, D.q)};
}

bool same_point(const AdmissiblePolynomial& f, const CurvePoint& P, const CurvePoint& Q,
                double rel_tol) {
  if (P.is_infinity() || Q.is_infinity()) {
    if (P.is_affine() || Q.is_affine()) return false;
    return f.degree() == 5 || P.infinity_index() == Q.infinity_index();
  }
  const double s = f.root_scale();
  const double ys = std::sqrt(1.0 + std::abs(f.eval(P.x())));
  return std::abs(P.x() - Q.x()) <= rel_tol * s && std::abs(P.y() - Q.y()) <= rel_tol * ys;
}

bool is_special(const AdmissiblePolynomial& f, const Divisor& D, double rel_tol) {
  return same_point(f, D.q, involution(f, D.p), rel_tol);
}

cplx F_eval(const AdmissiblePolynomial& f, cplx a, cplx b) {
  const cplx s = a + b, p = a * b;
  return 2.0 * f[0] + f[1] * s + 2.0 * f[2] * p + f[3] * p * s + 2.0 * f[4] * p * p +
         f[5] * p * p * s + 2.0 * f[6] * p * p * p;
}

namespace {

// xi_11 for x1 = c - d, x2 = c + d on one local branch Y of sqrt(f), expanded
// in d^2; the d^0 term of the numerator cancels identically.
cplx xi11_series(const AdmissiblePolynomial& f, cplx c, cplx d, cplx y0) {
  std::array<cplx, 7> a{};
  double fact = 1.0;
  for (int k = 0; k <= 6; ++k) {
    if (k > 0) fact *= k;
    a[k] = f.deriv(c, k) / fact;
  }
  std::array<cplx, 7> Y{};
  Y[0] = y0;
  for (int n = 1; n <= 6; ++n) {
    cplx acc = a[n];
    for (int k = 1; k < n; ++k) acc -= Y[k] * Y[n - k];
    Y[n] = acc / (2.0 * Y[0]);
  }
  // Y(-d) Y(d) = sum_n d^n sum_j (-1)^j Y_j Y_{n-j}
  auto prod = [&](int n) {
    cplx acc = 0.0;
    for (int j = 0; j <= n; ++j) acc += (j % 2 ? -1.0 : 1.0) * Y[j] * Y[n - j];
    return acc;
  };
  // F(c-d, c+d) with s = 2c, p = c^2 + e, e = -d^2: polynomial in e
  const cplx s = 2.0 * c, c2 = c * c;
  std::array<cplx, 4> G{};
  auto add_pk = [&](int k, cplx coef) {  // coef * (c2 + e)^k
    cplx binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    for (int j = 0; j <= k; ++j) G[j] += coef * binom[k][j] * std::pow(c2, k - j);
  };
  add_pk(0, 2.0 * f[0] + f[1] * s);
  add_pk(1, 2.0 * f[2] + f[3] * s);
  add_pk(2, 2.0 * f[4] + f[5] * s);
  add_pk(3, 2.0 * f[6]);
  const cplx d2 = d * d;
  cplx acc = 0.0, dp = 1.0;
  for (int k = 1; k <= 3; ++k) {
    const cplx Nk = G[k] * (k % 2 ? -1.0 : 1.0) - 2.0 * prod(2 * k);
    acc += Nk * dp;
    dp *= d2;
  }
  return acc / 16.0;
}

}  // namespace

Xi xi_eval(const AdmissiblePolynomial& f, const Divisor& D) {
  if (D.p.is_infinity() || D.q.is_infinity())
    throw Error(ErrorCode::InfinitePointError, "xi is defined for affine divisors only");
  if (is_special(f, D))
    throw Error(ErrorCode::SpecialDivisorError, "divisor of the form (P) + (JP)");
  const cplx x1 = D.p.x(), x2 = D.q.x(), y1 = D.p.y(), y2 = D.q.y();
  Xi out;
  out.xi22 = x1 + x2;
  out.xi12 = -x1 * x2;
  const cplx c = 0.5 * (x1 + x2), d = 0.5 * (x2 - x1);
  const double delta = f.tolerances().diag * f.root_scale();
  const bool same_branch = std::abs(y1 - y2) < 0.5 * std::abs(y1 + y2);
  double dist_root = std::numeric_limits<double>::infinity();
  for (const cplx& r : f.branch_points()) dist_root = std::min(dist_root, std::abs(c - r));
  if (std::abs(x1 - x2) < delta && same_branch && dist_root > 20.0 * std::abs(d)) {
    cplx y0 = std::sqrt(f.eval(c));
    if (std::abs(y0 - 0.5 * (y1 + y2)) > std::abs(y0 + 0.5 * (y1 + y2))) y0 = -y0;
    out.xi11 = xi11_series(f, c, d, y0);
  } else {
    out.xi11 = (F_eval(f, x1, x2) - 2.0 * y1 * y2) / (4.0 * (x1 - x2) * (x1 - x2));
  }
  return out;
}

}  // namespace kleinian2
