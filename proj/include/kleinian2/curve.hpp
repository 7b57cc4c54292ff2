#pragma once

#include <array>
#include <span>
#include <vector>

#include "kleinian2/types.hpp"

namespace kleinian2 {

struct CurveTolerances {
  double sep = 1e-8;        // relative root separation
  double on_curve = 1e-9;   // |y^2 - f(x)| <= on_curve * (1 + |f(x)|)
  double diag = 1e-4;       // relative |x1 - x2| below which xi_11 uses the series
};

/// y^2 = f(x) with deg f in {5, 6} and simple roots. Immutable once validated.
class AdmissiblePolynomial {
 public:
  static AdmissiblePolynomial validate(const std::array<cplx, 7>& coeffs,
                                       const CurveTolerances& tol = {});

  const std::array<cplx, 7>& coeffs() const { return c_; }
  cplx operator[](int k) const { return c_[k]; }
  int degree() const { return degree_; }
  bool weierstrass_form() const { return c_[6] == cplx(0.0) && c_[5] == cplx(4.0); }
  cplx leading() const { return c_[degree_]; }
  const std::vector<cplx>& branch_points() const { return roots_; }
  /// max(1, max |root|)
  double root_scale() const { return scale_; }
  double min_root_separation() const { return min_sep_; }
  const CurveTolerances& tolerances() const { return tol_; }

  cplx eval(cplx x) const;
  cplx deriv(cplx x, int order = 1) const;

 private:
  std::array<cplx, 7> c_{};
  int degree_ = 0;
  std::vector<cplx> roots_;
  double scale_ = 1.0;
  double min_sep_ = 0.0;
  CurveTolerances tol_;
};

std::vector<cplx> branch_points(const AdmissiblePolynomial& f);

/// Affine (x, y) or one of the points at infinity. For degree 5 there is a
/// single point at infinity and it is always stored with index 1.
class CurvePoint {
 public:
  static CurvePoint affine(cplx x, cplx y);
  static CurvePoint infinity(int index);

  bool is_affine() const { return inf_ == 0; }
  bool is_infinity() const { return inf_ != 0; }
  int infinity_index() const { return inf_; }
  cplx x() const;
  cplx y() const;

 private:
  cplx x_{}, y_{};
  int inf_ = 0;
};

/// Unordered pair (p) + (q).
struct Divisor {
  CurvePoint p;
  CurvePoint q;
};

/// Normalizes infinity indices for the curve and checks affine points lie on it.
CurvePoint on_curve(const AdmissiblePolynomial& f, const CurvePoint& P);
double on_curve_residual(const AdmissiblePolynomial& f, const CurvePoint& P);

/// The point over x with y = sign * principal sqrt(f(x)).
CurvePoint point_over(const AdmissiblePolynomial& f, cplx x, int sign = 1);

CurvePoint involution(const AdmissiblePolynomial& f, const CurvePoint& P);
Divisor involution(const AdmissiblePolynomial& f, const Divisor& D);

bool same_point(const AdmissiblePolynomial& f, const CurvePoint& P, const CurvePoint& Q,
                double rel_tol = 1e-9);
bool is_special(const AdmissiblePolynomial& f, const Divisor& D, double rel_tol = 1e-9);

/// 2f0 + f1(a+b) + 2f2 ab + f3 ab(a+b) + 2f4 a^2b^2 + f5 a^2b^2(a+b) + 2f6 a^3b^3
cplx F_eval(const AdmissiblePolynomial& f, cplx a, cplx b);

struct Xi {
  cplx xi11, xi12, xi22;
};
Xi xi_eval(const AdmissiblePolynomial& f, const Divisor& D);

}  // namespace kleinian2
