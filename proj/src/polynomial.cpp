#include "kleinian2/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "kleinian2/error.hpp"

namespace kleinian2 {

cplx poly_eval(std::span<const cplx> c, cplx x) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cplx poly_deriv(std::span<const cplx> c, cplx x, int order) {
  cplx acc = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= order; --k) {
    double fall = 1.0;
    for (int j = 0; j < order; ++j) fall *= k - j;
    acc = acc * x + c[k] * fall;
  }
  return acc;
}

std::vector<cplx> poly_roots(std::span<const cplx> c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1 || c.back() == cplx(0.0))
    throw Error(ErrorCode::DegreeError, "leading coefficient vanishes");
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceError, "companion eigenvalue solver failed");

  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
  for (cplx& r : roots) {
    // polish, keeping a step only if it reduces the residual
    for (int it = 0; it < 8; ++it) {
      const cplx fr = poly_eval(c, r);
      const cplx dr = poly_deriv(c, r);
      if (fr == cplx(0.0) || dr == cplx(0.0)) break;
      const cplx cand = r - fr / dr;
      if (std::abs(poly_eval(c, cand)) >= std::abs(fr)) break;
      r = cand;
    }
  }
  for (const cplx& r : roots)
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
      throw Error(ErrorCode::ConvergenceError, "root finder produced a non-finite root");
  sort_canonical(roots);
  return roots;
}

void sort_canonical(std::vector<cplx>& roots) {
  double scale = 1.0;
  for (const cplx& r : roots) scale = std::max(scale, std::abs(r));
  const double tie = 1e-9 * scale;
  std::sort(roots.begin(), roots.end(), [tie](cplx a, cplx b) {
    if (std::abs(a.real() - b.real()) > tie) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

}  // namespace kleinian2
