#pragma once

#include <array>
#include <cmath>

#include "kleinian2/error.hpp"
#include "kleinian2/types.hpp"

namespace kleinian2 {

struct TanhSinhOptions {
  double rel_tol = 1e-12;
  int min_level = 3;
  int max_level = 12;
  double s_max = 4.0;
};

template <std::size_t N>
using CVec = std::array<cplx, N>;

/// Double-exponential quadrature of a vector-valued integrand over [0, 1].
/// The integrand is called as g(t, 1 - t) with the complement computed
/// exactly, so endpoint singularities like 1/sqrt(t(1-t)) are resolved.
/// Convergence: successive levels differ by less than rel_tol times the L1
/// norm of each component.
template <std::size_t N, class G>
CVec<N> tanh_sinh(G&& g, const TanhSinhOptions& opt = {}) {
  CVec<N> sum{};
  std::array<double, N> l1{};
  auto add_node = [&](double s, double h) {
    const double u = 0.5 * pi * std::sinh(s);
    const double t = 1.0 / (1.0 + std::exp(-2.0 * u));
    const double tc = 1.0 / (1.0 + std::exp(2.0 * u));
    const double ch = std::cosh(u);
    const double w = h * 0.25 * pi * std::cosh(s) / (ch * ch);
    if (w == 0.0 || t == 0.0 || tc == 0.0) return;
    const CVec<N> v = g(t, tc);
    for (std::size_t k = 0; k < N; ++k) {
      sum[k] += w * v[k];
      l1[k] += w * std::abs(v[k]);
    }
  };
  double h = 1.0;
  const int half = static_cast<int>(std::ceil(opt.s_max));
  for (int j = -half; j <= half; ++j) add_node(j, h);
  CVec<N> prev{};
  for (std::size_t k = 0; k < N; ++k) prev[k] = sum[k];
  for (int level = 1; level <= opt.max_level; ++level) {
    h *= 0.5;
    // existing nodes keep weight proportional to h: rescale, then add odd nodes
    for (std::size_t k = 0; k < N; ++k) {
      sum[k] *= 0.5;
      l1[k] *= 0.5;
    }
    const int count = static_cast<int>(std::ceil(opt.s_max / h));
    for (int j = -count + 1; j < count; j += 2) add_node(j * h, h);
    bool done = level >= opt.min_level;
    for (std::size_t k = 0; k < N && done; ++k) {
      if (!std::isfinite(sum[k].real()) || !std::isfinite(sum[k].imag()))
        throw Error(ErrorCode::QuadratureError, "non-finite integrand value");
      if (std::abs(sum[k] - prev[k]) > opt.rel_tol * l1[k]) done = false;
    }
    if (done) return sum;
    prev = sum;
  }
  throw Error(ErrorCode::QuadratureError, "tanh-sinh node doubling did not converge");
}

}  // namespace kleinian2
