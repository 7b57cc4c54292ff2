#pragma once

#include <array>
#include <optional>
#include <vector>

#include "kleinian2/curve.hpp"
#include "kleinian2/quadrature.hpp"

namespace kleinian2 {

enum class Form { omega1 = 0, omega2 = 1, r1 = 2, r2 = 3 };

/// Local model of the curve: y^2 = lead * prod (alpha_i + beta_i v).
/// The x chart has factors (x - e_i); the t chart uses t = 1/x with
/// ty^2 = t^6 f(1/t), ty = t^3 y.
struct Chart {
  enum class Kind { X, T } kind = Kind::X;
  cplx lead;
  std::vector<cplx> alpha, beta, roots;
  double min_sep = 0.0;
  double scale = 1.0;

  static Chart x_chart(const AdmissiblePolynomial& f);
  static Chart t_chart(const AdmissiblePolynomial& f);
  cplx y_squared(cplx v) const;
  /// index of a root within rel 1e-12 of v, or -1
  int root_at(cplx v) const;
};

struct PathResult {
  std::array<cplx, 4> value{};  // integrals of omega1, omega2, r1, r2
  bool has_r = true;            // false once the path enters the t chart
  cplx y_start{}, y_end{};
  cplx start_limit{};  // y ~ start_limit * sqrt(t) when starting at a root
  cplx end_limit{};    // y ~ end_limit * sqrt(1 - t) when ending at a root
  int pieces = 0;
};

/// Sheet-tracked integration of omega1, omega2, r1, r2 along polylines.
/// Each leg is straight except for polygonal minor-arc detours around roots
/// that come within 2 delta_path of it, delta_path = min_sep / 4 (halved on
/// legs where two detours would overlap). Legs are
/// bisected until each piece is at most twice as long as its distance to the
/// nearest non-endpoint root, so the quadrature sees no nearby singularity.
class PathIntegrator {
 public:
  explicit PathIntegrator(const AdmissiblePolynomial& f, TanhSinhOptions opt = {});

  const AdmissiblePolynomial& curve() const { return f_; }
  const Chart& chart(Chart::Kind k) const { return k == Chart::Kind::X ? x_ : t_; }

  /// Vertices in the chart coordinate. If the first vertex is a root the
  /// start sheet is start_sign * principal; otherwise y_start is used.
  PathResult integrate(Chart::Kind kind, const std::vector<cplx>& vertices, cplx y_start,
                       int start_sign = 1) const;

 private:
  struct Piece {
    cplx a, b;
    int start_root = -1, end_root = -1;
  };
  std::optional<std::vector<Piece>> layout(const Chart& ch, cplx a, cplx b, int ra, int rb,
                                           double R) const;
  void subdivide(const Chart& ch, const Piece& p, std::vector<Piece>& out, int depth) const;

  AdmissiblePolynomial f_;
  Chart x_, t_;
  TanhSinhOptions opt_;
};

/// Convenience: integral of one form along a polyline in the x plane starting
/// at (x0, y0); a branch-point start uses start_sign.
cplx integrate_differential(const PathIntegrator& integ, const std::vector<cplx>& vertices,
                            cplx y0, Form kind, int start_sign = 1);

}  // namespace kleinian2
