#include "kleinian2/kleinian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kleinian2/error.hpp"
#include "kleinian2/polynomial.hpp"

namespace kleinian2 {

namespace {

Vec2 grad_of(const ThetaJet& j) { return Vec2(j.d1[0], j.d1[1]); }

Mat2 hess_of(const ThetaJet& j) {
  Mat2 H;
  H << j.d2[0], j.d2[1], j.d2[1], j.d2[2];
  return H;
}

// Hessian of ln theta in u
Mat2 log_hess(const ThetaJet& j) {
  const Vec2 g = grad_of(j);
  return hess_of(j) / j.v - g * g.transpose() / (j.v * j.v);
}

cplx zNz(const Vec2& z, const Mat2& N) { return (z.transpose() * N * z)(0, 0); }

}  // namespace

KleinianContext::KleinianContext(const PeriodData& pd, const KleinianOptions& opt)
    : pd_(pd), opt_(opt), tp_(pd.theta_params()), pi_(pd.curve) {
  ainv_ = pd.A.inverse();
  const Mat2 E = pd.eta_A * ainv_;
  N_ = 0.5 * (E + E.transpose());
}

std::pair<ThetaJet, ThetaJet> KleinianContext::jets(const Vec2& z, int order) const {
  const Vec2 u = ainv_ * z;
  return {theta_jet(tp_, u - pd_.delta, order), theta_jet(tp_, u + pd_.delta, order)};
}

double KleinianContext::zero_closeness(const Vec2& z) const {
  const auto [m, p] = jets(z, 0);
  return std::min(m.closeness(), p.closeness());
}

KleinianContext make_context(const AdmissiblePolynomial& f, const PeriodData& pd,
                             const KleinianOptions& opt) {
  KleinianContext ctx(pd, opt);
  ctx.pd_.curve = f;
  const Mat2& Ai = ctx.ainv_;
  const ThetaJet jm = theta_jet(ctx.tp_, -pd.delta, 2);
  const ThetaJet jp = theta_jet(ctx.tp_, pd.delta, 2);
  const double ls = jm.log_scale + jp.log_scale;
  const Vec2 gm = grad_of(jm), gp = grad_of(jp);
  const cplx phi0 = jm.v * jp.v;
  const Vec2 grad = Ai.transpose() * (gm * jp.v + jm.v * gp);
  const Mat2 H = Ai.transpose() *
                     (jp.v * hess_of(jm) + jm.v * hess_of(jp) + gm * gp.transpose() +
                      gp * gm.transpose()) *
                     Ai +
                 2.0 * ctx.N_ * phi0;
  if (H(0, 0) == cplx(0.0))
    throw Error(ErrorCode::NormalizationError, "second z1-derivative of the theta product vanishes");
  const cplx cs = 2.0 / H(0, 0);  // scaled by exp(ls)
  const double jet_err = std::max({std::abs(cs * phi0), std::abs(cs * grad(0)), std::abs(cs * grad(1)),
                                   std::abs(cs * H(0, 1)), std::abs(cs * H(1, 1))});
  if (!(jet_err < opt.tol_jet))
    throw Error(ErrorCode::NormalizationError,
                "order-2 jet of S is not z1^2 (residual " + std::to_string(jet_err) + ")");
  ctx.c_S_ = cs * std::exp(-ls);

  if (f.weierstrass_form()) {
    if (!pd.delta_half_period)
      throw Error(ErrorCode::NormalizationError, "Riemann constant is not a half period");
    ctx.sigma_shift_ = -pi * I * (Ai.transpose() * pd.delta_b.cast<cplx>());
    // d/dz of exp(z^T N z / 2 + shift^T z) theta(A^-1 z - Delta) at 0
    const ThetaJet j = theta_jet(ctx.tp_, -pd.delta, 1);
    const Vec2 g = Ai.transpose() * grad_of(j) + ctx.sigma_shift_ * j.v;
    if (g(0) == cplx(0.0))
      throw Error(ErrorCode::NormalizationError, "d sigma / dz1 vanishes at 0");
    const cplx c = 1.0 / g(0);
    const double err = std::max(std::abs(c * g(1)), std::abs(c * j.v));
    if (!(err < opt.tol_jet))
      throw Error(ErrorCode::NormalizationError, "sigma jet at 0 is not z1");
    ctx.c_sigma_ = c * std::exp(-j.log_scale);
  }
  return ctx;
}

cplx S_eval(const KleinianContext& ctx, const Vec2& z) {
  const auto [m, p] = ctx.jets(z, 0);
  return ctx.c_S() * std::exp(zNz(z, ctx.N()) + m.log_scale + p.log_scale) * m.v * p.v;
}

Vec2 log_gradient_S(const KleinianContext& ctx, const Vec2& z) {
  const auto [m, p] = ctx.jets(z, 1);
  return 2.0 * ctx.N() * z + ctx.A_inv().transpose() * (grad_of(m) / m.v + grad_of(p) / p.v);
}

Mat2 log_hessian_S(const KleinianContext& ctx, const Vec2& z) {
  const auto [m, p] = ctx.jets(z, 2);
  const Mat2& Ai = ctx.A_inv();
  return 2.0 * ctx.N() + Ai.transpose() * (log_hess(m) + log_hess(p)) * Ai;
}

Eigen::Matrix4cd quartic_matrix(const AdmissiblePolynomial& f, const Wp& p) {
  const cplx p11 = p.p11, p12 = p.p12, p22 = p.p22;
  const cplx m23 = f[3] / 2.0 + f[5] / 2.0 * p12 + f[6] * p12 * p22;
  Eigen::Matrix4cd M;
  M << -f[0], f[1] / 2.0, 2.0 * p11, -2.0 * p12,
       f[1] / 2.0, -f[2] - 4.0 * p11 - f[6] * p12 * p12, m23, 2.0 * p22,
       2.0 * p11, m23, -f[4] - f[5] * p22 - f[6] * p22 * p22, 2.0,
       -2.0 * p12, 2.0 * p22, 2.0, 0.0;
  return M;
}

double quartic_residual(const AdmissiblePolynomial& f, const Wp& p) {
  const Eigen::Matrix4cd M = quartic_matrix(f, p);
  const double mx = M.cwiseAbs().maxCoeff();
  return std::abs(M.determinant()) / std::pow(mx, 4);
}

Mat2 log_hessian_from_wp(const AdmissiblePolynomial& f, const Wp& p) {
  Mat2 L;
  L(0, 0) = -2.0 * p.p11 - f[6] * p.p12 * p.p12;
  L(0, 1) = L(1, 0) = -f[5] / 2.0 * p.p12 - f[6] * p.p12 * p.p22;
  L(1, 1) = -f[5] / 2.0 * p.p22 - f[6] * (p.p22 * p.p22 + p.p12);
  return L;
}

namespace {

struct Candidate {
  Wp p;
  double residual;
};

std::vector<Candidate> wp_candidates(const AdmissiblePolynomial& f, const Mat2& L) {
  const cplx f5 = f[5], f6 = f[6];
  std::vector<Candidate> out;
  if (f6 == cplx(0.0)) {
    Wp p{-L(0, 0) / 2.0, -2.0 * L(0, 1) / f5, -2.0 * L(1, 1) / f5};
    out.push_back({p, quartic_residual(f, p)});
    return out;
  }
  const std::vector<cplx> cubic{f5 * L(1, 1) / 2.0 - f6 * L(0, 1), f5 * f5 / 4.0 + f6 * L(1, 1),
                                f5 * f6, f6 * f6};
  for (const cplx& p22 : poly_roots(cubic)) {
    Wp p;
    p.p22 = p22;
    p.p12 = -(L(1, 1) + f5 / 2.0 * p22 + f6 * p22 * p22) / f6;
    p.p11 = -(L(0, 0) + f6 * p.p12 * p.p12) / 2.0;
    out.push_back({p, quartic_residual(f, p)});
  }
  std::sort(out.begin(), out.end(),
            [](const Candidate& a, const Candidate& b) { return a.residual < b.residual; });
  return out;
}

double wp_distance(const Wp& a, const Wp& b) {
  return std::abs(a.p11 - b.p11) + std::abs(a.p12 - b.p12) + std::abs(a.p22 - b.p22);
}

}  // namespace

Wp wp_eval(const KleinianContext& ctx, const Vec2& z) {
  if (ctx.zero_closeness(z) < ctx.options().tol_zero)
    throw Error(ErrorCode::OnThetaDivisorError, "z lies on the zero set of S");
  const AdmissiblePolynomial& f = ctx.curve();
  const std::vector<Candidate> c = wp_candidates(f, log_hessian_S(ctx, z));
  const double tol = ctx.options().tol_id;
  if (c.size() == 1 || !(c[1].residual < tol)) return c.front().p;

  // Two roots certify: follow the unambiguous selection from nearby points.
  const double h = 1e-3 * std::max(ctx.periods().A.col(0).norm(), ctx.periods().A.col(1).norm());
  const Vec2 dirs[] = {Vec2(1, 0), Vec2(0, 1), Vec2(1, 1), Vec2(1, -1), Vec2(I, 0), Vec2(0, I)};
  for (const Vec2& d : dirs) {
    const Vec2 zn = z + h * d;
    if (ctx.zero_closeness(zn) < ctx.options().tol_zero) continue;
    const std::vector<Candidate> cn = wp_candidates(f, log_hessian_S(ctx, zn));
    if (cn.size() > 1 && cn[1].residual < tol) continue;
    const Wp ref = cn.front().p;
    std::vector<double> dist;
    for (const Candidate& cand : c)
      if (cand.residual < tol) dist.push_back(wp_distance(cand.p, ref));
    const auto best = std::min_element(dist.begin(), dist.end()) - dist.begin();
    double second = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < dist.size(); ++k)
      if (static_cast<long>(k) != best) second = std::min(second, dist[k]);
    if (dist[best] < 0.5 * second) return c[best].p;
  }
  throw Error(ErrorCode::RootSelectionAmbiguity, "two cubic roots satisfy the quartic relation");
}

namespace {

Sjk sjk_direct(const KleinianContext& ctx, const Vec2& z) {
  const Wp p = wp_eval(ctx, z);
  const cplx s = S_eval(ctx, z);
  return {p.p11 * s, p.p12 * s, p.p22 * s};
}

}  // namespace

Sjk S_jk_eval(const KleinianContext& ctx, const Vec2& z) {
  const double sw = ctx.options().near_zero;
  if (ctx.zero_closeness(z) >= sw) return sjk_direct(ctx, z);
  // S_jk is entire: mean value over a circle in a complex line through z that
  // stays away from the zero set of S
  constexpr int M = 32;
  const double ell = std::min(ctx.periods().A.col(0).norm(), ctx.periods().A.col(1).norm());
  const Vec2 dirs[] = {Vec2(1, 0), Vec2(0, 1), Vec2(1, 1) / std::sqrt(2.0), Vec2(1, -1) / std::sqrt(2.0),
                       Vec2(1, I) / std::sqrt(2.0)};
  double best_q = -1.0, best_r = 0.0;
  Vec2 best_v = dirs[0];
  for (double rf : {0.05, 0.1, 0.2, 0.3}) {
    for (const Vec2& v : dirs) {
      double q = std::numeric_limits<double>::infinity();
      for (int k = 0; k < M && q > best_q; ++k)
        q = std::min(q, ctx.zero_closeness(z + rf * ell * std::polar(1.0, 2.0 * pi * k / M) * v));
      if (q > best_q) {
        best_q = q;
        best_r = rf * ell;
        best_v = v;
      }
    }
    if (best_q >= sw) break;
  }
  Sjk acc{0.0, 0.0, 0.0};
  for (int k = 0; k < M; ++k) {
    const Sjk s = sjk_direct(ctx, z + best_r * std::polar(1.0, 2.0 * pi * k / M) * best_v);
    acc.s11 += s.s11;
    acc.s12 += s.s12;
    acc.s22 += s.s22;
  }
  return {acc.s11 / double(M), acc.s12 / double(M), acc.s22 / double(M)};
}

namespace {

void require_weierstrass(const KleinianContext& ctx) {
  if (!ctx.c_sigma())
    throw Error(ErrorCode::NotWeierstrassFormError, "sigma requires f6 = 0 and f5 = 4");
}

}  // namespace

cplx sigma_eval(const KleinianContext& ctx, const Vec2& z) {
  require_weierstrass(ctx);
  const ThetaJet j = theta_jet(ctx.theta(), ctx.A_inv() * z - ctx.periods().delta, 0);
  const cplx lin = (ctx.sigma_shift().transpose() * z)(0, 0);
  return *ctx.c_sigma() * std::exp(0.5 * zNz(z, ctx.N()) + lin + j.log_scale) * j.v;
}

SigmaLogDerivs sigma_log_derivs(const KleinianContext& ctx, const Vec2& z) {
  require_weierstrass(ctx);
  const Mat2& Ai = ctx.A_inv();
  const ThetaJet j = theta_jet(ctx.theta(), Ai * z - ctx.periods().delta, 3);
  if (j.closeness() < ctx.options().tol_zero)
    throw Error(ErrorCode::OnSigmaDivisorError, "z lies on the zero set of sigma");
  const Vec2 g = grad_of(j) / j.v;
  const Vec2 zeta = ctx.N() * z + ctx.sigma_shift() + Ai.transpose() * g;
  // third derivatives of ln theta in u
  auto th2 = [&](int a, int b) { return j.d2[a + b] / j.v; };
  auto th3 = [&](int a, int b, int c) { return j.d3[a + b + c] / j.v; };
  auto T = [&](int a, int b, int c) {
    return th3(a, b, c) - (th2(a, b) * g(c) + th2(a, c) * g(b) + th2(b, c) * g(a)) +
           2.0 * g(a) * g(b) * g(c);
  };
  auto P = [&](int jj, int kk, int ll) {
    cplx acc = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) acc += T(a, b, c) * Ai(a, jj) * Ai(b, kk) * Ai(c, ll);
    return -acc;
  };
  return {zeta(0), zeta(1), P(0, 0, 0), P(0, 0, 1), P(0, 1, 1), P(1, 1, 1)};
}

Vec2 abel_forward(const KleinianContext& ctx, const Divisor& D) {
  const PathIntegrator& integ = ctx.integrator();
  const int base = ctx.periods().base_root;
  return abel_integral(integ, D.p, base).u + abel_integral(integ, D.q, base).u;
}

Divisor jacobi_invert(const KleinianContext& ctx, const Vec2& z) {
  const AdmissiblePolynomial& f = ctx.curve();
  const Wp p = wp_eval(ctx, z);
  const cplx disc = std::sqrt(p.p22 * p.p22 + 4.0 * p.p12);
  cplx x1 = 0.5 * (p.p22 + disc);
  if (std::abs(0.5 * (p.p22 - disc)) > std::abs(x1)) x1 = 0.5 * (p.p22 - disc);
  const cplx x2 = x1 == cplx(0.0) ? cplx(0.0) : -p.p12 / x1;

  const cplx y1 = std::sqrt(f.eval(x1));
  const cplx y2abs = std::sqrt(f.eval(x2));
  const cplx target = (F_eval(f, x1, x2) - 4.0 * (x1 - x2) * (x1 - x2) * p.p11) / 2.0;
  std::vector<Divisor> cands;
  const double ys = std::sqrt(1.0 + std::abs(f.eval(x1)));
  if (std::abs(y1) > 1e-6 * ys) {
    const cplx want = target / y1;
    const cplx y2 = std::abs(want - y2abs) <= std::abs(want + y2abs) ? y2abs : -y2abs;
    cands.push_back({CurvePoint::affine(x1, y1), CurvePoint::affine(x2, y2)});
    cands.push_back({CurvePoint::affine(x1, -y1), CurvePoint::affine(x2, -y2)});
  }
  // low-information cases (branch point, near-diagonal): try every sign
  if (cands.empty() || std::abs(x1 - x2) < 1e-4 * f.root_scale()) {
    for (int s1 : {1, -1})
      for (int s2 : {1, -1})
        cands.push_back({CurvePoint::affine(x1, double(s1) * y1), CurvePoint::affine(x2, double(s2) * y2abs)});
  }
  double best = std::numeric_limits<double>::infinity();
  Divisor out = cands.front();
  for (const Divisor& D : cands) {
    if (is_special(f, D)) continue;
    const double r = lattice_distance(ctx.periods(), abel_forward(ctx, D) - z);
    if (r < best) {
      best = r;
      out = D;
    }
  }
  if (!(best < ctx.options().tol_rt * (1.0 + z.norm())))
    throw Error(ErrorCode::SignResolutionError,
                "no sign assignment reproduces z (residual " + std::to_string(best) + ")");
  return out;
}

RhoLambda rho_lambda_eval(const KleinianContext& ctx, const Divisor& D) {
  const AdmissiblePolynomial& f = ctx.curve();
  if (D.p.is_infinity() || D.q.is_infinity())
    throw Error(ErrorCode::InfinitePointError, "rho and lambda need affine points");
  if (is_special(f, D)) throw Error(ErrorCode::SpecialDivisorError, "divisor of the form (P) + (JP)");
  if (std::abs(D.p.x() - D.q.x()) <= 1e-12 * f.root_scale())
    throw Error(ErrorCode::DiagonalError, "x1 = x2");
  const PathIntegrator& integ = ctx.integrator();
  const int base = ctx.periods().base_root;
  const AbelIntegral a = abel_integral(integ, D.p, base), b = abel_integral(integ, D.q, base);
  RhoLambda out;
  out.z = a.u + b.u;
  out.rho1 = a.rho(0) + b.rho(0);
  out.rho2 = a.rho(1) + b.rho(1);
  out.lambda = (D.p.y() - D.q.y()) / (D.p.x() - D.q.x());
  return out;
}

EvalBundle eval_bundle(const KleinianContext& ctx, const Vec2& z, bool with_sigma) {
  EvalBundle b;
  b.z = z;
  b.S = S_eval(ctx, z);
  const Sjk s = S_jk_eval(ctx, z);
  b.S11 = s.s11;
  b.S12 = s.s12;
  b.S22 = s.s22;
  if (ctx.zero_closeness(z) >= ctx.options().tol_zero) b.wp = wp_eval(ctx, z);
  if (with_sigma) {
    b.sigma = sigma_eval(ctx, z);
    const ThetaJet j = theta_jet(ctx.theta(), ctx.A_inv() * z - ctx.periods().delta, 0);
    if (j.closeness() >= ctx.options().tol_zero) b.sigma_derivs = sigma_log_derivs(ctx, z);
  }
  return b;
}

}  // namespace kleinian2
