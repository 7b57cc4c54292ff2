#pragma once

#include <optional>

#include "kleinian2/periods.hpp"

namespace kleinian2 {

struct KleinianOptions {
  double tol_id = 1e-7;    // quartic certificate / cubic root acceptance
  double tol_jet = 1e-7;   // normalization cross-checks
  double tol_zero = 1e-6;  // theta-factor closeness below which S counts as zero
  double tol_rt = 1e-7;    // Jacobi inversion round trip
  double near_zero = 1e-2; // S_jk switches to the circle mean below this closeness
};

/// Everything needed to evaluate the Kleinian functions of one curve.
class KleinianContext {
 public:
  KleinianContext(const PeriodData& pd, const KleinianOptions& opt);

  const AdmissiblePolynomial& curve() const { return pd_.curve; }
  const PeriodData& periods() const { return pd_; }
  const ThetaParams& theta() const { return tp_; }
  const PathIntegrator& integrator() const { return pi_; }
  const KleinianOptions& options() const { return opt_; }
  const Mat2& A_inv() const { return ainv_; }
  /// symmetric part of eta_A A^-1
  const Mat2& N() const { return N_; }
  cplx c_S() const { return c_S_; }
  std::optional<cplx> c_sigma() const { return c_sigma_; }
  /// linear term of ln sigma: -pi i A^-T b for Delta = (a + Omega b) / 2
  const Vec2& sigma_shift() const { return sigma_shift_; }

  /// theta jets at A^-1 z - Delta and A^-1 z + Delta
  std::pair<ThetaJet, ThetaJet> jets(const Vec2& z, int order) const;
  /// min closeness of the two theta factors of S at z
  double zero_closeness(const Vec2& z) const;

 private:
  friend KleinianContext make_context(const AdmissiblePolynomial&, const PeriodData&,
                                      const KleinianOptions&);
  PeriodData pd_;
  KleinianOptions opt_;
  ThetaParams tp_;
  PathIntegrator pi_;
  Mat2 ainv_, N_;
  cplx c_S_{};
  std::optional<cplx> c_sigma_;
  Vec2 sigma_shift_ = Vec2::Zero();
};

KleinianContext make_context(const AdmissiblePolynomial& f, const PeriodData& pd,
                             const KleinianOptions& opt = {});

cplx S_eval(const KleinianContext& ctx, const Vec2& z);

struct Wp {
  cplx p11, p12, p22;
};
Wp wp_eval(const KleinianContext& ctx, const Vec2& z);

struct Sjk {
  cplx s11, s12, s22;
};
Sjk S_jk_eval(const KleinianContext& ctx, const Vec2& z);

/// grad ln S and Hessian of ln S from analytic theta derivatives
Vec2 log_gradient_S(const KleinianContext& ctx, const Vec2& z);
Mat2 log_hessian_S(const KleinianContext& ctx, const Vec2& z);

/// The determinantal quartic relation in (p11, p12, p22), divided by the
/// fourth power of its largest entry.
double quartic_residual(const AdmissiblePolynomial& f, const Wp& p);
Eigen::Matrix4cd quartic_matrix(const AdmissiblePolynomial& f, const Wp& p);

/// The second-log-derivative relations: L as a function of p.
Mat2 log_hessian_from_wp(const AdmissiblePolynomial& f, const Wp& p);

cplx sigma_eval(const KleinianContext& ctx, const Vec2& z);
struct SigmaLogDerivs {
  cplx zeta1, zeta2, p111, p112, p122, p222;
};
SigmaLogDerivs sigma_log_derivs(const KleinianContext& ctx, const Vec2& z);

Vec2 abel_forward(const KleinianContext& ctx, const Divisor& D);
Divisor jacobi_invert(const KleinianContext& ctx, const Vec2& z);

struct RhoLambda {
  cplx rho1, rho2, lambda;
  Vec2 z;
};
RhoLambda rho_lambda_eval(const KleinianContext& ctx, const Divisor& D);

struct EvalBundle {
  Vec2 z;
  cplx S, S11, S12, S22;
  std::optional<Wp> wp;
  std::optional<cplx> sigma;
  std::optional<SigmaLogDerivs> sigma_derivs;
};
EvalBundle eval_bundle(const KleinianContext& ctx, const Vec2& z, bool with_sigma);

}  // namespace kleinian2
