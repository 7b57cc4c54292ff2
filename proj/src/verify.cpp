#include "kleinian2/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "kleinian2/error.hpp"

namespace kleinian2 {

namespace {

using Status = CheckResult::Status;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}
  // platform-independent uniform in [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

 private:
  std::mt19937_64 gen_;
};

double rel(cplx a, cplx b, double scale) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), scale, 1e-300});
}

// z in the centered fundamental parallelotope, away from the zero set of S
Vec2 random_z(const KleinianContext& ctx, Sampler& s, double min_closeness = 1e-2) {
  const PeriodData& pd = ctx.periods();
  for (;;) {
    Vec2 z = Vec2::Zero();
    for (int j = 0; j < 2; ++j) {
      z += s.uniform(-0.5, 0.5) * pd.A.col(j);
      z += s.uniform(-0.5, 0.5) * pd.B.col(j);
    }
    if (ctx.zero_closeness(z) >= min_closeness) return z;
  }
}

CurvePoint random_point(const AdmissiblePolynomial& f, Sampler& s) {
  const std::vector<cplx>& e = f.branch_points();
  cplx centroid = 0.0;
  double radius = 0.0;
  for (const cplx& r : e) centroid += r;
  centroid /= static_cast<double>(e.size());
  for (const cplx& r : e) radius = std::max(radius, std::abs(r - centroid));
  for (;;) {
    const cplx x = centroid + radius * cplx(s.uniform(-1.2, 1.2), s.uniform(-1.2, 1.2));
    double d = 1e300;
    for (const cplx& r : e) d = std::min(d, std::abs(x - r));
    const int sign = s.uniform() < 0.5 ? 1 : -1;
    if (d > 0.05 * f.min_root_separation()) return point_over(f, x, sign);
  }
}

Divisor random_divisor(const AdmissiblePolynomial& f, Sampler& s) {
  for (;;) {
    Divisor D{random_point(f, s), random_point(f, s)};
    if (std::abs(D.p.x() - D.q.x()) > 0.05 * f.min_root_separation()) return D;
  }
}

double wp_rel(const Wp& a, const Wp& b) {
  const double scale = std::max({1.0, std::abs(b.p11), std::abs(b.p12), std::abs(b.p22)});
  return std::max({std::abs(a.p11 - b.p11), std::abs(a.p12 - b.p12), std::abs(a.p22 - b.p22)}) / scale;
}

double lattice_scale(const PeriodData& pd) {
  return std::min(pd.A.col(0).norm(), pd.A.col(1).norm());
}

// first z1-derivative of an entire function by a Cauchy circle
template <class F>
cplx d_dz1(F&& fn, const Vec2& z, double r, int M = 24) {
  cplx acc = 0.0;
  for (int k = 0; k < M; ++k) {
    const cplx w = std::polar(1.0, 2.0 * pi * k / M);
    acc += fn(Vec2(z(0) + r * w, z(1))) / w;
  }
  return acc / (static_cast<double>(M) * r);
}

struct Check {
  const char* name;
  std::function<void(const KleinianContext&, Sampler&, CheckResult&)> run;
  bool weierstrass_only = false;
  bool general_only = false;
};

void record(CheckResult& r, double residual) {
  ++r.samples;
  if (std::isnan(residual)) residual = INFINITY;
  r.max_residual = std::max(r.max_residual, residual);
}

std::vector<Check> make_checks() {
  std::vector<Check> c;
  c.push_back({"legendre", [](const KleinianContext& ctx, Sampler&, CheckResult& r) {
                 r.tolerance = 1e-8;
                 const PeriodResiduals res = period_residuals(ctx.periods());
                 record(r, std::max(res.legendre, res.legendre_sym));
               }});
  c.push_back({"eta_integrality", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-8;
                 const PeriodData& pd = ctx.periods();
                 for (int i = 0; i < 20; ++i) {
                   Vec2i m1, n1, m2, n2;
                   for (int k = 0; k < 2; ++k) {
                     m1(k) = s.integer(-3, 3);
                     n1(k) = s.integer(-3, 3);
                     m2(k) = s.integer(-3, 3);
                     n2(k) = s.integer(-3, 3);
                   }
                   const Vec2 v = lattice_vector(pd, m1, n1), w = lattice_vector(pd, m2, n2);
                   const cplx q = ((eta_of_lattice(pd, m2, n2).transpose() * v)(0, 0) -
                                   (eta_of_lattice(pd, m1, n1).transpose() * w)(0, 0)) /
                                  (2.0 * pi * I);
                   record(r, std::abs(q - std::round(q.real())));
                 }
               }});
  c.push_back({"riemann_matrix", [](const KleinianContext& ctx, Sampler&, CheckResult& r) {
                 r.tolerance = 1e-9;
                 const PeriodResiduals res = period_residuals(ctx.periods());
                 record(r, res.lambda_min > 0.0 ? res.symmetry : INFINITY);
               }});
  c.push_back({"theta_quasi_periodicity", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-10;
                 const ThetaParams& tp = ctx.theta();
                 const Mat2& Om = tp.omega();
                 for (int i = 0; i < 20; ++i) {
                   const Vec2 z(cplx(s.uniform(-1, 1), s.uniform(-0.5, 0.5)),
                                cplx(s.uniform(-1, 1), s.uniform(-0.5, 0.5)));
                   Vec2 m, n;
                   for (int k = 0; k < 2; ++k) {
                     m(k) = s.integer(-2, 2);
                     n(k) = s.integer(-2, 2);
                   }
                   const ThetaJet a = theta_jet(tp, z + n + Om * m, 0);
                   const ThetaJet b = theta_jet(tp, z, 0);
                   const cplx expo = -pi * I * (m.transpose() * Om * m)(0, 0) -
                                     2.0 * pi * I * (m.transpose() * z)(0, 0);
                   // compare in the common scale of the right-hand side
                   const cplx lhs = a.v * std::exp(a.log_scale - b.log_scale - expo);
                   record(r, std::abs(lhs - b.v) / std::max(std::abs(b.v), b.max_term));
                 }
               }});
  c.push_back({"theta_evenness", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-12;
                 for (int i = 0; i < 50; ++i) {
                   const Vec2 z(cplx(s.uniform(-1, 1), s.uniform(-0.5, 0.5)),
                                cplx(s.uniform(-1, 1), s.uniform(-0.5, 0.5)));
                   const ThetaJet a = theta_jet(ctx.theta(), z, 0), b = theta_jet(ctx.theta(), -z, 0);
                   record(r, std::abs(a.v - b.v * std::exp(b.log_scale - a.log_scale)) / a.max_term);
                 }
               }});
  c.push_back({"theta_derivatives", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-6;
                 const double h = 1e-5;
                 const int idx[9][2] = {{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2},
                                        {3, 0}, {2, 1}, {1, 2}, {0, 3}};
                 for (int i = 0; i < 5; ++i) {
                   const Vec2 z(cplx(s.uniform(-0.5, 0.5), s.uniform(-0.3, 0.3)),
                                cplx(s.uniform(-0.5, 0.5), s.uniform(-0.3, 0.3)));
                   const ThetaJet j = theta_jet(ctx.theta(), z, 3);
                   const double scale = std::exp(j.log_scale);
                   for (const auto& k : idx) {
                     // differentiate the analytic derivative of one order lower
                     const int dir = k[0] > 0 ? 0 : 1;
                     const int l1 = k[0] - (dir == 0), l2 = k[1] - (dir == 1);
                     Vec2 e = Vec2::Zero();
                     e(dir) = h;
                     const cplx fd = (theta_deriv(ctx.theta(), z + e, l1, l2) -
                                      theta_deriv(ctx.theta(), z - e, l1, l2)) /
                                     (2.0 * h);
                     const int ord = k[0] + k[1];
                     double mag = 0.0;
                     for (int a = 0; a <= ord; ++a) mag = std::max(mag, std::abs(j.scaled(a, ord - a)));
                     record(r, std::abs(fd - j.scaled(k[0], k[1]) * scale) / (mag * scale));
                   }
                 }
               }});
  c.push_back({"quasi_periodicity", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-8;
                 const PeriodData& pd = ctx.periods();
                 for (int i = 0; i < 20; ++i) {
                   const Vec2 z = random_z(ctx, s);
                   Vec2i m = Vec2i::Zero(), n = Vec2i::Zero();
                   const int g = s.integer(0, 3);
                   (g < 2 ? m : n)(g % 2) = 1;
                   const Vec2 w = lattice_vector(pd, m, n);
                   const Vec2 et = eta_of_lattice(pd, m, n);
                   const cplx factor = std::exp(2.0 * (et.transpose() * (z + 0.5 * w))(0, 0));
                   const cplx S0 = S_eval(ctx, z), S1 = S_eval(ctx, z + w);
                   const Sjk a = S_jk_eval(ctx, z), b = S_jk_eval(ctx, z + w);
                   const cplx lhs[4] = {S1, b.s11, b.s12, b.s22};
                   const cplx rhs[4] = {factor * S0, factor * a.s11, factor * a.s12, factor * a.s22};
                   double scale = 0.0;
                   for (int k = 0; k < 4; ++k) scale = std::max({scale, std::abs(lhs[k]), std::abs(rhs[k])});
                   double worst = 0.0;
                   for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(lhs[k] - rhs[k]) / scale);
                   record(r, worst);
                 }
               }});
  c.push_back({"evenness_S", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-10;
                 for (int i = 0; i < 20; ++i) {
                   const Vec2 z = random_z(ctx, s);
                   record(r, rel(S_eval(ctx, z), S_eval(ctx, -z), 0.0));
                 }
               }});
  c.push_back({"evenness_wp", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-8;
                 for (int i = 0; i < 20; ++i) {
                   const Vec2 z = random_z(ctx, s);
                   const Sjk a = S_jk_eval(ctx, z), b = S_jk_eval(ctx, -z);
                   const double sc = std::max({std::abs(a.s11), std::abs(a.s12), std::abs(a.s22)});
                   record(r, std::max({rel(a.s11, b.s11, sc), rel(a.s12, b.s12, sc), rel(a.s22, b.s22, sc),
                                       wp_rel(wp_eval(ctx, -z), wp_eval(ctx, z))}));
                 }
               }});
  c.push_back({"s_divisor_vanishing", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-8;
                 record(r, ctx.periods().residuals.delta_certificate);
                 for (int i = 0; i < 10; ++i) {
                   const Divisor D{random_point(ctx.curve(), s), CurvePoint::infinity(1)};
                   record(r, ctx.zero_closeness(abel_forward(ctx, D)));
                 }
               }});
  c.push_back({"delta_shift_invariance", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-9;
                 PeriodData pd = ctx.periods();
                 const Vec2i m(s.integer(-1, 1), 1), n(1, s.integer(-1, 1));
                 pd.delta += n.cast<cplx>() + pd.Omega * m.cast<cplx>();
                 pd.delta_a += 2 * n;
                 pd.delta_b += 2 * m;
                 const KleinianContext shifted = make_context(ctx.curve(), pd, ctx.options());
                 for (int i = 0; i < 10; ++i) {
                   const Vec2 z = random_z(ctx, s);
                   record(r, rel(S_eval(shifted, z), S_eval(ctx, z), 0.0));
                 }
               }});
  c.push_back({"quartic_determinant", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-7;
                 for (int i = 0; i < 20; ++i)
                   record(r, quartic_residual(ctx.curve(), wp_eval(ctx, random_z(ctx, s))));
               }});
  c.push_back({"forward_consistency", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-7;
                 for (int i = 0; i < 10; ++i) {
                   const Divisor D = random_divisor(ctx.curve(), s);
                   const Xi xi = xi_eval(ctx.curve(), D);
                   record(r, wp_rel(wp_eval(ctx, abel_forward(ctx, D)), Wp{xi.xi11, xi.xi12, xi.xi22}));
                 }
               }});
  c.push_back({"jacobi_roundtrip", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-7;
                 const AdmissiblePolynomial& f = ctx.curve();
                 for (int i = 0; i < 20; ++i) {
                   const Vec2 z = random_z(ctx, s);
                   const Divisor D = jacobi_invert(ctx, z);
                   record(r, lattice_distance(ctx.periods(), abel_forward(ctx, D) - z) / (1.0 + z.norm()));
                 }
                 for (int i = 0; i < 10; ++i) {
                   const Divisor D = random_divisor(f, s);
                   const Divisor E = jacobi_invert(ctx, abel_forward(ctx, D));
                   auto diff = [&](const CurvePoint& a, const CurvePoint& b) {
                     return std::abs(a.x() - b.x()) / f.root_scale() +
                            std::abs(a.y() - b.y()) / (1.0 + std::abs(a.y()));
                   };
                   record(r, std::min(std::max(diff(D.p, E.p), diff(D.q, E.q)),
                                      std::max(diff(D.p, E.q), diff(D.q, E.p))));
                 }
               }});
  c.push_back({"taylor_jets", [](const KleinianContext& ctx, Sampler&, CheckResult& r) {
                 r.tolerance = 1e-6;
                 const TaylorJets t = measure_taylor_jets(ctx);
                 auto dev = [&](const Jet2& j, cplx v, cplx h11, cplx h12, cplx h22) {
                   return std::max({std::abs(j.c00 - v), std::abs(j.c10), std::abs(j.c01),
                                    std::abs(2.0 * j.c20 - h11), std::abs(j.c11 - h12),
                                    std::abs(2.0 * j.c02 - h22)});
                 };
                 record(r, dev(t.S, 0.0, 2.0, 0.0, 0.0));
                 record(r, dev(t.S11, 1.0, 0.0, 0.0, 0.0));
                 record(r, dev(t.S12, 0.0, 0.0, 0.0, -2.0));
                 record(r, dev(t.S22, 0.0, 0.0, 2.0, 0.0));
               }});
  c.push_back({"first_derivative", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-6;
                 for (int i = 0; i < 10; ++i) {
                   const RhoLambda rl = rho_lambda_eval(ctx, random_divisor(ctx.curve(), s));
                   const Vec2 g = log_gradient_S(ctx, rl.z);
                   const cplx e1 = -2.0 * rl.rho1 + rl.lambda, e2 = -2.0 * rl.rho2;
                   const double sc = std::max({1.0, std::abs(g(0)), std::abs(g(1)), std::abs(rl.lambda)});
                   record(r, std::max(std::abs(g(0) - e1), std::abs(g(1) - e2)) / sc);
                 }
               }});
  c.push_back({"second_derivative", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-6;
                 for (int i = 0; i < 10; ++i) {
                   const Divisor D = random_divisor(ctx.curve(), s);
                   const Xi xi = xi_eval(ctx.curve(), D);
                   const Mat2 L = log_hessian_S(ctx, abel_forward(ctx, D));
                   const Mat2 E = log_hessian_from_wp(ctx.curve(), {xi.xi11, xi.xi12, xi.xi22});
                   record(r, (L - E).cwiseAbs().maxCoeff() / std::max(1.0, E.cwiseAbs().maxCoeff()));
                 }
               }});
  c.push_back({"jacobi_matrix", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-5;
                 const double h = 1e-5;
                 for (int i = 0; i < 10; ++i) {
                   const Divisor D = random_divisor(ctx.curve(), s);
                   const Vec2 z = abel_forward(ctx, D);
                   const cplx x1 = D.p.x(), x2 = D.q.x(), y1 = D.p.y(), y2 = D.q.y();
                   const cplx want[2] = {(y1 * x2 - y2 * x1) / (x2 - x1), (y2 - y1) / (x2 - x1)};
                   for (int k = 0; k < 2; ++k) {
                     Vec2 e = Vec2::Zero();
                     e(k) = h;
                     const cplx fd = (wp_eval(ctx, z + e).p22 - wp_eval(ctx, z - e).p22) / (2.0 * h);
                     record(r, rel(fd, want[k], 1.0));
                   }
                 }
               }});
  c.push_back({"log_derivative_sigma",
               [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-6;
                 const double rad = 0.1 * lattice_scale(ctx.periods());
                 for (int i = 0; i < 10; ++i) {
                   const Vec2 z = random_z(ctx, s);
                   const Jet2 j = torus_jet([&](const Vec2& w) { return sigma_eval(ctx, w); }, z, rad, 24);
                   const cplx sg = j.c00, s1 = j.c10, s2 = j.c01;
                   const cplx s11 = 2.0 * j.c20, s12 = j.c11, s22 = 2.0 * j.c02;
                   const Wp p = wp_eval(ctx, z);
                   const Wp m{-(sg * s11 - s1 * s1) / (sg * sg), -(sg * s12 - s1 * s2) / (sg * sg),
                              -(sg * s22 - s2 * s2) / (sg * sg)};
                   record(r, wp_rel(m, p));
                 }
               },
               true});
  c.push_back({"addition_formula",
               [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-6;
                 for (int i = 0; i < 10; ++i) {
                   const Vec2 u = random_z(ctx, s), v = random_z(ctx, s);
                   const cplx su = sigma_eval(ctx, u), sv = sigma_eval(ctx, v);
                   const cplx lhs = sigma_eval(ctx, u + v) * sigma_eval(ctx, u - v) / (su * su * sv * sv);
                   const Wp pu = wp_eval(ctx, u), pv = wp_eval(ctx, v);
                   const cplx t[4] = {pu.p22 * pv.p12, -pv.p22 * pu.p12, pv.p11, -pu.p11};
                   double sc = std::abs(lhs);
                   for (const cplx& x : t) sc = std::max(sc, std::abs(x));
                   record(r, std::abs(lhs - (t[0] + t[1] + t[2] + t[3])) / sc);
                 }
               },
               true});
  c.push_back({"duplication",
               [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-6;
                 const double rad = 0.05 * lattice_scale(ctx.periods());
                 int done = 0;
                 while (done < 10) {
                   const Vec2 z = random_z(ctx, s);
                   const ThetaJet j2 = theta_jet(ctx.theta(), ctx.A_inv() * (2.0 * z) - ctx.periods().delta, 0);
                   if (j2.closeness() < 1e-3) continue;
                   ++done;
                   const Sjk k = S_jk_eval(ctx, z);
                   const cplx S = S_eval(ctx, z);
                   const cplx dS = d_dz1([&](const Vec2& w) { return S_eval(ctx, w); }, z, rad);
                   const cplx d11 = d_dz1([&](const Vec2& w) { return S_jk_eval(ctx, w).s11; }, z, rad);
                   const cplx d12 = d_dz1([&](const Vec2& w) { return S_jk_eval(ctx, w).s12; }, z, rad);
                   const cplx d22 = d_dz1([&](const Vec2& w) { return S_jk_eval(ctx, w).s22; }, z, rad);
                   const cplx t[4] = {k.s12 * d22, -k.s22 * d12, k.s11 * dS, -S * d11};
                   const cplx lhs = sigma_eval(ctx, 2.0 * z);
                   double sc = std::abs(lhs);
                   for (const cplx& x : t) sc = std::max(sc, std::abs(x));
                   record(r, std::abs(lhs - (t[0] + t[1] + t[2] + t[3])) / sc);
                 }
               },
               true});
  c.push_back({"sigma_squared",
               [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-8;
                 for (int i = 0; i < 20; ++i) {
                   const Vec2 z = random_z(ctx, s);
                   const cplx sg = sigma_eval(ctx, z), S = S_eval(ctx, z);
                   record(r, std::abs(sg * sg - S) / std::abs(S));
                 }
               },
               true});
  c.push_back({"sigma_odd",
               [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-8;
                 record(r, std::abs(sigma_eval(ctx, Vec2::Zero())));
                 for (int i = 0; i < 20; ++i) {
                   const Vec2 z = random_z(ctx, s);
                   const cplx a = sigma_eval(ctx, z), b = sigma_eval(ctx, -z);
                   record(r, std::abs(a + b) / std::max(std::abs(a), std::abs(b)));
                 }
               },
               true});
  c.push_back({"non_integrability",
               [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-3;
                 r.lower_bound = true;
                 const double h = 1e-5;
                 for (int i = 0; i < 10; ++i) {
                   const Vec2 z = random_z(ctx, s);
                   const Vec2 e1(h, 0), e2(0, h);
                   const cplx d11_2 = (wp_eval(ctx, z + e2).p11 - wp_eval(ctx, z - e2).p11) / (2.0 * h);
                   const cplx d12_1 = (wp_eval(ctx, z + e1).p12 - wp_eval(ctx, z - e1).p12) / (2.0 * h);
                   record(r, std::abs(d11_2 - d12_1));
                 }
               },
               false, true});
  c.push_back({"basis_independence", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-7;
                 PeriodOptions opt;
                 opt.theta_eps = ctx.periods().theta_eps;
                 PeriodData pd = ctx.periods();
                 for (double turn : {0.5, 0.25, 0.75, 1.0 / 3.0, 1.0}) {
                   opt.chain_angle = ctx.periods().cycles.chain_angle + turn * pi;
                   pd = compute_period_data(ctx.curve(), opt);
                   if (pd.cycles.chain != ctx.periods().cycles.chain) break;
                 }
                 if (pd.cycles.chain == ctx.periods().cycles.chain) {
                   r.note = "no rotated ordering produced a different chain";
                   record(r, INFINITY);
                   return;
                 }
                 const KleinianContext other = make_context(ctx.curve(), pd, ctx.options());
                 for (int i = 0; i < 10; ++i) {
                   const Vec2 z = random_z(ctx, s);
                   if (other.zero_closeness(z) < 1e-2) continue;
                   record(r, wp_rel(wp_eval(other, z), wp_eval(ctx, z)));
                 }
               }});
  c.push_back({"linear_independence", [](const KleinianContext& ctx, Sampler& s, CheckResult& r) {
                 r.tolerance = 1e-6;
                 r.lower_bound = true;
                 Eigen::Matrix<cplx, 8, 4> M;
                 for (int i = 0; i < 8; ++i) {
                   const Wp p = wp_eval(ctx, random_z(ctx, s));
                   M.row(i) << 1.0, p.p11, p.p12, p.p22;
                 }
                 Eigen::JacobiSVD<Eigen::Matrix<cplx, 8, 4>> svd(M);
                 const auto sv = svd.singularValues();
                 record(r, sv(3) / sv(0));
                 r.samples = 8;
               }});
  return c;
}

const std::vector<Check>& checks() {
  static const std::vector<Check> c = make_checks();
  return c;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const Check& c : checks()) n.emplace_back(c.name);
    return n;
  }();
  return names;
}

TaylorJets measure_taylor_jets(const KleinianContext& ctx) {
  TaylorJets t;
  t.radius = 0.1 * lattice_scale(ctx.periods());
  const Vec2 zero = Vec2::Zero();
  t.S = torus_jet([&](const Vec2& w) { return S_eval(ctx, w); }, zero, t.radius);
  // one pass over the torus for the three S_jk
  std::vector<Sjk> vals;
  constexpr int M = 16;
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      vals.push_back(S_jk_eval(ctx, Vec2(t.radius * std::polar(1.0, 2.0 * pi * a / M),
                                         t.radius * std::polar(1.0, 2.0 * pi * b / M))));
  auto pick = [&](cplx Sjk::*field) {
    std::size_t idx = 0;
    return torus_jet([&](const Vec2&) { return vals[idx++].*field; }, zero, t.radius, M);
  };
  t.S11 = pick(&Sjk::s11);
  t.S12 = pick(&Sjk::s12);
  t.S22 = pick(&Sjk::s22);
  return t;
}

VerificationReport run_suite(const KleinianContext& ctx, std::uint64_t seed,
                             const std::vector<std::string>& selected) {
  VerificationReport rep;
  rep.curve = ctx.curve().coeffs();
  rep.seed = seed;
  for (const std::string& name : selected)
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end())
      throw Error(ErrorCode::InputError, "unknown check: " + name);
  const bool weier = ctx.curve().weierstrass_form();
  const auto& all = checks();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Check& chk = all[i];
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), chk.name) == selected.end())
      continue;
    CheckResult r;
    r.name = chk.name;
    if ((chk.weierstrass_only && !weier) || (chk.general_only && weier)) {
      r.status = Status::NotApplicable;
      rep.checks.push_back(r);
      continue;
    }
    Sampler s(seed * 0x9E3779B97F4A7C15ull + i);
    try {
      chk.run(ctx, s, r);
      const bool ok = r.samples > 0 &&
                      (r.lower_bound ? r.max_residual > r.tolerance : r.max_residual < r.tolerance);
      r.status = ok ? Status::Pass : Status::Fail;
    } catch (const Error& e) {
      r.status = Status::Fail;
      r.note = std::string(e.name()) + ": " + e.what();
    }
    if (r.status == Status::Fail) rep.pass = false;
    rep.checks.push_back(r);
  }
  return rep;
}

}  // namespace kleinian2
