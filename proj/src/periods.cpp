#include "kleinian2/periods.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kleinian2/error.hpp"

namespace kleinian2 {

Mat4i standard_symplectic() {
  Mat4i J = Mat4i::Zero();
  J(0, 2) = J(1, 3) = 1;
  J(2, 0) = J(3, 1) = -1;
  return J;
}

Mat4i symplectic_reduction(const Mat4i& J) {
  using V = Eigen::Vector4i;
  auto pair = [&](const V& x, const V& y) { return x.dot(J * y); };
  const Mat4i Id = Mat4i::Identity();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int p = pair(Id.col(i), Id.col(j));
      if (std::abs(p) != 1) continue;
      const V a1 = Id.col(i);
      const V b1 = p * Id.col(j);
      std::vector<V> rest;
      for (int k = 0; k < 4; ++k)
        if (k != i && k != j) {
          const V x = Id.col(k);
          rest.push_back(x + pair(x, a1) * b1 - pair(x, b1) * a1);
        }
      const int q = pair(rest[0], rest[1]);
      if (std::abs(q) != 1) continue;
      Mat4i M;
      M.row(0) = a1.transpose();
      M.row(1) = rest[0].transpose();
      M.row(2) = b1.transpose();
      M.row(3) = (q * rest[1]).transpose();
      if (M * J * M.transpose() == standard_symplectic()) return M;
    }
  }
  throw Error(ErrorCode::DegenerateGeometryError, "intersection matrix is not unimodular");
}

CycleSet build_cycles(const PathIntegrator& integ, const PeriodOptions& opt) {
  const AdmissiblePolynomial& f = integ.curve();
  const std::vector<cplx>& e = f.branch_points();
  CycleSet cs;
  cs.chain_angle = opt.chain_angle;
  std::vector<int> order(e.size());
  std::iota(order.begin(), order.end(), 0);
  const cplx rot = std::polar(1.0, -opt.chain_angle);
  const double tie = 1e-9 * f.root_scale();
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const cplx ka = e[a] * rot, kb = e[b] * rot;
    if (std::abs(ka.real() - kb.real()) > tie) return ka.real() < kb.real();
    return ka.imag() < kb.imag();
  });
  cs.chain.assign(order.begin(), order.begin() + 5);

  std::array<cplx, 4> start_lim{}, end_lim{};
  for (int k = 0; k < 4; ++k) {
    const PathResult r =
        integ.integrate(Chart::Kind::X, {e[cs.chain[k]], e[cs.chain[k + 1]]}, 0.0, 1);
    for (int m = 0; m < 4; ++m) cs.integrals[k][m] = 2.0 * r.value[m];
    start_lim[k] = r.start_limit;
    end_lim[k] = r.end_limit;
  }
  for (int k = 0; k < 3; ++k) {
    const double s = std::imag(std::conj(end_lim[k]) * start_lim[k + 1]);
    if (std::abs(s) <= 1e-12 * std::abs(end_lim[k]) * std::abs(start_lim[k + 1]))
      throw Error(ErrorCode::DegenerateGeometryError, "tangential chain crossing");
    const int v = s > 0 ? -1 : 1;
    cs.intersection(k, k + 1) = v;
    cs.intersection(k + 1, k) = -v;
  }
  // a posteriori certificate: bilinear pairing of the computed periods
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto& ci = cs.integrals[i];
      const auto& cj = cs.integrals[j];
      const cplx num = (-ci[2] * cj[0] - ci[3] * cj[1] + ci[0] * cj[2] + ci[1] * cj[3]) /
                       (2.0 * pi * I);
      cs.pairing_residual =
          std::max(cs.pairing_residual, std::abs(num - static_cast<double>(cs.intersection(i, j))));
    }
  if (cs.pairing_residual > 1e-6)
    throw Error(ErrorCode::DegenerateGeometryError,
                "chain intersection numbers disagree with the period pairing");
  cs.basis = symplectic_reduction(cs.intersection);
  return cs;
}

CycleSet build_cycles(const AdmissiblePolynomial& f, const PeriodOptions& opt) {
  return build_cycles(PathIntegrator(f, opt.quad), opt);
}

PeriodResiduals period_residuals(const PeriodData& pd) {
  PeriodResiduals r;
  const Mat2 twopii = 2.0 * pi * I * Mat2::Identity();
  r.symmetry = (pd.Omega - pd.Omega.transpose()).norm();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(0.5 * (pd.Omega.imag() + pd.Omega.imag().transpose()));
  r.lambda_min = es.eigenvalues()(0);
  r.legendre = std::max((pd.eta_A.transpose() * pd.B - pd.A.transpose() * pd.eta_B - twopii).norm(),
                        (pd.B * pd.eta_A.transpose() - pd.A * pd.eta_B.transpose() - twopii).norm());
  auto asym = [](const Mat2& X) { return (X - X.transpose()).norm(); };
  r.legendre_sym = std::max({asym(pd.eta_A * pd.eta_B.transpose()), asym(pd.eta_A.transpose() * pd.A),
                             asym(pd.eta_B.transpose() * pd.B)});
  return r;
}

void assemble_periods(PeriodData& pd) {
  const CycleSet& cs = pd.cycles;
  std::array<std::array<cplx, 4>, 4> P{};
  for (int i = 0; i < 4; ++i)
    for (int m = 0; m < 4; ++m) {
      cplx acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += static_cast<double>(cs.basis(i, k)) * cs.integrals[k][m];
      P[i][m] = acc;
    }
  for (int j = 0; j < 2; ++j)
    for (int r = 0; r < 2; ++r) {
      pd.A(r, j) = P[j][r];
      pd.B(r, j) = P[j + 2][r];
      pd.eta_A(r, j) = -P[j][r + 2];
      pd.eta_B(r, j) = -P[j + 2][r + 2];
    }
  pd.Omega = pd.A.inverse() * pd.B;
  pd.residuals = period_residuals(pd);
  const PeriodResiduals& res = pd.residuals;
  if (!(res.symmetry < 1e-8) || !(res.lambda_min > 0.0) || !(res.legendre < 1e-8) ||
      !(res.legendre_sym < 1e-8))
    throw Error(ErrorCode::RiemannMatrixError,
                "period matrices fail symmetry, positivity or Legendre checks");
}

PeriodData compute_period_data(const AdmissiblePolynomial& f, const PeriodOptions& opt) {
  const PathIntegrator integ(f, opt.quad);
  PeriodData pd{f, build_cycles(integ, opt), {}, {}, {}, {}, {}, {}, false, {}, {}, 0, 1e-14, {}, {}};
  pd.theta_eps = opt.theta_eps;
  pd.base_root = 0;
  assemble_periods(pd);
  const RiemannConstant rc = riemann_constant(integ, pd);
  pd.delta = rc.delta;
  pd.delta_half_period = rc.half_period;
  pd.delta_a = rc.a;
  pd.delta_b = rc.b;
  pd.residuals.delta_certificate = rc.certificate;
  if (f.root_scale() > 10.0 || f.root_scale() < 0.1)
    pd.warnings.push_back("branch points outside the modulus band [0.1, 10]; tolerances may not hold");
  return pd;
}

Vec2 eta_of_lattice(const PeriodData& pd, const Vec2i& m, const Vec2i& n) {
  return pd.eta_A * m.cast<cplx>() + pd.eta_B * n.cast<cplx>();
}

Vec2 lattice_vector(const PeriodData& pd, const Vec2i& m, const Vec2i& n) {
  return pd.A * m.cast<cplx>() + pd.B * n.cast<cplx>();
}

namespace {

Eigen::Matrix4d generator_matrix(const PeriodData& pd) {
  Eigen::Matrix4d G;
  for (int j = 0; j < 2; ++j) {
    G.block<2, 1>(0, j) = pd.A.col(j).real();
    G.block<2, 1>(2, j) = pd.A.col(j).imag();
    G.block<2, 1>(0, j + 2) = pd.B.col(j).real();
    G.block<2, 1>(2, j + 2) = pd.B.col(j).imag();
  }
  return G;
}

Eigen::Vector4d lattice_coordinates(const PeriodData& pd, const Vec2& z) {
  const Eigen::Matrix4d G = generator_matrix(pd);
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(G);
  const auto s = svd.singularValues();
  const double cond = s(0) / s(3);
  if (!(cond * cond < 1e12))
    throw Error(ErrorCode::IllConditionedLatticeError, "period lattice generators are ill-conditioned");
  Eigen::Vector4d rhs;
  rhs << z.real(), z.imag();
  return G.partialPivLu().solve(rhs);
}

}  // namespace

LatticeReduction lattice_reduce(const PeriodData& pd, const Vec2& z) {
  const Eigen::Vector4d c = lattice_coordinates(pd, z);
  LatticeReduction out;
  Eigen::Vector4i k;
  for (int i = 0; i < 4; ++i) {
    double fl = std::floor(c(i));
    if (c(i) - fl > 1.0 - 1e-12) fl += 1.0;  // representative near 1 folds to 0
    k(i) = static_cast<int>(fl);
  }
  out.m = k.head<2>();
  out.n = k.tail<2>();
  out.z0 = z - lattice_vector(pd, out.m, out.n);
  return out;
}

double lattice_distance(const PeriodData& pd, const Vec2& z) {
  const Eigen::Vector4d c = lattice_coordinates(pd, z);
  Vec2i m, n;
  for (int i = 0; i < 2; ++i) {
    m(i) = static_cast<int>(std::lround(c(i)));
    n(i) = static_cast<int>(std::lround(c(i + 2)));
  }
  return (z - lattice_vector(pd, m, n)).norm();
}

bool is_lattice(const PeriodData& pd, const Vec2& z, double tol) {
  return lattice_distance(pd, z) < tol;
}

AbelIntegral abel_integral(const PathIntegrator& integ, const CurvePoint& P_in, int base_root) {
  const AdmissiblePolynomial& f = integ.curve();
  const CurvePoint P = on_curve(f, P_in);
  const std::vector<cplx>& e = f.branch_points();
  const cplx e0 = e.at(base_root);
  AbelIntegral out;
  if (P.is_affine()) {
    out.has_rho = true;
    if (std::abs(P.x() - e0) <= 1e-12 * f.root_scale()) return out;
    const PathResult r = integ.integrate(Chart::Kind::X, {e0, P.x()}, 0.0, 1);
    double sign = 1.0;
    if (integ.chart(Chart::Kind::X).root_at(P.x()) < 0) {
      const cplx y = P.y();
      if (std::abs(r.y_end * r.y_end - y * y) > 1e-6 * (1.0 + std::abs(y * y)))
        throw Error(ErrorCode::SheetTrackingError, "continued y does not match the endpoint");
      if (std::abs(r.y_end - y) > std::abs(r.y_end + y)) sign = -1.0;
    }
    out.u << sign * r.value[0], sign * r.value[1];
    out.rho << sign * r.value[2], sign * r.value[3];
    return out;
  }
  // to infinity: out to a large circle in the x chart, then t = 1/x down to 0
  cplx centroid = 0.0;
  double emax = 0.0;
  for (const cplx& r : e) {
    centroid += r;
    emax = std::max(emax, std::abs(r));
  }
  centroid /= static_cast<double>(e.size());
  cplx dir = e0 - centroid;
  dir = std::abs(dir) > 1e-12 * f.root_scale() ? dir / std::abs(dir) : cplx(-1.0);
  const cplx xm = e0 + (2.0 * emax + 1.0) * dir;
  const PathResult r1 = integ.integrate(Chart::Kind::X, {e0, xm}, 0.0, 1);
  const cplx tm = 1.0 / xm;
  const PathResult r2 = integ.integrate(Chart::Kind::T, {tm, 0.0}, tm * tm * tm * r1.y_end, 1);
  out.u << r1.value[0] + r2.value[0], r1.value[1] + r2.value[1];
  if (f.degree() == 6) {
    const cplx s = std::sqrt(f.leading());
    const int reached = std::abs(r2.y_end - s) <= std::abs(r2.y_end + s) ? 1 : 2;
    if (reached != P.infinity_index()) out.u = -out.u;
  }
  return out;
}

bool half_period_characteristic(const Mat2& Omega, const Vec2& v, Vec2i& a, Vec2i& b, double tol) {
  const Vec2 w = 2.0 * v;
  const Eigen::Matrix2d Y = Omega.imag();
  const Eigen::Vector2d bb = Y.inverse() * w.imag();
  const Eigen::Vector2d aa = w.real() - Omega.real() * bb;
  for (int i = 0; i < 2; ++i) {
    a(i) = static_cast<int>(std::lround(aa(i)));
    b(i) = static_cast<int>(std::lround(bb(i)));
  }
  return (w - (a.cast<cplx>() + Omega * b.cast<cplx>())).norm() < tol;
}

namespace {

std::vector<CurvePoint> sample_points(const AdmissiblePolynomial& f, int count) {
  const std::vector<cplx>& e = f.branch_points();
  cplx centroid = 0.0;
  for (const cplx& r : e) centroid += r;
  centroid /= static_cast<double>(e.size());
  std::vector<CurvePoint> pts;
  const double golden = 2.399963229728653;
  double radius = 0.0;
  for (const cplx& r : e) radius = std::max(radius, std::abs(r - centroid));
  for (int k = 0; pts.size() < static_cast<std::size_t>(count); ++k) {
    const cplx x = centroid + radius * (0.35 + 0.21 * k) * std::polar(1.0, 0.7 + golden * k);
    double d = 1e300;
    for (const cplx& r : e) d = std::min(d, std::abs(x - r));
    if (d < 0.1 * f.min_root_separation()) continue;
    pts.push_back(point_over(f, x, k % 2 ? -1 : 1));
  }
  return pts;
}

std::vector<std::pair<Vec2i, Vec2i>> half_period_chars(bool odd_only) {
  std::vector<std::pair<Vec2i, Vec2i>> out;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) {
          const bool odd = ((a1 * b1 + a2 * b2) % 2) == 1;
          if (odd_only && !odd) continue;
          out.push_back({Vec2i(a1, a2), Vec2i(b1, b2)});
        }
  return out;
}

}  // namespace

RiemannConstant riemann_constant(const PathIntegrator& integ, const PeriodData& pd) {
  const AdmissiblePolynomial& f = integ.curve();
  const ThetaParams tp = pd.theta_params();
  const Mat2 Ainv = pd.A.inverse();
  const Vec2 uinf = abel_integral(integ, CurvePoint::infinity(1), pd.base_root).u;
  const std::vector<CurvePoint> pts = sample_points(f, 6);
  std::vector<Vec2> v;
  for (const CurvePoint& P : pts) v.push_back(Ainv * (abel_integral(integ, P, pd.base_root).u + uinf));
  auto half = [&](const Vec2i& a, const Vec2i& b) {
    return Vec2(0.5 * (a.cast<cplx>() + pd.Omega * b.cast<cplx>()));
  };
  auto certificate = [&](const Vec2& delta, std::size_t from) {
    double worst = 0.0;
    for (std::size_t i = from; i < v.size(); ++i)
      worst = std::max(worst, theta_jet(tp, v[i] - delta, 0).closeness());
    return worst;
  };
  constexpr double kAccept = 1e-8;

  RiemannConstant out;
  if (f.degree() == 5) {
    int passed = 0;
    for (const auto& [a, b] : half_period_chars(true)) {
      const Vec2 h = half(a, b);
      const double cert = certificate(h, 0);
      if (cert < kAccept) {
        ++passed;
        out.delta = h;
        out.a = a;
        out.b = b;
        out.half_period = true;
        out.certificate = cert;
      }
    }
    if (passed != 1)
      throw Error(ErrorCode::DeltaAmbiguityError,
                  std::to_string(passed) + " odd half-periods pass the vanishing certificate");
    return out;
  }

  // Degree 6: Newton on theta(v_0 - D) = theta(v_1 - D) = 0, validated on the
  // remaining samples. Seeds: kappa + A^-1 u(inf_1) for odd kappa, then all
  // half periods.
  std::vector<Vec2> seeds;
  for (const auto& [a, b] : half_period_chars(true)) seeds.push_back(half(a, b) + Ainv * uinf);
  for (const auto& [a, b] : half_period_chars(false)) seeds.push_back(half(a, b));
  std::vector<Vec2> accepted;
  bool any_converged = false;
  for (const Vec2& seed : seeds) {
    Vec2 D = seed;
    bool ok = false;
    for (int it = 0; it < 40; ++it) {
      const ThetaJet j0 = theta_jet(tp, v[0] - D, 1), j1 = theta_jet(tp, v[1] - D, 1);
      if (j0.closeness() < 1e-14 && j1.closeness() < 1e-14) {
        ok = true;
        break;
      }
      Mat2 Jm;
      Jm << -j0.d1[0], -j0.d1[1], -j1.d1[0], -j1.d1[1];
      const Vec2 F(j0.v, j1.v);
      const Vec2 step = Jm.partialPivLu().solve(F);
      if (!std::isfinite(step.norm())) break;
      D -= step;
      if (step.norm() < 1e-14 * (1.0 + D.norm())) {
        ok = true;
        break;
      }
    }
    if (!ok) continue;
    any_converged = true;
    const double cert = certificate(D, 2);
    if (!(cert < kAccept)) continue;
    bool dup = false;
    for (const Vec2& d : accepted) {
      // same class modulo Z^2 + Omega Z^2
      const Vec2 w = D - d;
      const Eigen::Vector2d n = tp.im_inverse() * w.imag();
      Vec2i ni(static_cast<int>(std::lround(n(0))), static_cast<int>(std::lround(n(1))));
      Vec2 r = w - pd.Omega * ni.cast<cplx>();
      for (int i = 0; i < 2; ++i) r(i) -= std::round(r(i).real());
      if (r.norm() < 1e-6) dup = true;
    }
    if (!dup) {
      accepted.push_back(D);
      if (accepted.size() == 1) out.certificate = cert;
    }
  }
  if (!any_converged) throw Error(ErrorCode::NewtonDivergence, "Riemann constant Newton failed from every seed");
  if (accepted.size() != 1)
    throw Error(ErrorCode::DeltaAmbiguityError,
                std::to_string(accepted.size()) + " Riemann constant classes pass the certificate");
  out.delta = accepted.front();
  out.half_period = half_period_characteristic(pd.Omega, out.delta, out.a, out.b);
  if (!out.half_period) out.a = out.b = Vec2i::Zero();
  return out;
}

}  // namespace kleinian2
