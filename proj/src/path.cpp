#include "kleinian2/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace kleinian2 {

namespace {

double segment_distance(cplx a, cplx b, cplx r) {
  const cplx h = b - a;
  double s = std::real((r - a) / h);
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(a + s * h - r);
}

void finish_chart(Chart& ch) {
  ch.min_sep = std::numeric_limits<double>::infinity();
  ch.scale = 1.0;
  for (std::size_t i = 0; i < ch.roots.size(); ++i) {
    ch.scale = std::max(ch.scale, std::abs(ch.roots[i]));
    for (std::size_t j = i + 1; j < ch.roots.size(); ++j)
      ch.min_sep = std::min(ch.min_sep, std::abs(ch.roots[i] - ch.roots[j]));
  }
}

}  // namespace

Chart Chart::x_chart(const AdmissiblePolynomial& f) {
  Chart ch;
  ch.kind = Kind::X;
  ch.lead = f.leading();
  for (const cplx& e : f.branch_points()) {
    ch.alpha.push_back(-e);
    ch.beta.push_back(1.0);
    ch.roots.push_back(e);
  }
  finish_chart(ch);
  return ch;
}

Chart Chart::t_chart(const AdmissiblePolynomial& f) {
  // t^6 f(1/t) = lead * t^(6 - deg) * prod (1 - e_i t)
  Chart ch;
  ch.kind = Kind::T;
  ch.lead = f.leading();
  for (const cplx& e : f.branch_points()) {
    if (e == cplx(0.0)) continue;
    ch.alpha.push_back(1.0);
    ch.beta.push_back(-e);
    ch.roots.push_back(1.0 / e);
  }
  if (f.degree() == 5) {
    ch.alpha.push_back(0.0);
    ch.beta.push_back(1.0);
    ch.roots.push_back(0.0);
  }
  finish_chart(ch);
  return ch;
}

cplx Chart::y_squared(cplx v) const {
  cplx acc = lead;
  for (std::size_t i = 0; i < alpha.size(); ++i) acc *= alpha[i] + beta[i] * v;
  return acc;
}

int Chart::root_at(cplx v) const {
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (std::abs(v - roots[i]) <= 1e-12 * scale) return static_cast<int>(i);
  return -1;
}

PathIntegrator::PathIntegrator(const AdmissiblePolynomial& f, TanhSinhOptions opt)
    : f_(f), x_(Chart::x_chart(f)), t_(Chart::t_chart(f)), opt_(opt) {}

std::optional<std::vector<PathIntegrator::Piece>> PathIntegrator::layout(const Chart& ch, cplx a,
                                                                         cplx b, int ra, int rb,
                                                                         double R) const {
  const cplx h = b - a;
  const double len = std::abs(h);
  struct Detour {
    double s_in, s_out;
    int root;
    double side;
  };
  std::vector<Detour> detours;
  for (int i = 0; i < static_cast<int>(ch.roots.size()); ++i) {
    if (i == ra || i == rb) continue;
    const cplx r = ch.roots[i];
    const cplx rel = (r - a) / h;
    const double s = rel.real();
    const double dist = std::abs(rel.imag()) * len;
    if (s <= 0.0 || s >= 1.0 || dist >= R) continue;
    if (std::abs(r - a) <= R || std::abs(r - b) <= R) continue;
    const double half = std::sqrt(R * R - dist * dist) / len;
    detours.push_back({s - half, s + half, i, rel.imag() >= 0.0 ? 1.0 : -1.0});
  }
  std::sort(detours.begin(), detours.end(),
            [](const Detour& x, const Detour& y) { return x.s_in < y.s_in; });
  for (std::size_t k = 1; k < detours.size(); ++k)
    if (detours[k].s_in < detours[k - 1].s_out) return std::nullopt;

  std::vector<cplx> pts{a};
  for (const Detour& d : detours) {
    const cplx r = ch.roots[d.root];
    const cplx pin = a + d.s_in * h, pout = a + d.s_out * h;
    const double th0 = std::arg(pin - r);
    double dth = std::arg((pout - r) / (pin - r));
    // minor arc: on the side of the chord away from the root
    if (std::abs(dth) < 1e-14) dth = pi;
    (void)d.side;
    pts.push_back(pin);
    const int n = 8;
    for (int k = 1; k < n; ++k) pts.push_back(r + R * std::polar(1.0, th0 + dth * k / n));
    pts.push_back(pout);
  }
  pts.push_back(b);
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    Piece p{pts[k], pts[k + 1]};
    if (k == 0) p.start_root = ra;
    if (k + 2 == pts.size()) p.end_root = rb;
    pieces.push_back(p);
  }
  return pieces;
}

void PathIntegrator::subdivide(const Chart& ch, const Piece& p, std::vector<Piece>& out,
                               int depth) const {
  double dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(ch.roots.size()); ++i) {
    if (i == p.start_root || i == p.end_root) continue;
    dist = std::min(dist, segment_distance(p.a, p.b, ch.roots[i]));
  }
  if (std::abs(p.b - p.a) <= 2.0 * dist || depth >= 48) {
    out.push_back(p);
    return;
  }
  const cplx m = 0.5 * (p.a + p.b);
  subdivide(ch, {p.a, m, p.start_root, -1}, out, depth + 1);
  subdivide(ch, {m, p.b, -1, p.end_root}, out, depth + 1);
}

PathResult PathIntegrator::integrate(Chart::Kind kind, const std::vector<cplx>& vertices,
                                     cplx y_start, int start_sign) const {
  const Chart& ch = chart(kind);
  PathResult res;
  res.has_r = kind == Chart::Kind::X;
  if (vertices.size() < 2) {
    res.y_start = res.y_end = y_start;
    return res;
  }
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
    const cplx a = vertices[k], b = vertices[k + 1];
    if (a == b) continue;
    const int ra = ch.root_at(a), rb = ch.root_at(b);
    const cplx pa = ra >= 0 ? ch.roots[ra] : a, pb = rb >= 0 ? ch.roots[rb] : b;
    // a leg threading between two close roots gets smaller detours; at a
    // quarter of the separation two detours can no longer overlap
    auto legs = layout(ch, pa, pb, ra, rb, 0.5 * ch.min_sep);
    if (!legs) legs = layout(ch, pa, pb, ra, rb, 0.25 * ch.min_sep);
    if (!legs) throw Error(ErrorCode::DegenerateGeometryError, "overlapping detours on a path leg");
    for (const Piece& p : *legs) subdivide(ch, p, pieces, 0);
  }
  // an interior vertex at a root would need a sheet choice
  for (std::size_t k = 0; k + 1 < pieces.size(); ++k)
    if (pieces[k].end_root >= 0)
      throw Error(ErrorCode::SheetTrackingError, "path passes through a branch point");

  const std::size_t nf = ch.alpha.size();
  cplx y = y_start;
  const AdmissiblePolynomial& f = f_;
  bool first = true;
  for (const Piece& p : pieces) {
    const cplx h = p.b - p.a;
    std::vector<cplx> Fa(nf), Fb(nf);
    for (std::size_t i = 0; i < nf; ++i) {
      Fa[i] = ch.alpha[i] + ch.beta[i] * p.a;
      Fb[i] = ch.alpha[i] + ch.beta[i] * p.b;
    }
    for (std::size_t i = 0; i < nf; ++i) {
      if (static_cast<int>(i) == p.start_root || static_cast<int>(i) == p.end_root) continue;
      const cplx w = Fb[i] / Fa[i];
      if (w.real() < 0.0 && std::abs(w.imag()) <= 1e-12 * std::abs(w))
        throw Error(ErrorCode::SheetTrackingError, "branch point on a path piece");
    }
    cplx C;
    if (p.start_root >= 0) {
      C = ch.lead * ch.beta[p.start_root] * h;
      for (std::size_t i = 0; i < nf; ++i)
        if (static_cast<int>(i) != p.start_root) C *= Fa[i];
      C = static_cast<double>(start_sign) * std::sqrt(C);
      res.start_limit = C;
    } else {
      C = y;
    }
    if (first) res.y_start = p.start_root >= 0 ? cplx(0.0) : y;
    first = false;

    auto factors = [&](double t, double tc) {
      cplx prod = C;
      for (std::size_t i = 0; i < nf; ++i) {
        const int ii = static_cast<int>(i);
        if (ii == p.start_root)
          prod *= std::sqrt(t);
        else if (ii == p.end_root)
          prod *= std::sqrt(tc);
        else
          prod *= std::sqrt(t <= 0.5 ? 1.0 + ch.beta[i] * h * t / Fa[i]
                                     : (Fb[i] - ch.beta[i] * h * tc) / Fa[i]);
      }
      return prod;
    };
    auto g = [&](double t, double tc) -> CVec<4> {
      const cplx v = t <= 0.5 ? p.a + t * h : p.b - tc * h;
      const cplx yv = factors(t, tc);
      const cplx wgt = h / yv;
      if (kind == Chart::Kind::X) {
        const cplx x = v, x2 = x * x, x3 = x2 * x, x4 = x3 * x;
        const cplx r1 = (f[3] * x + 2.0 * f[4] * x2 + 3.0 * f[5] * x3 + 4.0 * f[6] * x4) / 4.0;
        const cplx r2 = (f[5] * x2 + 2.0 * f[6] * x3) / 4.0;
        return {wgt, x * wgt, r1 * wgt, r2 * wgt};
      }
      return {-v * wgt, -wgt, 0.0, 0.0};
    };
    const CVec<4> val = tanh_sinh<4>(g, opt_);
    for (int k = 0; k < 4; ++k) res.value[k] += val[k];

    cplx yend = C;
    for (std::size_t i = 0; i < nf; ++i) {
      const int ii = static_cast<int>(i);
      if (ii == p.end_root || ii == p.start_root) continue;
      yend *= std::sqrt(Fb[i] / Fa[i]);
    }
    if (p.end_root >= 0) {
      res.end_limit = yend;
      y = 0.0;
    } else {
      y = yend;
    }
    ++res.pieces;
  }
  res.y_end = y;
  return res;
}

cplx integrate_differential(const PathIntegrator& integ, const std::vector<cplx>& vertices,
                            cplx y0, Form kind, int start_sign) {
  return integ.integrate(Chart::Kind::X, vertices, y0, start_sign).value[static_cast<int>(kind)];
}

}  // namespace kleinian2
