#pragma once

#include <array>
#include <string>
#include <vector>

#include "kleinian2/curve.hpp"
#include "kleinian2/path.hpp"
#include "kleinian2/theta.hpp"

namespace kleinian2 {

using Mat4i = Eigen::Matrix4i;
using Vec2i = Eigen::Vector2i;

/// Loops c_k = 2 * (segment e_k -> e_{k+1}) on the sheet whose y starts with a
/// positive principal square root, for the chain e_0, ..., e_4 of branch
/// points ordered along a direction. Rows of `basis` express a1, a2, b1, b2 in
/// terms of c_1..c_4.
struct CycleSet {
  double chain_angle = 0.0;
  std::vector<int> chain;  // indices into the canonical branch point list
  std::array<std::array<cplx, 4>, 4> integrals{};  // [cycle][omega1, omega2, r1, r2]
  Mat4i intersection = Mat4i::Zero();  // of c_1..c_4
  Mat4i basis = Mat4i::Identity();
  double pairing_residual = 0.0;  // combinatorial vs bilinear-pairing intersection numbers
};

struct PeriodOptions {
  double chain_angle = 0.0;
  TanhSinhOptions quad{};
  double theta_eps = 1e-14;
};

CycleSet build_cycles(const PathIntegrator& integ, const PeriodOptions& opt = {});
CycleSet build_cycles(const AdmissiblePolynomial& f, const PeriodOptions& opt = {});

/// Standard symplectic form J = [[0, I], [-I, 0]].
Mat4i standard_symplectic();
/// Integer M with M J M^T = standard form, for a unimodular antisymmetric J.
Mat4i symplectic_reduction(const Mat4i& J);

struct PeriodResiduals {
  double symmetry = 0.0;      // |Omega - Omega^T|
  double lambda_min = 0.0;    // min eigenvalue of Im Omega
  double legendre = 0.0;      // max of both 2 pi i I identities
  double legendre_sym = 0.0;  // max of the three symmetry identities
  double delta_certificate = 0.0;
};

struct PeriodData {
  AdmissiblePolynomial curve;
  CycleSet cycles;
  Mat2 A, B, eta_A, eta_B, Omega;
  Vec2 delta;
  bool delta_half_period = false;
  Vec2i delta_a = Vec2i::Zero(), delta_b = Vec2i::Zero();  // delta = (a + Omega b) / 2
  int base_root = 0;
  double theta_eps = 1e-14;
  PeriodResiduals residuals;
  std::vector<std::string> warnings;

  Mat2 A_inv() const { return A.inverse(); }
  ThetaParams theta_params() const { return ThetaParams(Omega, theta_eps); }
};

PeriodData compute_period_data(const AdmissiblePolynomial& f, const PeriodOptions& opt = {});

/// Assembles A, B, eta, Omega from a cycle set and checks the period invariants.
void assemble_periods(PeriodData& pd);
PeriodResiduals period_residuals(const PeriodData& pd);

Vec2 eta_of_lattice(const PeriodData& pd, const Vec2i& m, const Vec2i& n);
Vec2 lattice_vector(const PeriodData& pd, const Vec2i& m, const Vec2i& n);

struct LatticeReduction {
  Vec2 z0;
  Vec2i m, n;
};
/// z = z0 + A m + B n, real coordinates of z0 in [0, 1).
LatticeReduction lattice_reduce(const PeriodData& pd, const Vec2& z);
/// distance from z to the nearest lattice point (coordinates rounded)
double lattice_distance(const PeriodData& pd, const Vec2& z);
bool is_lattice(const PeriodData& pd, const Vec2& z, double tol = 1e-8);

/// Integrals of (omega1, omega2) and (r1, r2) from the base branch point to P
/// along the standard layout; rho is only available for affine P.
struct AbelIntegral {
  Vec2 u = Vec2::Zero();
  Vec2 rho = Vec2::Zero();
  bool has_rho = false;
};
AbelIntegral abel_integral(const PathIntegrator& integ, const CurvePoint& P, int base_root = 0);

struct RiemannConstant {
  Vec2 delta;
  bool half_period = false;
  Vec2i a = Vec2i::Zero(), b = Vec2i::Zero();
  double certificate = 0.0;  // max closeness over held-out samples
};
RiemannConstant riemann_constant(const PathIntegrator& integ, const PeriodData& pd_partial);

/// Characteristic (a, b) with v = (a + Omega b) / 2 if v is a half period.
bool half_period_characteristic(const Mat2& Omega, const Vec2& v, Vec2i& a, Vec2i& b,
                                double tol = 1e-6);

}  // namespace kleinian2
