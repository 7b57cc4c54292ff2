#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kleinian2/kleinian.hpp"

namespace kleinian2 {

struct CheckResult {
  enum class Status { Pass, Fail, NotApplicable };
  std::string name;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;  // witness checks pass when the residual exceeds the tolerance
  Status status = Status::Pass;
  std::string note;
};

struct VerificationReport {
  std::array<cplx, 7> curve{};
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool pass = true;
};

/// The full identity suite in its fixed order.
const std::vector<std::string>& check_names();

/// Runs the selected checks (all when empty). Each check draws from its own
/// stream seeded by (seed, check index), so subsets reproduce full-run values.
VerificationReport run_suite(const KleinianContext& ctx, std::uint64_t seed,
                             const std::vector<std::string>& checks = {});

/// Taylor coefficients c_jk of F(z0 + w), j + k <= 2, from a torus of radius r.
struct Jet2 {
  cplx c00, c10, c01, c20, c11, c02;
};
template <class F>
Jet2 torus_jet(F&& fn, const Vec2& z0, double r, int M = 16);

struct TaylorJets {
  Jet2 S, S11, S12, S22;
  double radius;
};
TaylorJets measure_taylor_jets(const KleinianContext& ctx);

template <class F>
Jet2 torus_jet(F&& fn, const Vec2& z0, double r, int M) {
  Jet2 j{};
  for (int a = 0; a < M; ++a) {
    const cplx w1 = std::polar(1.0, 2.0 * pi * a / M);
    for (int b = 0; b < M; ++b) {
      const cplx w2 = std::polar(1.0, 2.0 * pi * b / M);
      const cplx v = fn(Vec2(z0(0) + r * w1, z0(1) + r * w2));
      j.c00 += v;
      j.c10 += v / w1;
      j.c01 += v / w2;
      j.c20 += v / (w1 * w1);
      j.c11 += v / (w1 * w2);
      j.c02 += v / (w2 * w2);
    }
  }
  const double n = static_cast<double>(M) * M;
  j.c00 /= n;
  j.c10 /= n * r;
  j.c01 /= n * r;
  j.c20 /= n * r * r;
  j.c11 /= n * r * r;
  j.c02 /= n * r * r;
  return j;
}

}  // namespace kleinian2
