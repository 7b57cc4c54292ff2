#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kleinian2/error.hpp"
#include "kleinian2/json_io.hpp"
#include "kleinian2/verify.hpp"
#include "test_curves.hpp"

using namespace kleinian2;

namespace {

KleinianContext context(const std::array<cplx, 7>& c) {
  const AdmissiblePolynomial f = AdmissiblePolynomial::validate(c);
  return make_context(f, compute_period_data(f));
}

const CheckResult& find(const VerificationReport& r, const std::string& name) {
  for (const CheckResult& c : r.checks)
    if (c.name == name) return c;
  throw std::runtime_error("missing " + name);
}

void show_failures(const VerificationReport& r) {
  for (const CheckResult& c : r.checks)
    if (c.status == CheckResult::Status::Fail)
      MESSAGE(c.name << ": " << c.max_residual << " vs " << c.tolerance << " " << c.note);
}

}  // namespace

TEST_CASE("Weierstrass quintic passes every check including sigma") {
  const VerificationReport r = run_suite(context(testcurves::W5), 1);
  show_failures(r);
  CHECK(r.pass);
  CHECK(r.checks.size() == check_names().size());
  for (const char* n : {"sigma_squared", "sigma_odd", "addition_formula", "duplication", "log_derivative_sigma"})
    CHECK(find(r, n).status == CheckResult::Status::Pass);
  CHECK(find(r, "non_integrability").status == CheckResult::Status::NotApplicable);
}

TEST_CASE("sextic passes; sigma checks are n/a; non-integrability witnessed") {
  const VerificationReport r = run_suite(context(testcurves::G6), 1);
  show_failures(r);
  CHECK(r.pass);
  for (const char* n : {"sigma_squared", "sigma_odd", "addition_formula", "duplication", "log_derivative_sigma"})
    CHECK(find(r, n).status == CheckResult::Status::NotApplicable);
  const CheckResult& ni = find(r, "non_integrability");
  CHECK(ni.status == CheckResult::Status::Pass);
  CHECK(ni.max_residual > 1e-3);
}

TEST_CASE("generic complex sextic passes under several seeds") {
  const KleinianContext c = context(testcurves::C6);
  for (std::uint64_t seed : {1u, 7u, 12345u}) {
    const VerificationReport r = run_suite(c, seed);
    show_failures(r);
    CHECK(r.pass);
  }
}

TEST_CASE("reports are deterministic and subsets reproduce full-run values") {
  const KleinianContext c = context(testcurves::G6);
  const VerificationReport a = run_suite(c, 3), b = run_suite(c, 3);
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());
  const VerificationReport sub = run_suite(c, 3, {"quartic_determinant", "evenness_S"});
  REQUIRE(sub.checks.size() == 2);
  CHECK(sub.checks[0].name == "evenness_S");
  CHECK(sub.checks[0].max_residual == find(a, "evenness_S").max_residual);
  CHECK(sub.checks[1].max_residual == find(a, "quartic_determinant").max_residual);
  CHECK_THROWS_AS(run_suite(c, 3, {"no_such_check"}), Error);
}

TEST_CASE("a broken context is reported, not thrown") {
  const AdmissiblePolynomial f = AdmissiblePolynomial::validate(testcurves::G6);
  PeriodData pd = compute_period_data(f);
  // a wrong Riemann constant is caught by the normalization
  PeriodData shifted = pd;
  shifted.delta += Vec2(cplx(0.1, 0.0), cplx(0.0, 0.05));
  CHECK_THROWS_AS(make_context(f, shifted), Error);
  // wrong second-kind periods only show up in the identities
  pd.eta_A(0, 1) += 1e-3;
  const VerificationReport r = run_suite(make_context(f, pd), 1, {"legendre", "quasi_periodicity"});
  CHECK_FALSE(r.pass);
  CHECK(r.checks[0].status == CheckResult::Status::Fail);
  CHECK(r.checks[1].status == CheckResult::Status::Fail);
}
