#include "kleinian2/json_io.hpp"

#include <fstream>

#include "kleinian2/error.hpp"

namespace kleinian2 {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InputError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json vec2i(const Vec2i& v) { return Json::array({v(0), v(1)}); }

Vec2i vec2i_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("expected an integer pair");
  return Vec2i(j[0].get<int>(), j[1].get<int>());
}

const char* status_name(CheckResult::Status s) {
  switch (s) {
    case CheckResult::Status::Pass: return "pass";
    case CheckResult::Status::Fail: return "fail";
    case CheckResult::Status::NotApplicable: return "n/a";
  }
  return "fail";
}

}  // namespace

Json to_json(cplx v) { return Json::array({v.real(), v.imag()}); }

cplx cplx_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    bad("expected a complex number [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const Vec2& v) { return Json::array({to_json(v(0)), to_json(v(1))}); }

Vec2 vec2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("expected a pair of complex numbers");
  return Vec2(cplx_from_json(j[0]), cplx_from_json(j[1]));
}

Json to_json(const Mat2& m) {
  return Json::array({to_json(m(0, 0)), to_json(m(0, 1)), to_json(m(1, 0)), to_json(m(1, 1))});
}

Mat2 mat2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) bad("expected a row-major 2x2 complex matrix");
  Mat2 m;
  m << cplx_from_json(j[0]), cplx_from_json(j[1]), cplx_from_json(j[2]), cplx_from_json(j[3]);
  return m;
}

Json curve_to_json(const AdmissiblePolynomial& f) {
  Json c = Json::array();
  for (const cplx& v : f.coeffs()) c.push_back(to_json(v));
  return Json{{"coeffs", c}};
}

std::array<cplx, 7> coeffs_from_json(const Json& j) {
  const Json& c = field(j, "coeffs");
  if (!c.is_array() || c.size() != 7) bad("\"coeffs\" must hold 7 [re, im] pairs, lowest degree first");
  std::array<cplx, 7> out{};
  for (int k = 0; k < 7; ++k) out[k] = cplx_from_json(c[k]);
  return out;
}

AdmissiblePolynomial curve_from_json(const Json& j) {
  return AdmissiblePolynomial::validate(coeffs_from_json(j));
}

Json period_data_to_json(const PeriodData& pd) {
  Json j;
  j["curve"] = curve_to_json(pd.curve);
  const CycleSet& cs = pd.cycles;
  Json integrals = Json::array();
  for (const auto& row : cs.integrals) {
    Json r = Json::array();
    for (const cplx& v : row) r.push_back(to_json(v));
    integrals.push_back(r);
  }
  auto mat4 = [](const Mat4i& m) {
    Json out = Json::array();
    for (int i = 0; i < 4; ++i) out.push_back(Json::array({m(i, 0), m(i, 1), m(i, 2), m(i, 3)}));
    return out;
  };
  j["cycles"] = {{"chain_angle", cs.chain_angle},
                 {"chain", cs.chain},
                 {"integrals", integrals},
                 {"intersection", mat4(cs.intersection)},
                 {"basis", mat4(cs.basis)},
                 {"pairing_residual", cs.pairing_residual}};
  j["A"] = to_json(pd.A);
  j["B"] = to_json(pd.B);
  j["eta_A"] = to_json(pd.eta_A);
  j["eta_B"] = to_json(pd.eta_B);
  j["Omega"] = to_json(pd.Omega);
  j["Delta"] = to_json(pd.delta);
  j["Delta_half_period"] = pd.delta_half_period;
  j["characteristic"] = {{"a", vec2i(pd.delta_a)}, {"b", vec2i(pd.delta_b)}};
  j["base_root"] = pd.base_root;
  const CurveTolerances& t = pd.curve.tolerances();
  j["tolerances"] = {{"theta_eps", pd.theta_eps}, {"sep", t.sep}, {"on_curve", t.on_curve}, {"diag", t.diag}};
  const PeriodResiduals& r = pd.residuals;
  j["residuals"] = {{"symmetry", r.symmetry},
                    {"lambda_min", r.lambda_min},
                    {"legendre", r.legendre},
                    {"legendre_sym", r.legendre_sym},
                    {"delta_certificate", r.delta_certificate}};
  j["warnings"] = pd.warnings;
  return j;
}

PeriodData period_data_from_json(const Json& j, const AdmissiblePolynomial& f) {
  if (coeffs_from_json(field(j, "curve")) != f.coeffs())
    bad("period cache belongs to a different curve");
  try {
    PeriodData pd{f, {}, {}, {}, {}, {}, {}, {}, false, {}, {}, 0, 1e-14, {}, {}};
    const Json& c = field(j, "cycles");
    pd.cycles.chain_angle = field(c, "chain_angle").get<double>();
    pd.cycles.chain = field(c, "chain").get<std::vector<int>>();
    const Json& integ = field(c, "integrals");
    const Json& inter = field(c, "intersection");
    const Json& basis = field(c, "basis");
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        pd.cycles.integrals[i][k] = cplx_from_json(integ.at(i).at(k));
        pd.cycles.intersection(i, k) = inter.at(i).at(k).get<int>();
        pd.cycles.basis(i, k) = basis.at(i).at(k).get<int>();
      }
    pd.cycles.pairing_residual = field(c, "pairing_residual").get<double>();
    pd.A = mat2_from_json(field(j, "A"));
    pd.B = mat2_from_json(field(j, "B"));
    pd.eta_A = mat2_from_json(field(j, "eta_A"));
    pd.eta_B = mat2_from_json(field(j, "eta_B"));
    pd.Omega = mat2_from_json(field(j, "Omega"));
    pd.delta = vec2_from_json(field(j, "Delta"));
    pd.delta_half_period = field(j, "Delta_half_period").get<bool>();
    pd.delta_a = vec2i_from(field(field(j, "characteristic"), "a"));
    pd.delta_b = vec2i_from(field(field(j, "characteristic"), "b"));
    pd.base_root = field(j, "base_root").get<int>();
    pd.theta_eps = field(field(j, "tolerances"), "theta_eps").get<double>();
    pd.warnings = field(j, "warnings").get<std::vector<std::string>>();
    pd.residuals = period_residuals(pd);
    pd.residuals.delta_certificate = field(field(j, "residuals"), "delta_certificate").get<double>();
    const PeriodResiduals& r = pd.residuals;
    if (!(r.symmetry < 1e-8) || !(r.lambda_min > 0.0) || !(r.legendre < 1e-8) || !(r.legendre_sym < 1e-8))
      throw Error(ErrorCode::RiemannMatrixError, "cached periods fail symmetry, positivity or Legendre checks");
    return pd;
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed period cache: ") + e.what());
  }
}

Json point_to_json(const CurvePoint& P) {
  if (P.is_infinity()) return Json{{"infinity", P.infinity_index()}};
  return Json{{"x", to_json(P.x())}, {"y", to_json(P.y())}};
}

CurvePoint point_from_json(const Json& j) {
  if (j.is_object() && j.contains("infinity")) {
    if (!j["infinity"].is_number_integer()) bad("\"infinity\" must be 1 or 2");
    const int k = j["infinity"].get<int>();
    if (k != 1 && k != 2) bad("\"infinity\" must be 1 or 2");
    return CurvePoint::infinity(k);
  }
  return CurvePoint::affine(cplx_from_json(field(j, "x")), cplx_from_json(field(j, "y")));
}

Json divisor_to_json(const Divisor& D) {
  return Json{{"points", Json::array({point_to_json(D.p), point_to_json(D.q)})}};
}

Divisor divisor_from_json(const Json& j) {
  const Json& p = field(j, "points");
  if (!p.is_array() || p.size() != 2) bad("a divisor has exactly two points");
  return {point_from_json(p[0]), point_from_json(p[1])};
}

Json eval_bundle_to_json(const EvalBundle& b) {
  Json j;
  j["z"] = to_json(b.z);
  j["S"] = to_json(b.S);
  j["S11"] = to_json(b.S11);
  j["S12"] = to_json(b.S12);
  j["S22"] = to_json(b.S22);
  if (b.wp) {
    j["wp11"] = to_json(b.wp->p11);
    j["wp12"] = to_json(b.wp->p12);
    j["wp22"] = to_json(b.wp->p22);
  }
  if (b.sigma) j["sigma"] = to_json(*b.sigma);
  if (b.sigma_derivs) {
    const SigmaLogDerivs& d = *b.sigma_derivs;
    j["zeta1"] = to_json(d.zeta1);
    j["zeta2"] = to_json(d.zeta2);
    j["wp111"] = to_json(d.p111);
    j["wp112"] = to_json(d.p112);
    j["wp122"] = to_json(d.p122);
    j["wp222"] = to_json(d.p222);
  }
  return j;
}

Json taylor_to_json(const TaylorJets& t) {
  auto jet = [](const Jet2& c) {
    return Json{{"value", to_json(c.c00)},
                {"gradient", Json::array({to_json(c.c10), to_json(c.c01)})},
                {"hessian", Json::array({to_json(2.0 * c.c20), to_json(c.c11), to_json(c.c11),
                                         to_json(2.0 * c.c02)})}};
  };
  return Json{{"radius", t.radius}, {"S", jet(t.S)}, {"S11", jet(t.S11)}, {"S12", jet(t.S12)},
              {"S22", jet(t.S22)}};
}

Json report_to_json(const VerificationReport& r) {
  Json j;
  Json c = Json::array();
  for (const cplx& v : r.curve) c.push_back(to_json(v));
  j["curve"] = {{"coeffs", c}};
  j["seed"] = r.seed;
  Json checks = Json::array();
  for (const CheckResult& k : r.checks) {
    Json e{{"name", k.name}, {"samples", k.samples}, {"max_residual", k.max_residual},
           {"tolerance", k.tolerance}, {"comparison", k.lower_bound ? ">" : "<"},
           {"status", status_name(k.status)}, {"pass", k.status != CheckResult::Status::Fail}};
    if (!k.note.empty()) e["note"] = k.note;
    checks.push_back(e);
  }
  j["checks"] = checks;
  j["pass"] = r.pass;
  return j;
}

Json error_to_json(const Error& e) { return Json{{"code", std::string(e.name())}, {"message", e.what()}}; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

}  // namespace kleinian2
