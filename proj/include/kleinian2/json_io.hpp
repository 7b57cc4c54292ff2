#pragma once

#include <string>

#include "json.hpp"
#include "kleinian2/verify.hpp"

namespace kleinian2 {

using Json = nlohmann::ordered_json;

// Complex numbers are always [re, im]; doubles print with round-trip precision.
Json to_json(cplx v);
cplx cplx_from_json(const Json& j);
Json to_json(const Vec2& v);
Vec2 vec2_from_json(const Json& j);
Json to_json(const Mat2& m);
Mat2 mat2_from_json(const Json& j);

Json curve_to_json(const AdmissiblePolynomial& f);
std::array<cplx, 7> coeffs_from_json(const Json& j);
AdmissiblePolynomial curve_from_json(const Json& j);

Json period_data_to_json(const PeriodData& pd);
/// Rebuilds PeriodData and re-checks its invariants; a cache whose curve
/// differs from `f` is rejected.
PeriodData period_data_from_json(const Json& j, const AdmissiblePolynomial& f);

Json point_to_json(const CurvePoint& P);
CurvePoint point_from_json(const Json& j);
Json divisor_to_json(const Divisor& D);
Divisor divisor_from_json(const Json& j);

Json eval_bundle_to_json(const EvalBundle& b);
Json taylor_to_json(const TaylorJets& t);
Json report_to_json(const VerificationReport& r);
Json error_to_json(const Error& e);

Json read_json_file(const std::string& path);

}  // namespace kleinian2
