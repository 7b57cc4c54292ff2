#include "kleinian2/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "kleinian2/error.hpp"
#include "kleinian2/json_io.hpp"

namespace kleinian2 {

namespace {

Vec2 parse_z(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InputError, "--z expects re,im,re,im; got \"" + s + "\"");
    }
  }
  if (v.size() != 4) throw Error(ErrorCode::InputError, "--z expects four numbers re,im,re,im");
  return Vec2(cplx(v[0], v[1]), cplx(v[2], v[3]));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

double parse_tol(const std::string& s, const char* origin) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && v > 0.0) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InputError, std::string(origin) + " must be a positive number");
}

struct Options {
  std::string curve, periods, divisor, z, checks, output;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  bool sigma = false;
};

KleinianOptions kleinian_options(const Options& o) {
  KleinianOptions k;
  k.tol_id = resolve_tol_id(o.tol, std::getenv("KLEINIAN2_TOL"));
  return k;
}

KleinianContext load_context(const Options& o) {
  const AdmissiblePolynomial f = curve_from_json(read_json_file(o.curve));
  const PeriodData pd = o.periods.empty() ? compute_period_data(f)
                                          : period_data_from_json(read_json_file(o.periods), f);
  return make_context(f, pd, kleinian_options(o));
}

void emit(const Json& j, const Options& o, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw Error(ErrorCode::InputError, "cannot write " + o.output);
  f << text;
}

}  // namespace

double resolve_tol_id(std::optional<double> flag, const char* env) {
  if (flag) return *flag;
  if (env && *env) return parse_tol(env, "KLEINIAN2_TOL");
  return KleinianOptions{}.tol_id;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kleinian functions of genus-2 hyperelliptic curves y^2 = f(x).\n"
               "Complex numbers are [re, im] in all JSON. Negative --z values need the "
               "--z=... form.",
               "kleinian2"};
  app.require_subcommand(1);
  Options o;
  std::string tol_text;
  auto add_common = [&](CLI::App* sub, bool curve_flag) {
    if (curve_flag) sub->add_option("--curve", o.curve, "curve JSON {\"coeffs\": [[re,im] x 7]}")->required();
    sub->add_option("--tol", tol_text,
                    "identity tolerance tol_id (default 1e-7; KLEINIAN2_TOL when unset)");
    sub->add_option("-o,--output", o.output, "write JSON here instead of stdout");
  };

  CLI::App* periods = app.add_subcommand("periods", "compute and print PeriodData");
  periods->add_option("curve", o.curve, "curve JSON")->required();
  add_common(periods, false);

  CLI::App* eval = app.add_subcommand("eval", "evaluate S, S_jk, wp_jk (and sigma) at z");
  add_common(eval, true);
  eval->add_option("--z", o.z, "re,im,re,im")->required();
  eval->add_flag("--sigma", o.sigma, "also evaluate sigma and its log-derivatives (Weierstrass form)");
  eval->add_option("--periods", o.periods, "PeriodData cache from `periods`");

  CLI::App* abel = app.add_subcommand("abel", "Abel image of a degree-2 divisor");
  add_common(abel, true);
  abel->add_option("--divisor", o.divisor, "divisor JSON {\"points\": [...]}")->required();
  abel->add_option("--periods", o.periods, "PeriodData cache");

  CLI::App* invert = app.add_subcommand("invert", "Jacobi inversion of z");
  add_common(invert, true);
  invert->add_option("--z", o.z, "re,im,re,im")->required();
  invert->add_option("--periods", o.periods, "PeriodData cache");

  CLI::App* verify = app.add_subcommand("verify", "run the identity suite; exit 0 iff all checks pass");
  add_common(verify, true);
  verify->add_option("--seed", o.seed, "RNG seed (default 1)");
  verify->add_option("--checks", o.checks, "comma-separated subset of check names");
  verify->add_option("--periods", o.periods, "PeriodData cache");

  CLI::App* taylor = app.add_subcommand("taylor", "measured order-2 jets of S, S11, S12, S22 at 0");
  add_common(taylor, true);
  taylor->add_option("--periods", o.periods, "PeriodData cache");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    out << Json{{"code", "InputError"}, {"message", e.what()}}.dump(2) << "\n";
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (!tol_text.empty()) o.tol = parse_tol(tol_text, "--tol");
    if (periods->parsed()) {
      const AdmissiblePolynomial f = curve_from_json(read_json_file(o.curve));
      emit(period_data_to_json(compute_period_data(f)), o, out);
      return 0;
    }
    if (eval->parsed()) {
      const Vec2 z = parse_z(o.z);
      const KleinianContext ctx = load_context(o);
      emit(eval_bundle_to_json(eval_bundle(ctx, z, o.sigma)), o, out);
      return 0;
    }
    if (abel->parsed()) {
      const KleinianContext ctx = load_context(o);
      const Divisor D = divisor_from_json(read_json_file(o.divisor));
      emit(Json{{"z", to_json(abel_forward(ctx, D))}}, o, out);
      return 0;
    }
    if (invert->parsed()) {
      const Vec2 z = parse_z(o.z);
      const KleinianContext ctx = load_context(o);
      emit(divisor_to_json(jacobi_invert(ctx, z)), o, out);
      return 0;
    }
    if (verify->parsed()) {
      const KleinianContext ctx = load_context(o);
      const VerificationReport rep = run_suite(ctx, o.seed, split_list(o.checks));
      emit(report_to_json(rep), o, out);
      return rep.pass ? 0 : 1;
    }
    if (taylor->parsed()) {
      const KleinianContext ctx = load_context(o);
      emit(taylor_to_json(measure_taylor_jets(ctx)), o, out);
      return 0;
    }
  } catch (const Error& e) {
    out << error_to_json(e).dump(2) << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    out << Json{{"code", "InputError"}, {"message", e.what()}}.dump(2) << "\n";
    return 2;
  }
  return 2;
}

}  // namespace kleinian2
