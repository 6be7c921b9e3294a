#include "regprod/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "regprod/error.hpp"
#include "regprod/special_functions.hpp"
#include "regprod/spec_file.hpp"
#include "regprod/version.hpp"

namespace regprod::cli {

namespace {

constexpr int kMinDigits = 6;
constexpr int kMaxDigits = 1000;

// Carries an exit code out of the command helpers.
struct Exit {
  int code;
  std::string message;
};

struct Options {
  std::string sequence;
  std::string spec_file;
  int digits = 12;
  std::string route = "all";
  std::string format = "text";
  std::string growth_ratio;
  std::string amplitude = "1";
  std::string constant;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kRouteInapplicable:
      return kRouteInapplicable;
    default:
      return kComputationFailed;
  }
}

OracleOptions oracle_options() {
  OracleOptions options;
  if (const char* env = std::getenv("REGPROD_MAX_TERMS"); env != nullptr && *env != '\0') {
    long cap = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, cap);
    if (ec != std::errc() || ptr != end || cap <= 0) {
      throw Exit{kBadArguments, "REGPROD_MAX_TERMS must be a positive integer"};
    }
    options.max_terms = cap;
  }
  return options;
}

// A resolved --sequence / --spec-file; `integers` has no SequenceSpec.
struct Target {
  std::string name;
  std::optional<SequenceSpec> spec;
};

Target resolve_target(const Options& opts) {
  if (opts.sequence.empty() == opts.spec_file.empty()) {
    throw Exit{kBadArguments, "exactly one of --sequence or --spec-file is required"};
  }
  const bool geometric_flags = !opts.growth_ratio.empty();
  if (!opts.spec_file.empty()) {
    if (geometric_flags) throw Exit{kBadArguments, "--growth-ratio applies only to --sequence geometric"};
    try {
      SequenceSpec spec = parse_spec_file(opts.spec_file);
      return Target{spec.name(), std::move(spec)};
    } catch (const SpecFileError& e) {
      throw Exit{kSpecFileError, e.what()};
    }
  }
  if (opts.sequence != "geometric" && geometric_flags) {
    throw Exit{kBadArguments, "--growth-ratio applies only to --sequence geometric"};
  }
  if (opts.sequence == "fibonacci") return Target{"fibonacci", SequenceSpec::fibonacci()};
  if (opts.sequence == "lucas") return Target{"lucas", SequenceSpec::lucas_numbers()};
  if (opts.sequence == "integers") return Target{"integers", std::nullopt};
  if (opts.sequence == "geometric") {
    if (!geometric_flags) throw Exit{kBadArguments, "--sequence geometric requires --growth-ratio"};
    try {
      return Target{"geometric", SequenceSpec::geometric("geometric", opts.growth_ratio, opts.amplitude)};
    } catch (const Error& e) {
      throw Exit{kBadArguments, e.what()};
    }
  }
  throw Exit{kBadArguments, "unknown sequence '" + opts.sequence +
                                "' (built-ins: fibonacci, lucas, integers, geometric; otherwise use --spec-file)"};
}

std::optional<Route> parse_route(const std::string& text) {
  if (text == "closed-form") return Route::kClosedForm;
  if (text == "theta") return Route::kTheta;
  if (text == "extrapolation") return Route::kExtrapolation;
  return std::nullopt;  // "all"
}

void emit(const ResultDocument& doc, const Options& opts, std::ostream& out) {
  out << (opts.format == "json" ? render_json(doc) : render_text(doc));
}

int cmd_compute(const Options& opts, std::ostream& out) {
  const Target target = resolve_target(opts);
  const PrecisionBudget budget{opts.digits};
  const std::optional<Route> route = parse_route(opts.route);
  const OracleOptions oracle = oracle_options();

  std::vector<RouteValue> values;
  try {
    if (!target.spec) {
      if (route && *route != Route::kClosedForm) {
        throw Exit{kRouteInapplicable, "the integers product supports only the closed-form route"};
      }
      values.push_back(integers_product(budget));
    } else if (route) {
      values.push_back(compute_route(*target.spec, *route, budget, oracle));
    } else {
      for (Route r : applicable_routes(*target.spec)) values.push_back(compute_route(*target.spec, r, budget, oracle));
    }
  } catch (const Error& e) {
    throw Exit{exit_code_for(e.kind()), e.what()};
  }
  auto [worst, within] = compare_routes(values, budget.working());
  emit(make_document(target.name, opts.digits, values, worst, within), opts, out);
  return kOk;
}

int cmd_verify(const Options& opts, std::ostream& out, std::ostream& err) {
  const Target target = resolve_target(opts);
  const PrecisionBudget budget{opts.digits};
  const OracleOptions oracle = oracle_options();

  if (!target.spec) {
    std::vector<RouteValue> values;
    try {
      values.push_back(integers_product(budget));
    } catch (const Error& e) {
      throw Exit{exit_code_for(e.kind()), e.what()};
    }
    emit(make_document(target.name, opts.digits, values, BigReal(budget.working()), true), opts, out);
    return kOk;
  }

  const VerificationReport report = cross_route_verify(*target.spec, budget, oracle);
  for (const std::string& failure : report.failures) err << "regprod: route failed: " << failure << "\n";
  emit(make_document(target.name, opts.digits, report.routes, report.max_disagreement, report.pass), opts, out);
  return report.pass ? kOk : kVerificationFailed;
}

int cmd_constant(const Options& opts, std::ostream& out) {
  const PrecisionBudget budget{opts.digits};
  TaggedReal value;
  try {
    if (opts.constant == "golden-mean") {
      const BigReal phi = golden_mean(budget.working());
      value = TaggedReal{phi, rounding_bound(2, phi), 0};
    } else {
      value = fibonacci_factorial_constant(budget);
    }
  } catch (const Error& e) {
    throw Exit{kComputationFailed, e.what()};
  }
  if (opts.format == "json") {
    nlohmann::json doc = {{"constant", opts.constant},
                          {"digits", opts.digits},
                          {"error_bound", value.error_bound.to_bound_string()},
                          {"value", value.value.to_decimal(opts.digits)},
                          {"version", kVersion}};
    out << doc.dump(2) << "\n";
  } else {
    out << value.value.to_decimal(opts.digits) << "\n";
  }
  return kOk;
}

void add_common(CLI::App* sub, Options& opts, bool with_route) {
  auto* seq = sub->add_option("--sequence", opts.sequence, "fibonacci, lucas, integers or geometric");
  auto* file = sub->add_option("--spec-file", opts.spec_file, "sequence description file");
  seq->excludes(file);
  file->excludes(seq);
  sub->add_option("--digits", opts.digits, "significant digits of the output")
      ->check(CLI::Range(kMinDigits, kMaxDigits));
  if (with_route) {
    sub->add_option("--route", opts.route, "closed-form, theta, extrapolation or all")
        ->check(CLI::IsMember({"closed-form", "theta", "extrapolation", "all"}));
  }
  sub->add_option("--format", opts.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--growth-ratio", opts.growth_ratio, "r for --sequence geometric");
  sub->add_option("--amplitude", opts.amplitude, "C for --sequence geometric (default 1)");
}

}  // namespace

ResultDocument make_document(const std::string& sequence, int digits, const std::vector<RouteValue>& routes,
                             const BigReal& max_disagreement, bool pass) {
  ResultDocument doc;
  doc.sequence = sequence;
  doc.digits = digits;
  for (const RouteValue& r : routes) {
    doc.routes.push_back(
        RouteEntry{route_name(r.route), r.value.to_decimal(digits), r.error_bound.to_bound_string(), r.terms_used});
  }
  doc.max_disagreement = max_disagreement.to_bound_string();
  doc.pass = pass;
  doc.version = kVersion;
  return doc;
}

nlohmann::json to_json(const ResultDocument& doc) {
  nlohmann::json routes = nlohmann::json::array();
  for (const RouteEntry& r : doc.routes) {
    routes.push_back(
        {{"route", r.route}, {"value", r.value}, {"error_bound", r.error_bound}, {"terms_used", r.terms_used}});
  }
  return nlohmann::json{{"sequence", doc.sequence},   {"digits", doc.digits}, {"routes", routes},
                        {"max_disagreement", doc.max_disagreement}, {"pass", doc.pass}, {"version", doc.version}};
}

std::string render_json(const ResultDocument& doc) { return to_json(doc).dump(2) + "\n"; }

std::string render_text(const ResultDocument& doc) {
  std::ostringstream out;
  out << "sequence          " << doc.sequence << "\n";
  out << "digits            " << doc.digits << "\n";
  for (const RouteEntry& r : doc.routes) {
    out << std::left << std::setw(18) << r.route << r.value << "  +/- " << r.error_bound << "  (" << r.terms_used
        << " terms" << (r.route == "extrapolation" ? ", estimated bound" : "") << ")\n";
  }
  out << "max disagreement  " << doc.max_disagreement << "\n";
  out << "pass              " << (doc.pass ? "true" : "false") << "\n";
  return out.str();
}

RouteValue integers_product(const PrecisionBudget& budget) {
  const TaggedReal zeta = riemann_zeta_prime_zero(budget);
  BigReal delta = exp(-zeta.value);
  BigReal bound = delta * expm1(zeta.error_bound) + rounding_bound(4, delta);
  return RouteValue{Route::kClosedForm, std::move(delta), std::move(bound), zeta.terms_used};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Zeta-regularized products of geometrically growing sequences", "regprod"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto* compute = app.add_subcommand("compute", "regularized product by one or all routes");
  add_common(compute, opts, true);
  auto* verify = app.add_subcommand("verify", "compute every applicable route and cross-check them");
  add_common(verify, opts, false);
  auto* constant = app.add_subcommand("constant", "emit a constant to the requested digits");
  constant->add_option("name", opts.constant, "fibonacci-factorial or golden-mean")
      ->required()
      ->check(CLI::IsMember({"fibonacci-factorial", "golden-mean"}));
  constant->add_option("--digits", opts.digits, "significant digits")->check(CLI::Range(kMinDigits, kMaxDigits));
  constant->add_option("--format", opts.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    if (compute->parsed()) return cmd_compute(opts, out);
    if (verify->parsed()) return cmd_verify(opts, out, err);
    return cmd_constant(opts, out);
  } catch (const Exit& e) {
    err << "regprod: " << e.message << "\n";
    return e.code;
  } catch (const Error& e) {
    err << "regprod: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace regprod::cli
