#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tscale/abscont.hpp"
#include "tscale/calculus.hpp"
#include "tscale/corpus.hpp"
#include "tscale/error.hpp"
#include "tscale/json_io.hpp"
#include "tscale/measure.hpp"
#include "tscale/suites.hpp"
#include "tscale/timescale.hpp"

namespace tscale {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv, pretty };

struct Options {
  std::string scale_name;
  std::string scale_file;
  std::vector<std::string> params;
  std::string fn;
  std::optional<double> at;
  std::vector<double> points;
  std::string window;
  std::string suite;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::optional<double> tol_limit;
  std::optional<double> tol_quad;
  std::string set_file;
};

// Everything resolved from the options before any computation starts.
struct RunConfig {
  std::optional<LabeledScale> scale;
  std::optional<std::string> family;
  ParamMap params;
  std::optional<std::pair<double, double>> window;
  std::uint64_t seed = 0;
  Format format = Format::json;
  Tolerances tol;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + ": not a number: '" + s + "'");
  }
}

std::uint64_t parse_seed(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError(what + ": seed must be a non-negative integer, got '" + s + "'");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw UsageError(what + ": seed out of range: '" + s + "'");
  }
}

void resolve_scale(const Options& o, RunConfig& cfg, bool scale_required);

RunConfig resolve(const Options& o, bool scale_required) {
  RunConfig cfg;
  if (o.format == "json") cfg.format = Format::json;
  else if (o.format == "csv") cfg.format = Format::csv;
  else if (o.format == "pretty") cfg.format = Format::pretty;
  else throw UsageError("--format must be json, csv or pretty");

  for (const auto& kv : o.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects k=v, got '" + kv + "'");
    cfg.params[kv.substr(0, eq)] = parse_double(kv.substr(eq + 1), "--param " + kv.substr(0, eq));
  }

  if (!o.window.empty()) {
    auto colon = o.window.find(':');
    if (colon == std::string::npos) throw UsageError("--window expects a:b");
    double a = parse_double(o.window.substr(0, colon), "--window");
    double b = parse_double(o.window.substr(colon + 1), "--window");
    if (!(a <= b)) throw UsageError("--window needs a <= b");
    cfg.window = {a, b};
  }

  if (o.seed) cfg.seed = *o.seed;
  else if (const char* env = std::getenv("TSCALE_SEED"); env && *env)
    cfg.seed = parse_seed(env, "TSCALE_SEED");

  if (o.tol_limit) {
    if (!(*o.tol_limit > 0.0)) throw UsageError("--tol-limit must be > 0");
    cfg.tol.limit = *o.tol_limit;
  }
  if (o.tol_quad) {
    if (!(*o.tol_quad > 0.0)) throw UsageError("--tol-quad must be > 0");
    cfg.tol.quad = *o.tol_quad;
  }

  if (!o.scale_name.empty() && !o.scale_file.empty())
    throw UsageError("--scale and --scale-file are mutually exclusive");
  try {
    resolve_scale(o, cfg, scale_required);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

void resolve_scale(const Options& o, RunConfig& cfg, bool scale_required) {
  if (!o.scale_file.empty()) {
    cfg.scale = LabeledScale{o.scale_file, load_scale_file(o.scale_file)};
  } else if (!o.scale_name.empty()) {
    NamedScale ns = builtin(o.scale_name, cfg.params);
    bool windowed_family = o.scale_name == "reals" || o.scale_name == "h_integers";
    bool explicit_bounds = cfg.params.count("lo") || cfg.params.count("hi");
    TimeScale ts = cfg.window && windowed_family && !explicit_bounds
                       ? ns.materialize(cfg.window->first, cfg.window->second)
                       : ns.materialize();
    cfg.scale = LabeledScale{o.scale_name, ts};
    cfg.family = o.scale_name;
  } else if (scale_required) {
    throw UsageError("one of --scale or --scale-file is required");
  }
}

json base(const char* command, const RunConfig& cfg) {
  json j = {{"schema", 1}, {"command", command}};
  if (cfg.scale) {
    j["scale"] = cfg.scale->label;
    j["components"] = to_json(cfg.scale->scale)["components"];
  }
  return j;
}

std::string class_word(const PointClass& pc) {
  std::string r = pc.right == Density::scattered ? "right-scattered" : "right-dense";
  std::string l = pc.left == Density::scattered ? "left-scattered" : "left-dense";
  return r + "/" + l;
}

int cmd_eval(const Options& o, std::ostream& out) {
  RunConfig cfg = resolve(o, true);
  if (o.points.empty() && o.set_file.empty()) throw UsageError("eval needs --points or --set-file");
  std::optional<BorelSet> set;
  if (!o.set_file.empty()) set = load_borel_file(o.set_file);
  const TimeScale& ts = cfg.scale->scale;
  DeltaMeasure m(ts);

  json j = base("eval", cfg);
  json rows = json::array();
  std::ostringstream csv, pretty;
  csv << "t,sigma,rho,mu,right,left,in_kappa\n";
  for (double t : o.points) {
    PointClass pc = ts.classify(t);
    double mu = ts.mu(t);
    bool kappa = ts.in_kappa(t);
    rows.push_back({{"t", number(t)},
                    {"sigma", number(ts.sigma(t))},
                    {"rho", number(ts.rho(t))},
                    {"mu", number(mu)},
                    {"class", to_json(pc)},
                    {"in_kappa", kappa}});
    csv << fmt(t) << ',' << fmt(ts.sigma(t)) << ',' << fmt(ts.rho(t)) << ',' << fmt(mu) << ','
        << (pc.right == Density::scattered ? "scattered" : "dense") << ','
        << (pc.left == Density::scattered ? "scattered" : "dense") << ',' << (kappa ? "true" : "false")
        << '\n';
    pretty << "t=" << fmt(t) << "  sigma=" << fmt(ts.sigma(t)) << "  rho=" << fmt(ts.rho(t))
           << "  mu=" << fmt(mu) << "  " << class_word(pc) << (kappa ? "" : "  (not in T^kappa)") << '\n';
  }
  j["points"] = rows;
  if (set) {
    double direct = measure_set(m, *set);
    double image = preimage_measure(m, *set);
    j["set"] = {{"pieces", to_json(*set)["pieces"]},
                {"measure", number(direct)},
                {"preimage_measure", number(image)}};
    pretty << "set measure=" << fmt(direct) << "  preimage=" << fmt(image) << '\n';
  }
  if (cfg.format == Format::json) out << j.dump(2) << '\n';
  else if (cfg.format == Format::csv) out << csv.str();
  else out << pretty.str();
  return 0;
}

int cmd_diff(const Options& o, std::ostream& out) {
  RunConfig cfg = resolve(o, true);
  if (o.fn.empty()) throw UsageError("diff needs --fn");
  if (!o.at) throw UsageError("diff needs --at");
  ScaleFunction f = make_function(o.fn, cfg.scale->scale, cfg.params);
  double t = *o.at;

  AgreementReport rep = derivative_agreement(f, {t}, cfg.tol);
  const auto& e = rep.entries.front();
  bool right_scattered = cfg.scale->scale.classify(t).right == Density::scattered;
  bool converged = e.hilger.converged && e.rn.converged;
  bool agree = converged && (right_scattered ? e.deviation == 0.0 : e.deviation < 1e-6);

  json j = base("diff", cfg);
  j["function"] = o.fn;
  j["at"] = number(t);
  j["hilger"] = to_json(e.hilger);
  j["rn"] = to_json(e.rn);
  j["residual"] = number(e.deviation);
  j["agree"] = agree;
  if (cfg.format == Format::json) out << j.dump(2) << '\n';
  else if (cfg.format == Format::csv)
    out << "t,hilger,rn,residual,hilger_converged,rn_converged,agree\n"
        << fmt(t) << ',' << fmt(e.hilger.value) << ',' << fmt(e.rn.value) << ',' << fmt(e.deviation) << ','
        << e.hilger.converged << ',' << e.rn.converged << ',' << agree << '\n';
  else
    out << "t=" << fmt(t) << "  hilger=" << fmt(e.hilger.value) << (e.hilger.converged ? "" : " (not converged)")
        << "  rn=" << fmt(e.rn.value) << (e.rn.converged ? "" : " (not converged)")
        << "  residual=" << fmt(e.deviation) << "  " << (agree ? "agree" : "DISAGREE") << '\n';
  return agree ? 0 : 1;
}

int cmd_integrate(const Options& o, std::ostream& out) {
  RunConfig cfg = resolve(o, true);
  if (o.fn.empty()) throw UsageError("integrate needs --fn");
  const TimeScale& ts = cfg.scale->scale;
  ScaleFunction f = make_function(o.fn, ts, cfg.params);
  double a = cfg.window ? cfg.window->first : ts.inf();
  double b = cfg.window ? cfg.window->second : ts.sup();

  double direct = delta_integral(f, a, b, cfg.tol);
  double via_rho = delta_integral_via_rho(f, a, b, cfg.tol);
  double residual = std::abs(direct - via_rho);
  bool agree = residual < 1e-9;

  json j = base("integrate", cfg);
  j["function"] = o.fn;
  j["interval"] = {number(a), number(b)};
  j["delta_integral"] = number(direct);
  j["via_rho"] = number(via_rho);
  j["residual"] = number(residual);
  j["agree"] = agree;
  if (cfg.format == Format::json) out << j.dump(2) << '\n';
  else if (cfg.format == Format::csv)
    out << "a,b,delta_integral,via_rho,residual,agree\n"
        << fmt(a) << ',' << fmt(b) << ',' << fmt(direct) << ',' << fmt(via_rho) << ',' << fmt(residual) << ','
        << agree << '\n';
  else
    out << "integral over [" << fmt(a) << ", " << fmt(b) << ")  decomposition=" << fmt(direct)
        << "  via rho=" << fmt(via_rho) << "  residual=" << fmt(residual) << '\n';
  return agree ? 0 : 1;
}

int cmd_verify(const Options& o, std::ostream& out) {
  RunConfig cfg = resolve(o, false);
  bool known = false;
  for (const auto& s : suite_names()) known = known || s == o.suite;
  if (!known) throw UsageError("unknown suite '" + o.suite + "'");
  SuiteOptions so;
  so.scale = cfg.scale;
  so.params = cfg.params;
  if (!o.fn.empty()) so.functions = {o.fn};
  so.seed = cfg.seed;
  so.tol = cfg.tol;
  // Validate function ids before running.
  for (const auto& id : so.functions) make_function(id, TimeScale::canonicalize({Component::point(0.0)}));

  SuiteReport r = run_suite(o.suite, so);
  if (cfg.format == Format::json) out << to_json(r).dump(2) << '\n';
  else if (cfg.format == Format::csv) out << render_csv(r);
  else out << render_pretty(r);
  return r.pass ? 0 : 1;
}

int cmd_corpus_list(const Options& o, std::ostream& out) {
  RunConfig cfg = resolve(o, false);
  if (cfg.format == Format::pretty) {
    for (const auto& f : families()) {
      out << f.name << ": " << f.description << '\n';
      for (const auto& p : f.params)
        out << "    " << p.name << " = " << fmt(p.default_value) << "  (" << p.constraint << ")\n";
    }
    out << "functions:";
    for (const auto& id : function_ids()) out << ' ' << id;
    out << '\n';
    return 0;
  }
  if (cfg.format == Format::csv) {
    out << "family,param,default,constraint\n";
    for (const auto& f : families())
      for (const auto& p : f.params) out << f.name << ',' << p.name << ',' << fmt(p.default_value) << ",\"" << p.constraint << "\"\n";
    return 0;
  }
  // One JSON object per line, one line per family.
  for (const auto& f : families()) {
    json params = json::array();
    for (const auto& p : f.params)
      params.push_back({{"name", p.name}, {"default", p.default_value}, {"constraint", p.constraint}});
    json line = {{"schema", 1},
                 {"family", f.name},
                 {"description", f.description},
                 {"params", params},
                 {"paired_function", f.name == "factorial" ? json("example_factorial") : json(nullptr)}};
    out << line.dump() << '\n';
  }
  return 0;
}

bool is_config_error(Errc c) {
  switch (c) {
    case Errc::unknown_scale:
    case Errc::unknown_function:
    case Errc::parse_error:
    case Errc::invalid_component:
    case Errc::empty_scale:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Calculus and measure theory on time scales"};
  app.require_subcommand(1);
  Options o;

  auto scale_opts = [&o](CLI::App* sub) {
    sub->add_option("--scale", o.scale_name, "built-in family name (see corpus list)");
    sub->add_option("--scale-file", o.scale_file, "time scale JSON file");
    sub->add_option("--param", o.params, "family or function parameter k=v (repeatable)");
    sub->add_option("--window", o.window, "window a:b");
  };
  auto common_opts = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "json | csv | pretty")->capture_default_str();
    sub->add_option("--seed", o.seed, "root seed (default $TSCALE_SEED or 0)");
    sub->add_option("--tol-limit", o.tol_limit, "Cauchy tolerance for limits");
    sub->add_option("--tol-quad", o.tol_quad, "quadrature tolerance");
  };

  auto* eval = app.add_subcommand("eval", "sigma, rho, mu and classification at points");
  scale_opts(eval);
  common_opts(eval);
  eval->add_option("--points", o.points, "points, comma separated or repeated")->delimiter(',');
  eval->add_option("--set-file", o.set_file, "Borel set JSON; reports its delta measure");

  auto* diff = app.add_subcommand("diff", "Hilger and Radon-Nikodym derivatives at a point");
  scale_opts(diff);
  common_opts(diff);
  diff->add_option("--fn", o.fn, "built-in function id");
  diff->add_option("--at", o.at, "point of T^kappa");

  auto* integ = app.add_subcommand("integrate", "delta integral over [a, b) by both algorithms");
  scale_opts(integ);
  common_opts(integ);
  integ->add_option("--fn", o.fn, "built-in function id")->required();

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  scale_opts(verify);
  common_opts(verify);
  verify->add_option("--suite", o.suite, "suite name")->required();
  verify->add_option("--fn", o.fn, "restrict the suite to one function id");

  auto* corpus = app.add_subcommand("corpus", "built-in families");
  corpus->require_subcommand(1);
  auto* list = corpus->add_subcommand("list", "list families and their parameters");
  common_opts(list);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  bool json_out = o.format == "json";
  try {
    if (*eval) return cmd_eval(o, out);
    if (*diff) return cmd_diff(o, out);
    if (*integ) return cmd_integrate(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*list) return cmd_corpus_list(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    int code = is_config_error(e.code()) ? 2 : 1;
    if (json_out)
      out << json{{"schema", 1}, {"error", {{"code", to_string(e.code())}, {"message", e.what()}}}}.dump(2)
          << '\n';
    err << "error: " << e.what() << '\n';
    return code;
  }
  return 2;
}

}  // namespace tscale
