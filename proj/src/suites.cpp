#include "tscale/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "tscale/abscont.hpp"
#include "tscale/calculus.hpp"
#include "tscale/error.hpp"
#include "tscale/json_io.hpp"
#include "tscale/measure.hpp"
#include "tscale/random.hpp"

namespace tscale {
namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<LabeledScale> scales_for(const SuiteOptions& opts, std::vector<LabeledScale> fallback) {
  if (opts.scale) return {*opts.scale};
  return fallback;
}

std::vector<std::string> functions_for(const SuiteOptions& opts, std::vector<std::string> fallback) {
  return opts.functions.empty() ? fallback : opts.functions;
}

void require_bounded(const LabeledScale& s) {
  if (!s.scale.bounded_below() || !s.scale.bounded_above())
    throw Error(Errc::invalid_parameter, "suites need a bounded scale, got " + s.label);
}

double total_dense_length(const TimeScale& ts) {
  double sum = 0.0;
  for (auto [lo, hi] : ts.dense_blocks_in(ts.inf(), ts.sup())) sum += hi - lo;
  return sum;
}

// Uniform point of the dense part, weighted by block length.
double draw_dense(const TimeScale& ts, std::mt19937_64& rng) {
  auto blocks = ts.dense_blocks_in(ts.inf(), ts.sup());
  double u = uniform01(rng) * total_dense_length(ts);
  for (auto [lo, hi] : blocks) {
    if (u < hi - lo) return lo + u;
    u -= hi - lo;
  }
  return blocks.back().second;
}

double draw_anchor(const TimeScale& ts, std::mt19937_64& rng) {
  const auto& c = ts.components()[uniform_index(rng, ts.size())];
  return uniform01(rng) < 0.5 ? c.lo : c.hi;
}

// A scale point: half anchors, half dense draws when there is a dense part.
double draw_scale_point(const TimeScale& ts, std::mt19937_64& rng) {
  if (total_dense_length(ts) > 0.0 && uniform01(rng) < 0.5) return draw_dense(ts, rng);
  return draw_anchor(ts, rng);
}

bool purely_discrete(const TimeScale& ts) {
  return std::all_of(ts.components().begin(), ts.components().end(),
                     [](const Component& c) { return c.is_point(); });
}

SuiteCase row(std::string scale, std::string fn, std::string where, double a = 0.0, double b = 0.0,
              double residual = 0.0) {
  SuiteCase c;
  c.scale = std::move(scale);
  c.function = std::move(fn);
  c.where = std::move(where);
  c.value_a = a;
  c.value_b = b;
  c.residual = residual;
  return c;
}

SuiteCase failed_case(std::string scale, std::string fn, std::string where, const std::exception& e) {
  SuiteCase c = row(std::move(scale), std::move(fn), std::move(where));
  c.value_a = c.value_b = c.residual = std::numeric_limits<double>::quiet_NaN();
  c.pass = false;
  c.detail = {{"error", e.what()}};
  return c;
}

void derivative_agreement_suite(const SuiteOptions& opts, SuiteReport& out) {
  auto scales = scales_for(opts, default_corpus());
  auto fns = functions_for(opts, {"identity", "square", "cube"});
  for (std::size_t si = 0; si < scales.size(); ++si) {
    const auto& [label, ts] = scales[si];
    require_bounded(scales[si]);
    std::vector<double> points;
    for (const auto& c : ts.components())
      for (double t : {c.lo, c.hi})
        if (ts.in_kappa(t) && !ts.classify(t).dense()) points.push_back(t);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::size_t scattered = points.size();
    if (total_dense_length(ts) > 0.0) {
      std::mt19937_64 rng(mix_seed(opts.seed, si));
      for (int k = 0; k < 50; ++k) points.push_back(draw_dense(ts, rng));
    }
    for (const auto& id : fns) {
      ScaleFunction f = make_function(id, ts, opts.params);
      for (std::size_t pi = 0; pi < points.size(); ++pi) {
        double t = points[pi];
        std::string where = "t=" + fmt(t);
        try {
          auto rep = derivative_agreement(f, {t}, opts.tol);
          const auto& e = rep.entries.front();
          bool right_scattered = ts.classify(t).right == Density::scattered;
          SuiteCase c = row(label, id, where, e.hilger.value, e.rn.value, e.deviation);
          c.pass = e.hilger.converged && e.rn.converged &&
                   (right_scattered ? e.deviation == 0.0 : e.deviation < 1e-6);
          c.detail = {{"kind", pi < scattered ? "scattered" : "dense_sample"},
                      {"right_scattered", right_scattered},
                      {"hilger", to_json(e.hilger)},
                      {"rn", to_json(e.rn)}};
          out.cases.push_back(std::move(c));
        } catch (const Error& err) {
          out.cases.push_back(failed_case(label, id, where, err));
        }
      }
    }
  }
}

void integral_oracle_suite(const SuiteOptions& opts, SuiteReport& out) {
  auto scales = scales_for(opts, default_corpus());
  for (const auto& s : scales) require_bounded(s);
  auto fns = functions_for(opts, {"const", "identity", "square", "cube", "abs_shift"});
  for (std::size_t k = 0; k < 200; ++k) {
    std::mt19937_64 rng(mix_seed(opts.seed, k));
    const auto& [label, ts] = scales[uniform_index(rng, scales.size())];
    const std::string& id = fns[uniform_index(rng, fns.size())];
    double a = draw_scale_point(ts, rng);
    double b = draw_scale_point(ts, rng);
    if (b < a) std::swap(a, b);
    std::string where = "[" + fmt(a) + "," + fmt(b) + ")";
    try {
      ScaleFunction f = make_function(id, ts, opts.params);
      double direct = delta_integral(f, a, b, opts.tol);
      double via_rho = delta_integral_via_rho(f, a, b, opts.tol);
      bool discrete = purely_discrete(ts);
      SuiteCase c = row(label, id, where, direct, via_rho, std::abs(direct - via_rho));
      c.pass = discrete ? direct == via_rho : c.residual < 1e-9;
      c.detail = {{"exact_required", discrete}};
      out.cases.push_back(std::move(c));
    } catch (const Error& err) {
      out.cases.push_back(failed_case(label, id, where, err));
    }
  }
}

void image_measure_suite(const SuiteOptions& opts, SuiteReport& out) {
  auto scales = scales_for(opts, default_corpus());
  std::uint64_t index = 0;
  for (const auto& s : scales) {
    require_bounded(s);
    const TimeScale& ts = s.scale;
    DeltaMeasure m(ts);
    double span = ts.sup() - ts.inf();
    double pad = 0.1 * std::max(span, 1.0);
    for (int k = 0; k < 200; ++k, ++index) {
      std::mt19937_64 rng(mix_seed(opts.seed, index));
      auto endpoint = [&] {
        double u = uniform01(rng);
        if (u < 0.4) return draw_anchor(ts, rng);
        if (u < 0.6 && total_dense_length(ts) > 0.0) return draw_dense(ts, rng);
        return uniform(rng, ts.inf() - pad, ts.sup() + pad);
      };
      double a = endpoint();
      double b = uniform01(rng) < 0.05 ? a : endpoint();
      if (b < a) std::swap(a, b);
      for (int variant = 0; variant < 4; ++variant) {
        bool lc = (variant & 2) != 0;
        bool rc = (variant & 1) != 0;
        std::string where = std::string(lc ? "[" : "(") + fmt(a) + "," + fmt(b) + (rc ? "]" : ")");
        try {
          double direct = measure_interval(m, a, b, lc, rc);
          double image = preimage_measure(m, BorelSet({BorelPiece{a, b, lc, rc}}));
          SuiteCase c = row(s.label, "", where, direct, image, std::abs(direct - image));
          c.pass = c.residual <= 1e-12;
          out.cases.push_back(std::move(c));
        } catch (const Error& err) {
          out.cases.push_back(failed_case(s.label, "", where, err));
        }
      }
    }
  }
}

void ftc_suite(const SuiteOptions& opts, SuiteReport& out) {
  auto scales = scales_for(opts, default_corpus());
  auto fns = functions_for(opts, {"square", "cube", "abs_shift"});
  std::uint64_t index = 0;
  for (const auto& s : scales) {
    require_bounded(s);
    bool exact = s.label.rfind("h_integers", 0) == 0;
    for (const auto& id : fns) {
      std::string where = "[" + fmt(s.scale.inf()) + "," + fmt(s.scale.sup()) + "]";
      try {
        ScaleFunction f = make_function(id, s.scale, opts.params);
        FtcResult r = verify_ftc(f, s.scale.inf(), s.scale.sup(), 64, mix_seed(opts.seed, index++), opts.tol);
        SuiteCase c = row(s.label, id, where, r.max_residual, 0.0, r.max_residual);
        c.pass = exact ? r.max_residual == 0.0 : r.max_residual < 1e-7;
        c.detail = {{"samples", r.samples.size()}, {"skipped", r.skipped}, {"exact_required", exact}};
        out.cases.push_back(std::move(c));
      } catch (const Error& err) {
        out.cases.push_back(failed_case(s.label, id, where, err));
      }
    }
  }
}

std::vector<LabeledScale> ac_matrix_scales() {
  return {{"reals", builtin("reals").materialize()},
          {"mixed", builtin("mixed").materialize()},
          {"cantor_approx(n=1)", builtin("cantor_approx", {{"n", 1.0}}).materialize()},
          {"cantor_approx(n=2)", builtin("cantor_approx", {{"n", 2.0}}).materialize()}};
}

void ac_equivalence_suite(const SuiteOptions& opts, SuiteReport& out) {
  auto scales = scales_for(opts, ac_matrix_scales());
  auto fns = functions_for(opts, {"square", "cube", "abs_shift", "step", "step_after"});
  std::uint64_t index = 0;
  for (const auto& s : scales) {
    require_bounded(s);
    bool has_dense = total_dense_length(s.scale) > 0.0;
    ParamMap params = opts.params;
    if (has_dense && !params.count("at")) params["at"] = dense_probe(s.scale);
    for (const auto& id : fns) {
      std::string where = "[" + fmt(s.scale.inf()) + "," + fmt(s.scale.sup()) + "]";
      try {
        ScaleFunction f = make_function(id, s.scale, params);
        EquivalenceOptions eo;
        eo.seed = mix_seed(opts.seed, index++);
        EquivalenceReport r = check_ac_equivalence(f, s.scale.inf(), s.scale.sup(), eo, opts.tol);
        SuiteCase c = row(s.label, id, where, r.delta_ac ? 1.0 : 0.0, r.measure_ac ? 1.0 : 0.0,
                    r.measure_residual);
        // Jumps at a dense point are the fixtures known not to be AC.
        std::optional<bool> expected;
        if (has_dense) expected = !(id == "step" || id == "step_after");
        c.pass = r.agree;
        if (expected) c.pass = c.pass && r.delta_ac == *expected;
        if (!r.delta_ac) c.pass = c.pass && r.delta_side.witness.has_value();
        json witness = nullptr;
        if (r.delta_side.witness) {
          const auto& w = *r.delta_side.witness;
          witness = {{"epsilon", number(w.epsilon)},
                     {"delta", number(w.delta)},
                     {"family", to_json(w.family)},
                     {"sum", number(w.sum)}};
        }
        c.detail = {{"at", number(params.count("at") ? params.at("at") : 0.5)},
                    {"expected_ac", expected ? json(*expected) : json(nullptr)},
                    {"delta_ac", r.delta_ac},
                    {"measure_ac", r.measure_ac},
                    {"left_continuous", r.left_continuous},
                    {"left_discontinuities", r.left_discontinuities},
                    {"max_derivative_gap", number(r.max_derivative_gap)},
                    {"ftc_max_residual", r.delta_side.ftc_max_residual
                                             ? number(*r.delta_side.ftc_max_residual)
                                             : json(nullptr)},
                    {"witness", witness}};
        out.cases.push_back(std::move(c));
      } catch (const Error& err) {
        out.cases.push_back(failed_case(s.label, id, where, err));
      }
    }
  }
}

void counterexample_suite(const SuiteOptions& opts, SuiteReport& out) {
  auto get = [&](std::string_view key, double fallback) {
    auto it = opts.params.find(key);
    return it == opts.params.end() ? fallback : it->second;
  };
  double nd = get("N", 12.0);
  if (nd != std::floor(nd) || nd < 2 || nd > 18)
    throw Error(Errc::invalid_parameter, "N must be an integer in [2, 18]");
  int n = static_cast<int>(nd);
  std::string label = "factorial(N=" + std::to_string(n) + ")";
  std::vector<double> cs;
  if (opts.params.count("c")) cs = {opts.params.find("c")->second};
  else cs = {2.0, 3.0, 10.0};

  // f^Delta(0) on the infinite scale is the limit of the quotients
  // 1/(n+1) along t_n = 1/n!, which decrease to 0.
  auto quotients = factorial_difference_quotients(n);
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& q : quotients) {
    double expect = 1.0 / (q.n + 1);
    double dev = std::max(std::abs(q.from_right - expect), std::abs(q.from_left - expect));
    bool step_ok = q.from_right < prev && q.from_left < prev && q.from_right == q.from_left;
    monotone = monotone && step_ok;
    prev = std::min(q.from_right, q.from_left);
    SuiteCase c = row(label, "example_factorial", "n=" + std::to_string(q.n), q.from_right, q.from_left, dev);
    c.pass = step_ok && dev <= 4.0 * std::numeric_limits<double>::epsilon() * expect;
    c.detail = {{"expected", expect}};
    out.cases.push_back(std::move(c));
  }
  double fdelta0 = 0.0;
  for (double c : cs) {
    std::string where = "c=" + fmt(c);
    try {
      double q = counterexample_quotient(n, c);
      SuiteCase sc = row(label, "example_factorial", where, q, fdelta0, std::abs(q - 1.0 / c));
      sc.pass = q == 1.0 / c && q != fdelta0 && monotone;
      sc.detail = {{"quotient", q},
                   {"expected_quotient", 1.0 / c},
                   {"f_delta_0", fdelta0},
                   {"smallest_sequence_quotient", quotients.empty() ? json(nullptr) : json(prev)}};
      out.cases.push_back(std::move(sc));
    } catch (const Error& err) {
      out.cases.push_back(failed_case(label, "example_factorial", where, err));
    }
  }
}

}  // namespace

std::vector<LabeledScale> default_corpus() {
  return {{"reals", builtin("reals").materialize()},
          {"h_integers", builtin("h_integers").materialize()},
          {"q_scale", builtin("q_scale").materialize()},
          {"mixed", builtin("mixed").materialize()},
          {"cantor_approx", builtin("cantor_approx").materialize()},
          {"factorial", builtin("factorial").materialize()}};
}

std::vector<std::string> suite_names() {
  return {"derivative-agreement", "integral-oracle", "image-measure", "ftc", "ac-equivalence",
          "counterexample"};
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& opts) {
  SuiteReport out;
  out.suite = std::string(name);
  out.seed = opts.seed;
  if (name == "derivative-agreement") derivative_agreement_suite(opts, out);
  else if (name == "integral-oracle") integral_oracle_suite(opts, out);
  else if (name == "image-measure") image_measure_suite(opts, out);
  else if (name == "ftc") ftc_suite(opts, out);
  else if (name == "ac-equivalence") ac_equivalence_suite(opts, out);
  else if (name == "counterexample") counterexample_suite(opts, out);
  else throw Error(Errc::invalid_parameter, "unknown suite " + std::string(name));
  for (const auto& c : out.cases) {
    out.pass = out.pass && c.pass;
    if (std::isnan(c.residual)) out.max_residual = c.residual;
    else if (!std::isnan(out.max_residual)) out.max_residual = std::max(out.max_residual, c.residual);
  }
  if (out.cases.empty()) out.pass = false;
  return out;
}

json to_json(const SuiteCase& c) {
  json j = {{"scale", c.scale},          {"function", c.function}, {"where", c.where},
            {"value_a", number(c.value_a)}, {"value_b", number(c.value_b)},
            {"residual", number(c.residual)}, {"pass", c.pass}};
  if (!c.detail.is_null()) j["detail"] = c.detail;
  return j;
}

json to_json(const SuiteReport& r) {
  json cases = json::array();
  json first_failure = nullptr;
  std::size_t passed = 0;
  for (const auto& c : r.cases) {
    cases.push_back(to_json(c));
    if (c.pass) ++passed;
    else if (first_failure.is_null()) first_failure = cases.back();
  }
  return {{"schema", 1},
          {"suite", r.suite},
          {"seed", r.seed},
          {"pass", r.pass},
          {"summary", {{"cases", r.cases.size()}, {"passed", passed}, {"failed", r.cases.size() - passed},
                       {"max_residual", number(r.max_residual)}}},
          {"first_failure", first_failure},
          {"cases", cases}};
}

std::string render_csv(const SuiteReport& r) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  };
  std::ostringstream os;
  os << "suite,scale,function,where,value_a,value_b,residual,pass\n";
  for (const auto& c : r.cases)
    os << r.suite << ',' << quote(c.scale) << ',' << quote(c.function) << ',' << quote(c.where) << ','
       << fmt(c.value_a) << ',' << fmt(c.value_b) << ',' << fmt(c.residual) << ','
       << (c.pass ? "true" : "false") << '\n';
  return os.str();
}

std::string render_pretty(const SuiteReport& r) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& c : r.cases) {
    if (c.pass) {
      ++passed;
      continue;
    }
    os << "  FAIL " << c.scale << ' ' << c.function << ' ' << c.where << "  a=" << fmt(c.value_a)
       << " b=" << fmt(c.value_b) << " residual=" << fmt(c.residual);
    if (c.detail.contains("error")) os << "  (" << c.detail["error"].get<std::string>() << ')';
    os << '\n';
  }
  if (r.suite == "counterexample") {
    for (const auto& c : r.cases)
      if (c.where.rfind("c=", 0) == 0)
        os << "  " << c.where << ": quotient " << fmt(c.value_a) << " vs f^Delta(0) = " << fmt(c.value_b)
           << (c.pass ? "" : "  FAIL") << '\n';
  }
  os << r.suite << ": " << passed << '/' << r.cases.size() << " cases passed, max residual "
     << fmt(r.max_residual) << ", seed " << r.seed << "  " << (r.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace tscale
