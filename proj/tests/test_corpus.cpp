#include <doctest.h>

#include <cmath>
#include <random>
#include <optional>
#include <set>

#include "oracles.hpp"
#include "tscale/corpus.hpp"
#include "tscale/error.hpp"
#include "tscale/random.hpp"

using namespace tscale;

namespace {

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected tscale::Error");
  return Errc::parse_error;
}

std::vector<double> points_of(const TimeScale& ts) {
  std::vector<double> out;
  for (const auto& c : ts.components()) {
    REQUIRE(c.is_point());
    out.push_back(c.lo);
  }
  return out;
}

}  // namespace

TEST_CASE("builtin examples") {
  TimeScale f3 = builtin("factorial", {{"N", 3}}).materialize();
  CHECK(points_of(f3) == std::vector<double>{-1, -0.5, -1.0 / 6, 0, 1.0 / 6, 0.5, 1});
  CHECK(points_of(builtin("h_integers", {{"h", 1}, {"lo", 0}, {"hi", 3}}).materialize()) ==
        std::vector<double>{0, 1, 2, 3});
  TimeScale mixed = builtin("mixed").materialize();
  REQUIRE(mixed.size() == 4);
  CHECK(mixed.components()[0] == Component::interval(0, 1));
  CHECK(mixed.components()[1] == Component::point(2));
  CHECK(mixed.components()[2] == Component::point(3));
  CHECK(mixed.components()[3] == Component::interval(4, 5));
  CHECK(builtin("reals", {{"lo", -2}, {"hi", 3}}).materialize() ==
        TimeScale::canonicalize({Component::interval(-2, 3)}));
}

TEST_CASE("builtin parameter validation") {
  CHECK(code_of([] { builtin("nope"); }) == Errc::unknown_scale);
  CHECK(code_of([] { builtin("h_integers", {{"h", 0}}); }) == Errc::invalid_parameter);
  CHECK(code_of([] { builtin("q_scale", {{"q", 1}}); }) == Errc::invalid_parameter);
  CHECK(code_of([] { builtin("q_scale", {{"q", -0.5}}); }) == Errc::invalid_parameter);
  CHECK(code_of([] { builtin("factorial", {{"N", 1}}); }) == Errc::invalid_parameter);
  CHECK(code_of([] { builtin("factorial", {{"N", 19}}); }) == Errc::invalid_parameter);
  CHECK(code_of([] { builtin("factorial", {{"N", 4.5}}); }) == Errc::invalid_parameter);
  CHECK(code_of([] { builtin("cantor_approx", {{"n", 13}}); }) == Errc::invalid_parameter);
  CHECK(code_of([] { builtin("reals", {{"lo", 1}, {"hi", 1}}); }) == Errc::invalid_component);
  // Unused parameters are ignored.
  CHECK(builtin("mixed", {{"q", 7}}).materialize() == builtin("mixed").materialize());
}

TEST_CASE("q_scale") {
  TimeScale q = builtin("q_scale", {{"q", 0.5}, {"N", 4}}).materialize();
  CHECK(points_of(q) == std::vector<double>{0, 0.0625, 0.125, 0.25, 0.5, 1});
  TimeScale no_zero = builtin("q_scale", {{"q", 0.5}, {"N", 4}, {"zero", 0}}).materialize();
  CHECK(points_of(no_zero).front() == 0.0625);
  TimeScale big = builtin("q_scale", {{"q", 2}, {"N", 3}, {"zero", 0}}).materialize();
  CHECK(points_of(big) == std::vector<double>{1, 2, 4, 8});
  // At finite N the accumulation point is right-scattered.
  CHECK(q.mu(0) == 0.0625);
}

TEST_CASE("paired_function examples") {
  ScaleFunction f = paired_function(builtin("factorial", {{"N", 4}}));
  CHECK(f(0.5) == 1.0 / 6);
  CHECK(f(0) == 0);
  CHECK(f(-1.0 / 6) == -1.0 / 24);
  CHECK(code_of([] { paired_function(builtin("mixed")); }) == Errc::no_paired_function);
}

TEST_CASE("factorial reciprocals are bit-exact products of the division chain") {
  auto r = factorial_reciprocals(18);
  double expect = 1.0;
  for (int n = 1; n <= 18; ++n) {
    expect /= n;
    CHECK(r[n - 1] == expect);
    CHECK(std::isnormal(r[n - 1]));
  }
  CHECK(r[2] == 1.0 / 6);
}

TEST_CASE("cantor_approx structure") {
  for (int n = 0; n <= 8; ++n) {
    TimeScale c = builtin("cantor_approx", {{"n", double(n)}}).materialize();
    CHECK(c.size() == (std::size_t(1) << n));
    double len = std::pow(3.0, -n);
    double total = 0.0;
    for (const auto& comp : c.components()) {
      CHECK(comp.hi - comp.lo == doctest::Approx(len).epsilon(1e-12));
      total += comp.hi - comp.lo;
    }
    CHECK(total == doctest::Approx(std::pow(2.0 / 3.0, n)).epsilon(1e-12));
    CHECK(c.inf() == 0);
    CHECK(c.sup() == 1);
  }
}

TEST_CASE("property: window monotonicity") {
  std::mt19937_64 rng(51);
  for (const char* name : {"reals", "h_integers", "q_scale", "mixed", "cantor_approx", "factorial"}) {
    NamedScale ns = builtin(name, {{"h", 0.25}});
    for (int trial = 0; trial < 30; ++trial) {
      double a = uniform(rng, -2, 3), b = uniform(rng, -2, 3);
      if (b < a) std::swap(a, b);
      double c = a - uniform(rng, 0, 1), d = b + uniform(rng, 0, 1);
      if (std::string(name) == "reals" && a == b) continue;
      std::optional<TimeScale> maybe;
      try {
        maybe = ns.materialize(a, b);
      } catch (const Error& e) {
        CHECK(e.code() == Errc::empty_scale);
        continue;
      }
      const TimeScale& small = *maybe;
      TimeScale large = ns.materialize(c, d);
      for (int k = 0; k < 30; ++k) {
        double t = oracle::random_point(small, rng);
        CHECK(large.contains(t));
      }
      for (const auto& comp : small.components()) {
        CHECK(large.contains(comp.lo));
        CHECK(large.contains(comp.hi));
      }
    }
  }
}

TEST_CASE("make_function") {
  TimeScale u = builtin("reals").materialize();
  CHECK(make_function("const", u, {{"value", 3}})(0.2) == 3);
  CHECK(make_function("identity", u)(0.2) == 0.2);
  CHECK(make_function("square", u)(0.5) == 0.25);
  CHECK(make_function("cube", u)(0.5) == 0.125);
  CHECK(make_function("sqrt", u)(0.25) == 0.5);
  CHECK(make_function("abs_shift", u)(0.25) == 0.5);
  CHECK(make_function("abs_shift", u, {{"at", 0.1}}).kinks() == std::vector<double>{0.1});
  CHECK(make_function("step", u)(0.5) == 1);
  CHECK(make_function("step_after", u)(0.5) == 0);
  CHECK(make_function("step", u).jumps() == std::vector<double>{0.5});
  CHECK(code_of([&] { make_function("nope", u); }) == Errc::unknown_function);
  CHECK(code_of([] { make_function("sqrt", builtin("factorial").materialize())(-1); }) == Errc::invalid_parameter);
  auto all = function_ids();
  std::set<std::string> ids(all.begin(), all.end());
  CHECK(ids.count("example_factorial") == 1);
  CHECK(dense_probe(builtin("mixed").materialize()) == 0.5);
  CHECK(dense_probe(builtin("cantor_approx", {{"n", 1}}).materialize()) == doctest::Approx(1.0 / 6));
  CHECK(code_of([] { dense_probe(builtin("factorial").materialize()); }) == Errc::invalid_parameter);
}

TEST_CASE("families lists every builtin with defaults") {
  auto fams = families();
  REQUIRE(fams.size() == 6);
  for (const auto& f : fams) {
    ParamMap defaults;
    for (const auto& p : f.params) defaults[p.name] = p.default_value;
    CHECK_NOTHROW(builtin(f.name, defaults).materialize());
  }
}
