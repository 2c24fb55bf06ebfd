#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tscale/corpus.hpp"
#include "tscale/error.hpp"
#include "tscale/measure.hpp"
#include "tscale/random.hpp"

using namespace tscale;

namespace {

TimeScale unit_and_two() { return TimeScale::canonicalize({Component::interval(0, 1), Component::point(2)}); }
TimeScale unit() { return TimeScale::canonicalize({Component::interval(0, 1)}); }

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

BorelSet single(double a, double b, bool lc, bool rc) { return BorelSet({BorelPiece{a, b, lc, rc}}); }

}  // namespace

TEST_CASE("distribution function one-sided limits") {
  DeltaMeasure m(unit_and_two());
  RealLineFunction g = distribution_function(m);
  CHECK(one_sided_limit(g, 1, Side::right) == 2);
  CHECK(one_sided_limit(g, 1, Side::left) == 1);
  CHECK(one_sided_limit(g, 1.5, Side::left) == 2);
  CHECK(one_sided_limit(g, 0.5, Side::left) == 0.5);
  CHECK(m.distribution_left(1) == 1);
  CHECK(m.distribution_left(1.5) == 2);
  CHECK(m.distribution_right(1) == 2);
}

TEST_CASE("numeric one-sided limits") {
  RealLineFunction step{[](double x) { return x >= 0 ? 1.0 : 0.0; }, nullptr, std::nullopt};
  CHECK(one_sided_limit(step, 0, Side::left) == 0);
  CHECK(one_sided_limit(step, 0, Side::right) == 1);
  RealLineFunction smooth{[](double x) { return x * x; }, nullptr, std::nullopt};
  CHECK(one_sided_limit(smooth, 3, Side::left) == doctest::Approx(9).epsilon(1e-9));
  // A declared jump set makes every other point a continuity point.
  RealLineFunction declared{[](double x) { return x >= 0 ? 1.0 : 0.0; }, nullptr, std::vector<double>{0.0}};
  CHECK(one_sided_limit(declared, 0.25, Side::left) == 1);
  CHECK(one_sided_limit(declared, 0, Side::left) == 0);
  RealLineFunction wild{[](double x) { return std::sin(1.0 / x); }, nullptr, std::nullopt};
  CHECK(code_of([&] { one_sided_limit(wild, 0, Side::right); }) == Errc::no_convergence);
}

TEST_CASE("measure_interval examples") {
  DeltaMeasure m(unit_and_two());
  CHECK(measure_interval(m, 1, 2, true, false) == 1);
  CHECK(measure_interval(m, 1, 1, true, true) == 1);
  CHECK(measure_interval(m, 1, 1, true, false) == 0);
  CHECK(measure_interval(m, 1, 1, false, false) == 0);
  CHECK(measure_interval(m, 0.5, 0.5, true, true) == 0);
  CHECK(measure_interval(m, 0, 2, true, false) == 2);
  CHECK(measure_interval(m, 0, 2, true, true) == 2);
  DeltaMeasure u(unit());
  CHECK(measure_interval(u, 0.2, 0.7, true, false) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(code_of([&] { measure_interval(m, 2, 1, true, true); }) == Errc::invalid_interval);
}

TEST_CASE("point_mass and support_check examples") {
  DeltaMeasure m(unit_and_two());
  CHECK(point_mass(m, 1) == 1);
  CHECK(point_mass(m, 0.5) == 0);
  CHECK(code_of([&] { point_mass(m, 1.5); }) == Errc::not_in_scale);
  std::vector<Component> grid;
  for (int k = -4; k <= 4; ++k) grid.push_back(Component::point(0.25 * k));
  CHECK(point_mass(DeltaMeasure(TimeScale::canonicalize(grid)), 0) == 0.25);

  CHECK(support_check(m) == unit());
  CHECK(support_check(DeltaMeasure(TimeScale::canonicalize({Component::point(0), Component::point(1)}))) ==
        TimeScale::canonicalize({Component::point(0)}));
  auto five = TimeScale::canonicalize({Component::interval(0, 5)});
  CHECK(support_check(DeltaMeasure(five)) == five);
}

TEST_CASE("preimage_measure examples") {
  DeltaMeasure m(unit_and_two());
  CHECK(preimage_measure(m, BorelSet({BorelPiece::point(1)})) == 1);
  CHECK(preimage_measure(DeltaMeasure(unit()), single(0.2, 0.7, true, false)) == doctest::Approx(0.5));
  DeltaMeasure z(TimeScale::canonicalize({Component::point(0), Component::point(1), Component::point(2)}));
  CHECK(preimage_measure(z, single(0, 2, true, false)) == 2);
  CHECK(measure_interval(z, 0, 2, true, false) == 2);
}

TEST_CASE("BorelSet normalization") {
  BorelSet s;
  s.add({0, 1, true, false}).add({1, 2, true, true}).add(BorelPiece::point(5)).add({3, 3, true, false});
  auto n = s.normalized();
  REQUIRE(n.pieces().size() == 2);
  CHECK(n.pieces()[0] == BorelPiece{0, 2, true, true});
  CHECK(n.pieces()[1] == BorelPiece::point(5));
  BorelSet gap;
  gap.add({0, 1, true, false}).add({1, 2, false, true});
  CHECK(gap.normalized().pieces().size() == 2);
  CHECK(code_of([] { BorelSet({BorelPiece{2, 1, true, true}}).normalized(); }) == Errc::invalid_interval);
  // Overlapping pieces are measured once.
  DeltaMeasure m(unit_and_two());
  BorelSet overlap({BorelPiece{0, 0.75, true, true}, BorelPiece{0.5, 1, true, false}});
  CHECK(measure_set(m, overlap) == doctest::Approx(1.0));
  CHECK(preimage_measure(m, overlap) == doctest::Approx(1.0));
}

TEST_CASE("measures agree with the Stieltjes oracle on random scales") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    TimeScale ts = oracle::random_scale(rng);
    DeltaMeasure m(ts);
    for (int k = 0; k < 20; ++k) {
      double a = std::floor(uniform(rng, -80, 80)) / 8.0;
      double b = std::floor(uniform(rng, -80, 80)) / 8.0;
      if (b < a) std::swap(a, b);
      for (int v = 0; v < 4; ++v) {
        bool lc = v & 2, rc = v & 1;
        double expect = oracle::stieltjes(ts, a, b, lc, rc);
        CHECK(measure_interval(m, a, b, lc, rc) == expect);
        CHECK(preimage_measure(m, single(a, b, lc, rc)) == expect);
      }
    }
  }
}

TEST_CASE("image measure matches a grid sampling of rho") {
  for (const char* name : {"mixed", "cantor_approx", "q_scale", "factorial"}) {
    TimeScale ts = builtin(name).materialize();
    DeltaMeasure m(ts);
    std::mt19937_64 rng(22);
    const int cells = 200000;
    double cell = (ts.sup() - ts.inf()) / cells;
    for (int k = 0; k < 10; ++k) {
      double a = uniform(rng, ts.inf() - 0.1, ts.sup() + 0.1);
      double b = uniform(rng, ts.inf() - 0.1, ts.sup() + 0.1);
      if (b < a) std::swap(a, b);
      double grid = oracle::rho_preimage_grid(ts, a, b, true, false, cells);
      CHECK(std::abs(preimage_measure(m, single(a, b, true, false)) - grid) <= 4 * cell);
    }
  }
}

TEST_CASE("property: four inclusion variants differ by point masses") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    TimeScale ts = oracle::random_scale(rng);
    DeltaMeasure m(ts);
    for (int k = 0; k < 20; ++k) {
      double a = uniform01(rng) < 0.5 ? oracle::random_point(ts, rng) : uniform(rng, -10, 10);
      double b = uniform01(rng) < 0.5 ? oracle::random_point(ts, rng) : uniform(rng, -10, 10);
      if (b < a) std::swap(a, b);
      if (a == b) continue;
      double ma = ts.contains(a) ? ts.mu(a) : 0.0;
      double mb = ts.contains(b) ? ts.mu(b) : 0.0;
      double open = measure_interval(m, a, b, false, false);
      CHECK(open >= 0);
      CHECK(measure_interval(m, a, b, true, false) == doctest::Approx(open + ma).epsilon(1e-14));
      CHECK(measure_interval(m, a, b, false, true) == doctest::Approx(open + mb).epsilon(1e-14));
      CHECK(measure_interval(m, a, b, true, true) == doctest::Approx(open + ma + mb).epsilon(1e-14));
    }
  }
}

TEST_CASE("property: additivity over random partitions") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 150; ++trial) {
    TimeScale ts = oracle::random_scale(rng);
    DeltaMeasure m(ts);
    std::vector<double> cuts;
    for (int k = 0; k < 6; ++k) cuts.push_back(uniform(rng, -10, 10));
    std::sort(cuts.begin(), cuts.end());
    double parts = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      parts += measure_interval(m, cuts[i], cuts[i + 1], true, false);
    CHECK(measure_interval(m, cuts.front(), cuts.back(), true, false) == doctest::Approx(parts).epsilon(1e-13));
  }
}

TEST_CASE("property: point masses sit exactly at right-scattered points") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 150; ++trial) {
    TimeScale ts = oracle::random_scale(rng);
    DeltaMeasure m(ts);
    for (int k = 0; k < 20; ++k) {
      double t = oracle::random_point(ts, rng);
      CHECK((point_mass(m, t) > 0) == (ts.classify(t).right == Density::scattered));
      CHECK(measure_interval(m, t, t, true, true) == point_mass(m, t));
    }
  }
}

TEST_CASE("property: support is T^kappa") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 150; ++trial) {
    TimeScale ts = oracle::random_scale(rng);
    if (ts.size() == 1 && ts.components()[0].is_point()) continue;
    DeltaMeasure m(ts);
    TimeScale supp = support_check(m);
    for (int k = 0; k < 20; ++k) {
      double t = std::floor(uniform(rng, -80, 80)) / 8.0;
      double nbhd = measure_interval(m, t - 1e-6, t + 1e-6, false, false);
      CHECK((nbhd > 0) == supp.contains(t));
    }
  }
}
