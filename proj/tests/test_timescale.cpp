#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "tscale/error.hpp"
#include "tscale/random.hpp"
#include "tscale/timescale.hpp"

using namespace tscale;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

TimeScale unit_and_two() { return TimeScale::canonicalize({Component::interval(0, 1), Component::point(2)}); }

TimeScale integers(int lo, int hi) {
  std::vector<Component> pts;
  for (int k = lo; k <= hi; ++k) pts.push_back(Component::point(k));
  return TimeScale::canonicalize(pts);
}

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

}  // namespace

TEST_CASE("canonicalize merges, sorts and absorbs") {
  auto a = TimeScale::canonicalize({Component::interval(0, 1), Component::point(1), Component::point(2)});
  REQUIRE(a.size() == 2);
  CHECK(a.components()[0] == Component::interval(0, 1));
  CHECK(a.components()[1] == Component::point(2));

  auto b = TimeScale::canonicalize({Component::point(3), Component::interval(0, 1), Component::interval(1, 2)});
  REQUIRE(b.size() == 2);
  CHECK(b.components()[0] == Component::interval(0, 2));
  CHECK(b.components()[1] == Component::point(3));

  auto c = TimeScale::canonicalize({Component::point(5)});
  REQUIRE(c.size() == 1);
  CHECK(c.components()[0] == Component::point(5));

  auto d = TimeScale::canonicalize({Component::point(2), Component::point(2), Component::interval(1, 3)});
  CHECK(d.size() == 1);
}

TEST_CASE("canonicalize rejects bad input") {
  CHECK(code_of([] { TimeScale::canonicalize(std::span<const Component>{}); }) == Errc::empty_scale);
  CHECK(code_of([] { Component::interval(1, 1); }) == Errc::invalid_component);
  CHECK(code_of([] { Component::interval(2, 1); }) == Errc::invalid_component);
  CHECK(code_of([] { TimeScale::canonicalize({Component::point(std::nan(""))}); }) == Errc::invalid_component);
  CHECK(code_of([] { TimeScale::canonicalize({Component{2.0, 1.0}}); }) == Errc::invalid_component);
  CHECK(code_of([] { TimeScale::canonicalize({Component::point(kInf)}); }) == Errc::invalid_component);
}

TEST_CASE("canonicalize is idempotent and preserves membership") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    TimeScale ts = oracle::random_scale(rng);
    std::vector<Component> again(ts.components().begin(), ts.components().end());
    CHECK(TimeScale::canonicalize(again) == ts);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) CHECK(ts.components()[i].hi < ts.components()[i + 1].lo);
    for (int k = 0; k < 40; ++k) {
      double t = std::floor(uniform(rng, -80, 80)) / 8.0;
      CHECK(ts.contains(t) == oracle::member(ts, t));
    }
  }
}

TEST_CASE("sigma and rho examples") {
  auto z = integers(-5, 5);
  CHECK(z.sigma(1) == 2);
  auto t = unit_and_two();
  CHECK(t.sigma(1) == 2);
  CHECK(t.sigma(0.5) == 0.5);
  CHECK(t.rho(2) == 1);
  CHECK(t.rho(1.5) == 1);
  CHECK(t.rho(0) == 0);
  CHECK(t.sigma(2) == 2);
  CHECK(t.sigma(7) == 2);
  CHECK(t.rho(-3) == 0);
  CHECK(t.sigma(-3) == 0);
}

TEST_CASE("sigma and rho on unbounded scales") {
  auto line = TimeScale::canonicalize({Component::interval(-kInf, kInf)});
  CHECK(line.sigma(0) == 0);
  CHECK(line.rho(0) == 0);
  CHECK(line.classify(0).dense());
  CHECK_FALSE(line.bounded_above());
  auto half = TimeScale::canonicalize({Component::point(-1), Component::interval(0, kInf)});
  CHECK(half.sigma(-1) == 0);
  CHECK(half.sigma(1e300) == 1e300);
  CHECK(half.sup() == kInf);
  CHECK(half.bounded_below());
}

TEST_CASE("mu examples") {
  std::vector<Component> grid;
  for (int k = -4; k <= 4; ++k) grid.push_back(Component::point(0.5 * k));
  auto hz = TimeScale::canonicalize(grid);
  CHECK(hz.mu(1.0) == 0.5);
  auto t = unit_and_two();
  CHECK(t.mu(1) == 1);
  CHECK(t.mu(0.25) == 0);
  CHECK(t.mu(2) == 0);
  CHECK(code_of([&] { t.mu(1.5); }) == Errc::not_in_scale);
}

TEST_CASE("classify examples") {
  auto t = unit_and_two();
  auto c1 = t.classify(1);
  CHECK(c1.right == Density::scattered);
  CHECK(c1.left == Density::dense);
  auto c2 = t.classify(2);
  CHECK(c2.left == Density::scattered);
  CHECK(c2.right == Density::dense);
  // rho(inf T) = inf T, so the minimum counts as left-dense.
  auto c0 = t.classify(0);
  CHECK(c0.left == Density::dense);
  CHECK(c0.right == Density::dense);
  CHECK(integers(0, 3).classify(1).isolated());
  CHECK(code_of([&] { t.classify(1.5); }) == Errc::not_in_scale);
}

TEST_CASE("kappa examples") {
  CHECK(unit_and_two().kappa() == TimeScale::canonicalize({Component::interval(0, 1)}));
  auto unit = TimeScale::canonicalize({Component::interval(0, 1)});
  CHECK(unit.kappa() == unit);
  CHECK(integers(0, 2).kappa() == integers(0, 1));
  CHECK(code_of([] { TimeScale::canonicalize({Component::point(4)}).kappa(); }) == Errc::empty_scale);
  CHECK(unit_and_two().in_kappa(1));
  CHECK_FALSE(unit_and_two().in_kappa(2));
  CHECK_FALSE(unit_and_two().in_kappa(1.5));
}

TEST_CASE("contains examples") {
  auto t = unit_and_two();
  CHECK(t.contains(0.5));
  CHECK_FALSE(t.contains(1.5));
  CHECK(t.contains(2));
  CHECK(t.component_index(2) == std::optional<std::size_t>(1));
  CHECK_FALSE(t.component_index(1.5).has_value());
}

TEST_CASE("sigma and rho match a linear scan") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    TimeScale ts = oracle::random_scale(rng);
    for (int k = 0; k < 50; ++k) {
      double t = std::floor(uniform(rng, -90, 90)) / 8.0;
      CHECK(ts.sigma(t) == oracle::sigma(ts, t));
      CHECK(ts.rho(t) == oracle::rho(ts, t));
    }
  }
}

TEST_CASE("property: monotonicity and one-sided continuity") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    TimeScale ts = oracle::random_scale(rng);
    for (int k = 0; k < 40; ++k) {
      double t1 = uniform(rng, -10, 10);
      double t2 = uniform(rng, -10, 10);
      if (t2 < t1) std::swap(t1, t2);
      CHECK(ts.sigma(t1) <= ts.sigma(t2));
      CHECK(ts.rho(t1) <= ts.rho(t2));
      double t = std::floor(uniform(rng, -80, 80)) / 8.0;
      // Approaching from the continuity side eventually hits the value.
      CHECK(ts.sigma(t + 1e-9) == doctest::Approx(ts.sigma(t)).epsilon(1e-8));
      CHECK(ts.rho(t - 1e-9) == doctest::Approx(ts.rho(t)).epsilon(1e-8));
    }
  }
}

TEST_CASE("property: jump structure on the scale") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    TimeScale ts = oracle::random_scale(rng);
    for (int k = 0; k < 20; ++k) {
      double t = oracle::random_point(ts, rng);
      REQUIRE(ts.contains(t));
      PointClass pc = ts.classify(t);
      CHECK((pc.right == Density::scattered) == (ts.sigma(t) > t));
      CHECK((pc.left == Density::scattered) == (ts.rho(t) < t));
      CHECK((pc.right == Density::scattered) == (ts.mu(t) > 0));
      CHECK(ts.contains(ts.sigma(t)));
      CHECK(ts.contains(ts.rho(t)));
      if (pc.right == Density::dense && t < ts.sup()) CHECK(ts.sigma(t) == t);
      if (pc.right == Density::scattered) {
        double next = ts.sigma(t);
        CHECK(ts.rho(next) == t);
        for (int j = 0; j < 5; ++j) {
          double s = uniform(rng, t, next);
          if (s > t && s < next) CHECK(ts.rho(s) == t);
        }
      }
    }
  }
}

TEST_CASE("range queries") {
  auto mixed = TimeScale::canonicalize({Component::interval(0, 1), Component::point(2), Component::point(3),
                                        Component::interval(4, 5)});
  CHECK(mixed.right_scattered_in(0, 5) == std::vector<double>{1, 2, 3});
  CHECK(mixed.right_scattered_in(1, 3) == std::vector<double>{1, 2});
  auto blocks = mixed.dense_blocks_in(0.5, 4.5);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == std::pair<double, double>{0.5, 1});
  CHECK(blocks[1] == std::pair<double, double>{4, 4.5});
  CHECK(mixed.floor_point(1.7) == std::optional<double>(1));
  CHECK(mixed.ceil_point(1.7) == std::optional<double>(2));
  CHECK(mixed.floor_point(0.3) == std::optional<double>(0.3));
  CHECK_FALSE(mixed.floor_point(-1).has_value());
  CHECK_FALSE(mixed.ceil_point(6).has_value());
}
