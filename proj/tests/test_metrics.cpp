#include <doctest.h>

#include <cmath>

#include "sparse_ising/error.hpp"
#include "sparse_ising/metrics.hpp"

using namespace sparse_ising;
using namespace sparse_ising::metrics;

namespace {

// Direct evaluation of the repetition count, written out independently.
double reference_r(double p) { return std::max(1.0, std::log(0.01) / std::log(1.0 - p)); }

}  // namespace

TEST_CASE("repetitions") {
  CHECK(repetitions(0.99) == 1.0);
  CHECK(repetitions(1.0) == 1.0);
  CHECK(repetitions(1.0 - 1e-13) == 1.0);
  CHECK(std::abs(repetitions(0.10) - 43.71) <= 0.01);
  CHECK(std::abs(repetitions(0.05) - 89.78) <= 0.01);
  CHECK_THROWS_AS(repetitions(0.0), MetricError);
  CHECK_THROWS_AS(repetitions(-0.1), MetricError);
  CHECK_THROWS_AS(repetitions(1.5), MetricError);
  CHECK_THROWS_AS(repetitions(std::nan("")), MetricError);
}

TEST_CASE("repetitions is non-increasing and diverges at 0") {
  double prev = repetitions(1e-9);
  CHECK(prev > 1e9);
  for (int k = 1; k <= 1000; ++k) {
    const double p = k / 1000.0;
    const double r = repetitions(p);
    CHECK(r <= prev);
    CHECK(r >= 1.0);
    if (p < 0.99) CHECK(r == doctest::Approx(reference_r(p)));
    prev = r;
  }
}

TEST_CASE("time to target") {
  CHECK(std::abs(time_to_target(431.6, 0.10) / 18865 - 1) < 0.005);
  CHECK(std::abs(time_to_target(308.55, 0.05) / 27702 - 1) < 0.005);
  CHECK(time_to_target(3.25, 0.99) == 3.25);
  CHECK(time_to_target(2.0, 0.3) == doctest::Approx(2.0 * time_to_target(1.0, 0.3)));
  CHECK_THROWS_AS(time_to_target(0.0, 0.5), MetricError);
  CHECK_THROWS_AS(time_to_target(1.0, 0.0), MetricError);
}

TEST_CASE("sweeps to target") {
  CHECK(std::abs(sweeps_to_target(4000, 0.57) / 21800 - 1) < 0.01);
  CHECK(std::abs(sweeps_to_target(3000, 0.58) / 15900 - 1) < 0.01);
  CHECK(sweeps_to_target(8000, 0.99) == 8000);
  CHECK_THROWS_AS(sweeps_to_target(0.5, 0.5), MetricError);
}

TEST_CASE("solution quality") {
  CHECK(std::round(10000 * solution_quality(5546, 5562)) / 100 == 99.71);
  CHECK(std::round(10000 * solution_quality(13992, 14056)) / 100 == 99.54);
  CHECK(solution_quality(7008, 7008) == 1.0);
  CHECK_THROWS_AS(solution_quality(1, 0), MetricError);
}

TEST_CASE("speedup and energy") {
  CHECK(std::abs(speedup(5651, 2.90) / 1950 - 1) < 0.01);
  CHECK(std::abs(speedup(46760, 4.32) / 10800 - 1) < 0.01);
  CHECK(speedup(7.5, 7.5) == 1.0);
  CHECK_THROWS_AS(speedup(0, 1), MetricError);
  CHECK(energy_to_target(2.90, 45) == doctest::Approx(130.5));
  CHECK(energy_to_target(5651, 300) == doctest::Approx(1695300));
  CHECK(energy_to_target(1, 1) == 1);
  CHECK_THROWS_AS(energy_to_target(-1, 1), MetricError);
}

TEST_CASE("bls projection") {
  const auto g65 = bls_projection(4316, 2, 20);
  CHECK(g65.p_s == doctest::Approx(0.10));
  CHECK(g65.time_per_run == doctest::Approx(431.6));
  CHECK(std::abs(g65.projected_ttt / 18865 - 1) < 0.005);

  const auto g72 = bls_projection(12563, 2, 20);
  CHECK(g72.time_per_run == doctest::Approx(1256.3));
  CHECK(std::abs(g72.projected_ttt / 54911 - 1) < 0.005);

  const auto g81 = bls_projection(20422, 1, 20);
  CHECK(g81.time_per_run == doctest::Approx(1021.1));
  CHECK(std::abs(g81.projected_ttt / 91676 - 1) < 0.005);

  const auto all = bls_projection(100, 20, 20);
  CHECK(all.p_s == 1.0);
  CHECK(all.time_per_run == 100);
  CHECK(all.projected_ttt == 100);

  CHECK_THROWS_AS(bls_projection(100, 0, 20), MetricError);
  CHECK_THROWS_AS(bls_projection(100, 21, 20), MetricError);
}

TEST_CASE("estimate") {
  const auto e = estimate(100, 10, 100, 2.0, 500);
  CHECK(e.reachable());
  CHECK(e.p_s == doctest::Approx(0.1));
  CHECK(*e.ttt == doctest::Approx(2.0 * reference_r(0.1)));
  CHECK(*e.sweeps_to_target == doctest::Approx(500 * reference_r(0.1)));

  const auto none = estimate(100, 0, 100, 2.0, 500);
  CHECK_FALSE(none.reachable());
  CHECK_FALSE(none.ttt);
  CHECK_FALSE(none.sweeps_to_target);
  CHECK(none.p_s == 0.0);
}
