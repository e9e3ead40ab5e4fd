#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "exittime/exit_time.hpp"
#include "exittime/stats.hpp"
#include "support/oracles.hpp"

using namespace exittime;

TEST_CASE("partition examples") {
  SUBCASE("relative threshold") {
    const auto g = partition(PropensityLog{{5.0, 10.0, 9.6}}, 0.05);
    REQUIRE(g.groups.size() == 2);
    CHECK(g.groups[0].lambda_tilde == doctest::Approx(9.795918367346939).epsilon(1e-14));
    CHECK(g.groups[0].count == 2);
    CHECK(g.groups[1].lambda_tilde == 5.0);
    CHECK(g.groups[1].count == 1);
  }
  SUBCASE("epsilon zero groups exact ties") {
    const auto g = partition(PropensityLog{{3.0, 1.0, 3.0}}, 0.0);
    REQUIRE(g.groups.size() == 2);
    CHECK(g.groups[0].lambda_tilde == 3.0);
    CHECK(g.groups[0].count == 2);
    CHECK(g.groups[1].lambda_tilde == 1.0);
    CHECK(g.groups[1].count == 1);
  }
  SUBCASE("singleton") {
    for (double eps : {0.0, 0.3, 2.0}) {
      const auto g = partition(PropensityLog{{7.0}}, eps);
      REQUIRE(g.groups.size() == 1);
      CHECK(g.groups[0].lambda_tilde == 7.0);
      CHECK(g.groups[0].count == 1);
    }
  }
  SUBCASE("empty log") {
    const auto g = partition(PropensityLog{}, 0.5);
    CHECK(g.groups.empty());
    RandomStream s(1, 1);
    CHECK(sample_exit_time(g, s) == 0.0);
    CHECK(s.counters().gamma == 0);
  }
  CHECK_THROWS(partition(PropensityLog{{1.0, 0.0}}, 0.1));
  CHECK_THROWS(partition(PropensityLog{{1.0}}, -0.1));
}

TEST_CASE("partition invariants on random logs") {
  std::mt19937_64 eng(123);
  std::uniform_real_distribution<double> rate(0.1, 50.0);
  std::uniform_int_distribution<int> len(1, 200);
  std::uniform_int_distribution<int> tie(0, 3);
  const double eps_grid[] = {0.0, 0.05, 0.125, 0.25, 0.5, 1.0};
  for (int trial = 0; trial < 200; ++trial) {
    PropensityLog log;
    const int n = len(eng);
    for (int i = 0; i < n; ++i) {
      // Repeat earlier values sometimes so exact ties occur.
      log.lambdas.push_back(i > 0 && tie(eng) == 0 ? log.lambdas[eng() % i] : rate(eng));
    }
    double inverse_total = 0.0;
    for (double l : log.lambdas) inverse_total += 1.0 / l;

    std::size_t previous_m = SIZE_MAX;
    for (double eps : eps_grid) {
      const auto g = partition(log, eps);
      CHECK(g.total_count() == log.lambdas.size());
      CHECK(g.groups.size() <= previous_m);
      previous_m = g.groups.size();
      for (std::size_t k = 1; k < g.groups.size(); ++k) {
        CHECK(g.groups[k].lambda_tilde < g.groups[k - 1].lambda_tilde);
      }
      CHECK(g.mean_time() == doctest::Approx(inverse_total).epsilon(1e-12));

      const auto ref = oracle::group_by_removal(log.lambdas, eps);
      REQUIRE(ref.size() == g.groups.size());
      for (std::size_t k = 0; k < ref.size(); ++k) {
        CHECK(g.groups[k].count == ref[k].second);
        CHECK(g.groups[k].lambda_tilde == doctest::Approx(ref[k].first).epsilon(1e-13));
      }
    }
    // With eps = 0 every group holds identical values only.
    std::vector<double> distinct = log.lambdas;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    CHECK(partition(log, 0.0).groups.size() == distinct.size());
  }
}

TEST_CASE("grouped sampler: Erlang mean and exponential special case") {
  GroupedPropensities erlang{{{2.0, 3}}, 0.0};
  RandomStream s(4, 4);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += sample_exit_time(erlang, s);
  CHECK(std::abs(sum / n - 1.5) < 3.0 * (std::sqrt(3.0) / 2.0) / std::sqrt(n));
  CHECK(s.counters().gamma == static_cast<std::uint64_t>(n));

  GroupedPropensities single{{{1.3, 1}}, 0.0};
  std::vector<double> g(10000), e(10000);
  for (auto& x : g) x = sample_exit_time(single, s);
  for (auto& x : e) x = s.exponential(1.3);
  CHECK(ks_statistic(g, e) < ks_critical_value(g.size(), e.size(), 0.01));
}

TEST_CASE("eps = 0 grouping of distinct rates reproduces the sum of exponentials") {
  const std::vector<double> rates{0.7, 1.9, 3.1, 4.4, 8.0};
  const auto grouped = partition(PropensityLog{rates}, 0.0);
  REQUIRE(grouped.groups.size() == 5);
  RandomStream s(17, 0);
  std::vector<double> x(10000);
  for (auto& v : x) v = sample_exit_time(grouped, s);
  CHECK(s.counters().gamma == 5u * 10000u);
  const auto ref = oracle::sum_of_exponentials(rates, 10000, 555);
  CHECK(ks_statistic(x, ref) < ks_critical_value(x.size(), ref.size(), 0.01));
}

TEST_CASE("rho") {
  DrawCounters method, ssa;
  method.gamma = 1;
  ssa.exponential = 200;
  CHECK(rho(method, ssa) == doctest::Approx(0.005));
  method.gamma = 200;
  CHECK(rho(method, ssa) == 1.0);
  ssa.exponential = 0;
  CHECK_THROWS_AS(rho(method, ssa), std::domain_error);
}
