#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "heatflow/stability.hpp"
#include "test_util.hpp"

using namespace heatflow;

namespace {

const Dataset& toy() {
  static const Dataset d({{-0.8}, {0.0}, {0.2}, {0.5}, {0.6}});
  return d;
}

const FlowResult& toy_flow() {
  static const FlowResult flow = [] {
    const Kernel kernel(KernelFamily::gaussian);
    const SamplingGrid grid = SamplingGrid::cover(toy(), kernel, 0.4, 1024);
    return run_flow(toy(), kernel, TimeGrid::uniform(0.01, 0.4, 51), grid, 256);
  }();
  return flow;
}

FlowResult fake_flow(std::vector<std::size_t> m_series) {
  FlowResult flow{TimeGrid::uniform(0.1, 1.0, m_series.size()), {}, m_series, {}, 1};
  flow.s_series.assign(m_series.size(), 0.0);
  return flow;
}

}  // namespace

TEST_CASE("toy flow reproduces the independently computed series") {
  const FlowResult& flow = toy_flow();
  REQUIRE(flow.times.size() == 51);
  CHECK(flow.point_count == 5);

  // Transition slices cross-checked against a separate grid-scan
  // implementation of the same mixture.
  for (std::size_t k = 0; k < 51; ++k) {
    const std::size_t expected = k < 6 ? 5 : k < 12 ? 4 : k < 22 ? 3 : k < 42 ? 2 : 1;
    CHECK(flow.m_series[k] == expected);
  }
  CHECK(flow.s_series[0] == doctest::Approx(std::log2(5.0)).epsilon(1e-12));
  CHECK(flow.s_series[15] == doctest::Approx(1.5219280948873622).epsilon(1e-12));
  CHECK(flow.s_series[30] == doctest::Approx(0.7219280948873623).epsilon(1e-12));
  CHECK(flow.s_series[50] == 0.0);

  for (std::size_t k = 0; k < 51; ++k) {
    CHECK(!validate_partition(flow.clusterings[k], toy()).has_value());
    CHECK(flow.clusterings[k].time_index == k);
  }
}

TEST_CASE("parallel flow matches a sequential slice loop exactly") {
  const FlowResult& flow = toy_flow();
  const Kernel kernel(KernelFamily::gaussian);
  const SamplingGrid grid = SamplingGrid::cover(toy(), kernel, 0.4, 1024);
  const TimeGrid times = TimeGrid::uniform(0.01, 0.4, 51);
  for (std::size_t k = 0; k < times.size(); k += 5) {
    const Clustering c = cluster_at_time(toy(), kernel, times.at(k), grid, 256, k);
    CHECK(c.assignment == flow.clusterings[k].assignment);
    CHECK(smi(c) == flow.s_series[k]);
  }
}

TEST_CASE("five points with a symmetric middle pair: full score table") {
  // Same block structure as the reference dataset but with the middle pair
  // at -0.1/0.1. Transition slices and the consolidation index are frozen
  // from an independent grid-scan oracle: counts (6, 6, 18, 7, 14) over 51
  // slices and first single-cluster slice 37.
  const Dataset data({{-0.8}, {-0.1}, {0.1}, {0.5}, {0.6}});
  const Kernel kernel(KernelFamily::gaussian);
  const SamplingGrid grid = SamplingGrid::cover(data, kernel, 0.4, 1024);
  const FlowResult flow =
      run_flow(data, kernel, TimeGrid::uniform(0.01, 0.4, 51), grid, 256);

  CHECK(stability_score(flow, 5) == doctest::Approx(6.0 / 51));
  CHECK(stability_score(flow, 4) == doctest::Approx(6.0 / 51));
  CHECK(stability_score(flow, 3) == doctest::Approx(18.0 / 51));
  CHECK(stability_score(flow, 2) == doctest::Approx(7.0 / 51));
  CHECK(stability_score(flow, 1) == doctest::Approx(14.0 / 51));
  REQUIRE(consolidation_time(flow) == 37);
  CHECK(flow.times.at(37) == doctest::Approx(0.2986));

  // truncating at the consolidation index sharpens the three-cluster signal
  CHECK(stability_score(flow, 3, 37) == doctest::Approx(18.0 / 38));
  CHECK(stability_score(flow, 2, 37) == doctest::Approx(7.0 / 38));

  std::size_t last3 = 0;
  for (std::size_t k = 0; k <= 37; ++k) {
    if (flow.m_series[k] == 3) last3 = k;
  }
  const auto groups = flow.clusterings[last3].members();
  REQUIRE(groups.size() == 3);
  CHECK(groups[0] == std::vector<std::size_t>{0});
  CHECK(groups[1] == std::vector<std::size_t>{1, 2});
  CHECK(groups[2] == std::vector<std::size_t>{3, 4});
}

TEST_CASE("single-point and two-point flows behave as scale suggests") {
  const Kernel kernel(KernelFamily::gaussian);

  const Dataset single(std::vector<Vec>{{0.2}});
  const SamplingGrid sg = SamplingGrid::cover(single, kernel, 0.5, 64);
  const FlowResult sf =
      run_flow(single, kernel, TimeGrid::uniform(0.05, 0.5, 6), sg, 64);
  for (std::size_t k = 0; k < sf.times.size(); ++k) {
    CHECK(sf.m_series[k] == 1);
    CHECK(sf.s_series[k] == 0.0);
  }

  const Dataset pair({{-1.0}, {1.0}});
  const SamplingGrid pg = SamplingGrid::cover(pair, kernel, 1.5, 256);
  const FlowResult pf =
      run_flow(pair, kernel, TimeGrid::uniform(0.1, 1.5, 12), pg, 64);
  CHECK(pf.m_series.front() == 2);
  CHECK(pf.m_series.back() == 1);
}

TEST_CASE("stability scores on the toy flow") {
  const FlowResult& flow = toy_flow();
  CHECK(stability_score(flow, 5) == doctest::Approx(6.0 / 51));
  CHECK(stability_score(flow, 4) == doctest::Approx(6.0 / 51));
  CHECK(stability_score(flow, 3) == doctest::Approx(10.0 / 51));
  CHECK(stability_score(flow, 2) == doctest::Approx(20.0 / 51));
  CHECK(stability_score(flow, 1) == doctest::Approx(9.0 / 51));
  CHECK(stability_score(flow, 40) == 0.0);
  CHECK_THROWS_AS(stability_score(flow, 0), std::invalid_argument);

  double sum = 0.0;
  for (std::size_t n = 1; n <= flow.point_count; ++n) sum += stability_score(flow, n);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  const FlowResult ones = fake_flow(std::vector<std::size_t>(9, 1));
  CHECK(stability_score(ones, 1) == 1.0);
}

TEST_CASE("entropy band membership") {
  CHECK(entropy_band_contains(0.0, 0.0, 0.0));
  CHECK(entropy_band_contains(0.0, 0.0, 5e-13));
  CHECK(!entropy_band_contains(0.0, 0.0, 0.01));
  CHECK(entropy_band_contains(0.5, 0.5, 0.5));
  CHECK(!entropy_band_contains(0.5, 0.5, 0.501));
  // a zero lower bound admits exact zeros
  CHECK(entropy_band_contains(0.0, 0.1, 0.0));
  CHECK(entropy_band_contains(0.0, 0.1, 0.05));
  CHECK(!entropy_band_contains(0.0, 0.1, 0.2));
  // a positive lower bound stays strict
  CHECK(!entropy_band_contains(0.1, 0.2, 0.1));
  CHECK(entropy_band_contains(0.1, 0.2, 0.2));
}

TEST_CASE("entropy stability scores") {
  const FlowResult& flow = toy_flow();

  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(entropy_stability_score(flow, n, -1.0, 10.0) ==
          doctest::Approx(stability_score(flow, n)));
  }
  CHECK(entropy_stability_score(flow, 3, 50.0, 60.0) == 0.0);

  const double s3 = 1.5219280948873622;
  CHECK(entropy_stability_score(flow, 3, s3 - 0.01, s3 + 0.01) ==
        doctest::Approx(stability_score(flow, 3)));

  CHECK_THROWS_AS(entropy_stability_score(flow, 3, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(entropy_stability_score(flow, 3, 0.7, 0.5), std::invalid_argument);
}

TEST_CASE("consolidation time") {
  CHECK(consolidation_time(toy_flow()) == 42);
  CHECK(toy_flow().times.at(42) == doctest::Approx(0.3376));

  CHECK(consolidation_time(fake_flow({1, 1, 1, 1})) == 0);
  CHECK(!consolidation_time(fake_flow({3, 2, 2})).has_value());
  CHECK(consolidation_time(fake_flow({3, 1, 2, 1, 1})) == 3);
}

TEST_CASE("stability table sums to one over any horizon") {
  const FlowResult& flow = toy_flow();
  for (const std::size_t horizon : {50u, 42u, 20u}) {
    const StabilityTable table = stability_table(flow, horizon);
    const double sum =
        std::accumulate(table.scores.begin(), table.scores.end(), 0.0);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(stability_table(flow, 51), std::out_of_range);

  // banded entries: a wide band reproduces the plain scores, a zero band
  // keeps only the single-cluster tail on this flow
  const StabilityTable wide = stability_table(flow, 50, -1.0, 10.0);
  REQUIRE(wide.banded.size() == 5);
  for (const auto& entry : wide.banded) {
    CHECK(entry.value == doctest::Approx(wide.scores[entry.n]));
  }
  const StabilityTable zero = stability_table(flow, 50, 0.0, 0.0);
  CHECK(zero.banded[0].value == doctest::Approx(9.0 / 51));
  CHECK(zero.banded[2].value == 0.0);
}

TEST_CASE("backtrack of the whole dataset reproduces the global series") {
  const FlowResult& flow = toy_flow();
  const std::vector<std::size_t> all{0, 1, 2, 3, 4};
  const LocalAnalysis analysis = backtrack(flow, all, 40);
  for (std::size_t k = 0; k <= 40; ++k) {
    CHECK(analysis.m_series[k] == flow.m_series[k]);
    CHECK(analysis.s_series[k] == doctest::Approx(flow.s_series[k]).epsilon(1e-12));
  }
}

TEST_CASE("backtrack of a singleton is flat zero") {
  const LocalAnalysis analysis = backtrack(toy_flow(), std::vector<std::size_t>{3}, 50);
  for (std::size_t k = 0; k <= 50; ++k) {
    CHECK(analysis.m_series[k] == 1);
    CHECK(analysis.s_series[k] == 0.0);
  }
  // zero band counts every slice up to the anchor
  CHECK(local_entropy_stability_score(analysis, 0.0, 0.0, 50) ==
        doctest::Approx(1.0));
}

TEST_CASE("backtrack conserves subset mass and is whole at its anchor") {
  const FlowResult& flow = toy_flow();
  testutil::Rng rng(77);
  for (int round = 0; round < 30; ++round) {
    const std::size_t k = rng.index(0, 50);
    std::vector<std::size_t> subset;
    for (std::size_t p = 0; p < 5; ++p) {
      if (rng.uniform(0, 1) < 0.6) subset.push_back(p);
    }
    if (subset.empty()) subset.push_back(rng.index(0, 4));
    const LocalAnalysis analysis = backtrack(flow, subset, k);
    CHECK(analysis.m_series.size() == k + 1);
    // S' defined over sizes that sum to #X' holds by smi's own checking; the
    // series must stay within [0, log2 M'].
    for (std::size_t j = 0; j <= k; ++j) {
      CHECK(analysis.s_series[j] >= 0.0);
      CHECK(analysis.s_series[j] <=
            std::log2(static_cast<double>(analysis.m_series[j])) + 1e-12);
    }
  }

  // a slice-k cluster is whole at its own anchor
  const auto groups = flow.clusterings[30].members();
  for (const auto& cluster : groups) {
    const LocalAnalysis analysis = backtrack(flow, cluster, 30);
    CHECK(analysis.m_series[30] == 1);
    CHECK(analysis.s_series[30] == 0.0);
  }

  CHECK_THROWS_WITH(backtrack(flow, std::vector<std::size_t>{}, 10), "empty subset");
}

TEST_CASE("automatic time bounds invert the kernel spread") {
  const Kernel kernel(KernelFamily::gaussian);

  const Dataset pair({{0.0}, {1.0}});
  const SamplingGrid grid = SamplingGrid::cover(pair, kernel, 0.5, 64);
  const auto [t0, t_max] = auto_time_bounds(pair, grid, kernel);
  CHECK(t_max == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(t0 == doctest::Approx(2.0 * grid.max_spacing()).epsilon(1e-14));
  CHECK(t0 < t_max);

  const Dataset coincident({{0.3}, {0.3}, {0.3}});
  const SamplingGrid cg({GridAxis{-1.0, 1.0, 64}});
  CHECK_THROWS_WITH(auto_time_bounds(coincident, cg, kernel), "zero diameter");

  const Dataset tiny({{0.0}, {0.001}});
  const SamplingGrid tg = SamplingGrid::cover(tiny, kernel, 0.0005, 16);
  CHECK_THROWS_WITH(auto_time_bounds(tiny, tg, kernel), "degenerate time range");
}

TEST_CASE("exponential kernel bounds use its own base spread") {
  const Kernel kernel(KernelFamily::exponential);
  const Dataset pair({{0.0}, {1.0}});
  const SamplingGrid grid = SamplingGrid::cover(pair, kernel, 0.2, 64);
  const auto [t0, t_max] = auto_time_bounds(pair, grid, kernel);
  CHECK(t_max == doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(t0 == doctest::Approx(2.0 * grid.max_spacing() / std::sqrt(2.0)));
}

TEST_CASE("driver emits stable clusters and partitions every point") {
  const Kernel kernel(KernelFamily::gaussian);

  SUBCASE("toy dataset") {
    DriverOptions options;
    options.slices = 51;
    options.threshold = 0.2;
    const DriverResult result = stable_cluster_driver(toy(), kernel, options);

    std::vector<int> seen(5, 0);
    for (const auto& cluster : result.clusters) {
      for (std::size_t p : cluster.points) ++seen[p];
      if (cluster.scored) CHECK(cluster.score >= options.threshold);
    }
    CHECK(seen == std::vector<int>(5, 1));
    REQUIRE(!result.rounds.empty());
    CHECK(result.rounds.front().chosen_n.has_value());
  }

  SUBCASE("three well-separated 1d blocks come out as three clusters") {
    // middle pair symmetric about zero, as in the worked three-cluster case
    const Dataset blocks({{-0.8}, {-0.1}, {0.1}, {0.5}, {0.6}});
    DriverOptions options;
    options.slices = 51;
    options.threshold = 0.2;
    const DriverResult result = stable_cluster_driver(blocks, kernel, options);

    std::vector<std::vector<std::size_t>> scored;
    for (const auto& cluster : result.clusters) {
      if (cluster.scored) scored.push_back(cluster.points);
    }
    REQUIRE(scored.size() == 3);
    std::sort(scored.begin(), scored.end());
    CHECK(scored[0] == std::vector<std::size_t>{0});
    CHECK(scored[1] == std::vector<std::size_t>{1, 2});
    CHECK(scored[2] == std::vector<std::size_t>{3, 4});
  }

  SUBCASE("random datasets always end fully partitioned") {
    testutil::Rng rng(4242);
    for (int round = 0; round < 5; ++round) {
      const Dataset data = testutil::random_dataset(rng, rng.index(6, 16), 1);
      DriverOptions options;
      options.slices = 21;
      options.grid_res = 256;
      options.threshold = 0.5;
      const DriverResult result = stable_cluster_driver(data, kernel, options);
      std::vector<int> seen(data.size(), 0);
      for (const auto& cluster : result.clusters) {
        for (std::size_t p : cluster.points) ++seen[p];
      }
      CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
      CHECK(result.rounds.size() <= data.size());
    }
  }

  SUBCASE("coincident points fall back to one unscored group") {
    const Dataset same({{0.5}, {0.5}, {0.5}});
    const DriverResult result = stable_cluster_driver(same, kernel, DriverOptions{});
    REQUIRE(result.clusters.size() == 1);
    CHECK(result.clusters[0].points == std::vector<std::size_t>{0, 1, 2});
    CHECK(!result.clusters[0].scored);
  }

  SUBCASE("threshold outside (0, 1] is rejected") {
    DriverOptions options;
    options.threshold = 0.0;
    CHECK_THROWS_AS(stable_cluster_driver(toy(), kernel, options),
                    std::invalid_argument);
    options.threshold = 1.5;
    CHECK_THROWS_AS(stable_cluster_driver(toy(), kernel, options),
                    std::invalid_argument);
  }
}

TEST_CASE("wgll entropy against a direct summation") {
  const Kernel kernel(KernelFamily::gaussian);

  const Dataset single(std::vector<Vec>{{0.7}});
  CHECK(wgll_entropy(single, kernel, 0.2) == 0.0);

  testutil::Rng rng(808);
  const Dataset data = testutil::random_dataset(rng, 12, 1);
  for (int i = 0; i < 20; ++i) {
    const double t = 0.02 * std::pow(1.35, i);
    // independent re-summation
    std::vector<long double> p(data.size(), 0.0L);
    for (std::size_t a = 0; a < data.size(); ++a) {
      for (std::size_t b = 0; b < data.size(); ++b) {
        const long double d = data.point(a)[0] - data.point(b)[0];
        p[a] += std::exp((double)(-d * d / (2.0L * t * t)));
      }
    }
    long double z = 0.0L;
    for (auto v : p) z += v;
    long double s = 0.0L;
    for (auto v : p) {
      const long double q = v / z;
      s -= q * std::log2((double)q);
    }
    CHECK(wgll_entropy(data, kernel, t) ==
          doctest::Approx((double)s).epsilon(1e-12));
  }
}

TEST_CASE("wgll entropy approaches log2 N for wide kernels") {
  const Kernel kernel(KernelFamily::gaussian);
  const double t = 100.0 * toy().diameter();
  CHECK(wgll_entropy(toy(), kernel, t) ==
        doctest::Approx(std::log2(5.0)).epsilon(1e-3));
}

TEST_CASE("wgll scan reports interior minima") {
  const Kernel kernel(KernelFamily::gaussian);

  const WgllScan scan = wgll_scan(toy(), kernel, TimeGrid::uniform(0.01, 0.4, 51));
  CHECK(scan.times.size() == 51);
  CHECK(!scan.minima.empty());
  for (std::size_t k : scan.minima) {
    CHECK(k > 0);
    CHECK(k < 50);
    CHECK(scan.values[k] < scan.values[k - 1]);
    CHECK(scan.values[k] < scan.values[k + 1]);
  }

  // monotone stretch has no interior minimum
  const Dataset pair({{0.0}, {1.0}});
  const WgllScan mono = wgll_scan(pair, kernel, TimeGrid::uniform(0.3, 3.0, 20));
  CHECK(mono.minima.empty());

  const Dataset single(std::vector<Vec>{{0.0}});
  const WgllScan flat = wgll_scan(single, kernel, TimeGrid::uniform(0.1, 1.0, 10));
  CHECK(flat.minima.empty());
  for (double v : flat.values) CHECK(v == 0.0);
}
