#include <algorithm>
#include <numeric>

#include "catch2/catch_amalgamated.hpp"
#include "isomer/analytics.hpp"
#include "isomer/oracle.hpp"
#include "support/test_support.hpp"

using namespace isomer;
using namespace isomer::testing;

namespace {

std::vector<BitString> encodings(int n) {
  std::vector<BitString> out;
  for (const auto& r : analytics::representative_encodings(n)) out.push_back(r.encoding);
  return out;
}

SampleRecord at_energy(double e) {
  SampleRecord r;
  r.energy_original = e;
  return r;
}

}  // namespace

TEST_CASE("Hamming report for butane", "[analytics][hamming]") {
  const auto report = analytics::hamming_report({onehot({2, 2}), onehot({3, 1})}, 4);
  CHECK(report.pairwise == std::vector<int>{4});
  CHECK(report.per_isomer_min == std::vector<int>{4, 4});
  REQUIRE(report.pairs.size() == 1);
  CHECK(report.pairs[0].a == 0);
  CHECK(report.pairs[0].b == 1);
  CHECK(encodings(4).size() == 2);
  CHECK(analytics::hamming_report(encodings(4), 4).pairwise == std::vector<int>{4});
}

TEST_CASE("Hamming report edge cases", "[analytics][hamming]") {
  const auto single = analytics::hamming_report({onehot({2, 2})}, 4);
  CHECK(single.pairwise.empty());
  CHECK(single.per_isomer_min.empty());
  CHECK_THROWS_AS(analytics::hamming_report({onehot({2, 2}), onehot({2, 2})}, 4), std::invalid_argument);
  CHECK_THROWS_AS(analytics::hamming_report({onehot({1, 1})}, 4), std::invalid_argument);
  CHECK(analytics::hamming_distance(onehot({1, 2}), onehot({2, 1})) == 4);
  CHECK_THROWS_AS(analytics::hamming_distance(BitString(3), BitString(4)), std::invalid_argument);
}

TEST_CASE("Hamming distances are even and within [4, 2(n-2)]", "[analytics][hamming][property]") {
  for (int n = 4; n <= 9; ++n) {
    const auto enc = encodings(n);
    REQUIRE(enc.size() == oracle::enumerate_free_trees(n).size());
    const auto report = analytics::hamming_report(enc, n);
    CHECK(report.pairwise.size() == enc.size() * (enc.size() - 1) / 2);
    CHECK(std::ranges::is_sorted(report.pairwise));
    for (int d : report.pairwise) {
      REQUIRE(d % 2 == 0);
      REQUIRE(d >= 4);
      REQUIRE(d <= 2 * (n - 2));
    }
    // Nearest-neighbour distances recomputed directly.
    for (std::size_t a = 0; a < enc.size(); ++a) {
      int best = 1 << 30;
      for (std::size_t b = 0; b < enc.size(); ++b) {
        if (a == b) continue;
        int d = 0;
        for (std::size_t i = 0; i < enc[a].size(); ++i) d += enc[a][i] != enc[b][i];
        best = std::min(best, d);
      }
      REQUIRE(report.per_isomer_min[a] == best);
    }
  }
}

TEST_CASE("heptane nearest neighbours sit at distance 4", "[analytics][hamming]") {
  const auto report = analytics::hamming_report(encodings(7), 7);
  REQUIRE(report.per_isomer_min.size() == 9);
  CHECK(std::ranges::count(report.per_isomer_min, 4) >= 8);
}

TEST_CASE("representatives are the smallest constructible orderings", "[analytics]") {
  for (int n = 3; n <= 8; ++n) {
    for (const auto& r : analytics::representative_encodings(n)) {
      REQUIRE(oracle::constraint_check(r.encoding, n));
      REQUIRE(decode_onehot(r.encoding, n) == r.sequence);
      REQUIRE(canonicalize(sequence_to_tree(r.sequence)).certificate == r.certificate);
      // No smaller permutation of the same interior degrees builds this isomer.
      auto interior = std::vector<int>(r.sequence.degrees.begin() + 1, r.sequence.degrees.end() - 1);
      auto probe = interior;
      std::ranges::sort(probe);
      do {
        if (probe >= interior) break;
        DegreeSequence s{r.sequence.degrees};
        std::ranges::copy(probe, s.degrees.begin() + 1);
        if (auto build = try_sequence_to_tree(s); build.tree) {
          REQUIRE(canonicalize(*build.tree).certificate != r.certificate);
        }
      } while (std::ranges::next_permutation(probe).found);
    }
  }
  const auto butane = analytics::representative_encodings(4);
  REQUIRE(butane.size() == 2);
  std::vector<std::vector<int>> sequences;
  for (const auto& r : butane) sequences.push_back(r.sequence.degrees);
  std::ranges::sort(sequences);
  CHECK(sequences == std::vector<std::vector<int>>{{1, 2, 2, 1}, {1, 3, 1, 1}});
}

TEST_CASE("energy histogram examples", "[analytics][histogram]") {
  CHECK(analytics::energy_histogram({}).bins.empty());
  CHECK(analytics::energy_histogram({}).total() == 0);

  std::vector<SampleRecord> ground(5, at_energy(-18.0));
  const auto single = analytics::energy_histogram(ground, 18.0);
  REQUIRE(single.bins.size() == 1);
  CHECK(single.bins.begin()->first == 0.0);
  CHECK(single.bins.begin()->second == 5);

  const auto mixed = analytics::energy_histogram(
      {at_energy(-18.0), at_energy(-18.0 + 4e-7), at_energy(-17.0), at_energy(-14.0)}, 18.0);
  CHECK(mixed.bins.size() == 3);
  CHECK(mixed.bins.at(0.0) == 2);
  CHECK(mixed.bins.at(1.0) == 1);
  CHECK(mixed.bins.at(4.0) == 1);
  CHECK(mixed.total() == 4);
  CHECK(analytics::histogram_csv(mixed) == "energy,count\n0,2\n1,1\n4,1\n");
}

TEST_CASE("butane batch histogram has a large ground bin", "[analytics][histogram]") {
  const auto problem = build_qubo(4);
  SamplerConfig config;
  config.rng_seed = 3;
  const auto batch = sample_batch(problem, problem, config, 1);
  const auto histogram = analytics::energy_histogram(batch, problem.offset);
  CHECK(histogram.total() == batch.size());
  CHECK(histogram.bins.begin()->first == 0.0);
  CHECK(histogram.bins.begin()->second >= 300);
}

TEST_CASE("mean and median", "[analytics]") {
  CHECK(analytics::mean({}) == 0.0);
  CHECK(analytics::mean({1, 2, 6}) == 3.0);
  CHECK(analytics::median({5, 1, 3}) == 3.0);
  CHECK(analytics::median({4, 1, 2, 3}) == 2.5);
}

TEST_CASE("coverage experiment", "[analytics][coverage]") {
  SamplerConfig base;
  base.batch_size = 2000;
  base.rng_seed = 21;
  const auto methods = analytics::standard_methods(base);
  REQUIRE(methods.size() == 4);
  CHECK(methods[0].name == "FA");
  CHECK(methods[1].name == "FA+QP");
  CHECK(methods[2].name == "RA");
  CHECK(methods[3].name == "RA+QP");
  CHECK(methods[3].config.reverse_enabled);
  CHECK(methods[3].config.perturb_enabled);

  CHECK(analytics::coverage_experiment(4, methods, 0).front().per_run_iterations.empty());

  const auto stats = analytics::coverage_experiment(4, methods, 3);
  REQUIRE(stats.size() == 4);
  for (const auto& s : stats) {
    CHECK(s.per_run_iterations == std::vector<int>{1, 1, 1});
    CHECK(std::ranges::none_of(s.censored, [](bool c) { return c; }));
    CHECK(s.mean == analytics::mean(s.per_run_iterations));
    CHECK(s.median == analytics::median(s.per_run_iterations));
  }
  const auto again = analytics::coverage_experiment(4, methods, 3);
  for (std::size_t k = 0; k < stats.size(); ++k) {
    CHECK(again[k].per_run_iterations == stats[k].per_run_iterations);
  }
  const auto csv = analytics::coverage_csv(stats);
  CHECK(csv.rfind("method,repetition,iterations\n", 0) == 0);
  CHECK(std::ranges::count(csv, '\n') == 13);
}

TEST_CASE("coverage runs that hit the cap are censored", "[analytics][coverage]") {
  SamplerConfig tiny;
  tiny.batch_size = 1;
  tiny.max_iterations = 2;
  tiny.schedule = AnnealSchedule{};
  tiny.schedule->sweeps = 1;
  const auto stats = analytics::coverage_experiment(8, {{"tiny", tiny}}, 2);
  CHECK(stats[0].per_run_iterations == std::vector<int>{2, 2});
  CHECK(stats[0].censored == std::vector<bool>{true, true});
}

TEST_CASE("sample CSV round trip", "[analytics][io]") {
  const auto problem = build_qubo(5);
  SamplerConfig config;
  config.batch_size = 20;
  const auto batch = sample_batch(problem, problem, config, 2);
  const auto parsed = analytics::parse_samples_csv(analytics::samples_csv(batch));
  REQUIRE(parsed.size() == batch.size());
  for (std::size_t k = 0; k < batch.size(); ++k) {
    CHECK(parsed[k].bits == batch[k].bits);
    CHECK(parsed[k].energy_original == batch[k].energy_original);
    CHECK(parsed[k].iteration == 2);
    CHECK(parsed[k].chain_id == batch[k].chain_id);
  }
  CHECK_THROWS_AS(analytics::parse_samples_csv("bits,energy_original,iteration,chain\n01x,1,1,1\n"),
                  std::runtime_error);
}

TEST_CASE("frequency CSV lists per-iteration isomer counts", "[analytics][io]") {
  const auto problem = build_qubo(4);
  SamplerConfig config;
  config.batch_size = 500;
  config.max_iterations = 2;
  IsomerRegistry registry;
  const auto report = run_pipeline(problem, config, registry);
  const auto csv = analytics::frequency_csv(report);
  CHECK(csv.rfind("iteration,certificate,count\n", 0) == 0);
  CHECK(std::ranges::count(csv, '\n') == 1 + 2 * 2);
}
