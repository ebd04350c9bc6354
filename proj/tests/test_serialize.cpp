#include <random>

#include "catch2/catch_amalgamated.hpp"
#include "isomer/serialize.hpp"
#include "json.hpp"
#include "support/test_support.hpp"

using namespace isomer;
using nlohmann::json;

TEST_CASE("problem JSON for butane", "[serialize]") {
  const auto doc = json::parse(problem_to_json(build_qubo(4)));
  CHECK(doc["n"] == 4);
  CHECK(doc["p1"] == 1.0);
  CHECK(doc["p2"] == 1.0);
  CHECK(doc["offset"] == 18.0);
  CHECK_FALSE(doc.contains("num_variables"));
  const auto& entries = doc["entries"];
  REQUIRE(entries.is_array());
  CHECK(entries[0] == json::array({0, 0, -8.0}));
  for (const auto& e : entries) {
    REQUIRE(e[0].get<int>() <= e[1].get<int>());
    REQUIRE(e[1].get<int>() < 8);
    REQUIRE(e[2].get<double>() != 0.0);
  }
}

TEST_CASE("problem JSON round-trips bit for bit", "[serialize][property]") {
  for (int n = 3; n <= 9; ++n) {
    for (auto penalties : {PenaltyConfig{1.0, 1.0}, PenaltyConfig{0.1, 1.0 / 3.0}, PenaltyConfig{3.0, 0.5}}) {
      const auto problem = build_qubo(n, penalties);
      const auto text = problem_to_json(problem);
      const auto back = problem_from_json(text);
      REQUIRE(back == problem);
      REQUIRE(problem_to_json(back) == text);
    }
  }
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  auto shifted = build_qubo(6);
  for (int k = 0; k < 3; ++k) shifted = perturb(shifted, testing::random_bits(16, rng), value(rng) + 3.5);
  CHECK(problem_from_json(problem_to_json(shifted, -1)) == shifted);

  QuboProblem generic;
  generic.q = UpperTriangular(3);
  generic.q.at(0, 2) = value(rng);
  generic.q.at(1, 1) = value(rng);
  generic.offset = 0.125;
  const auto text = problem_to_json(generic);
  CHECK(json::parse(text)["num_variables"] == 3);
  CHECK(problem_from_json(text) == generic);
}

TEST_CASE("problem JSON rejects malformed input", "[serialize]") {
  CHECK_THROWS_AS(problem_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(problem_from_json(R"({"n": 4})"), std::invalid_argument);
  CHECK_THROWS_AS(problem_from_json(R"({"n": 4, "p1": 1, "p2": 1, "offset": 0, "entries": [[3, 1, 1.0]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(problem_from_json(R"({"n": 4, "p1": 1, "p2": 1, "offset": 0, "entries": [[0, 8, 1.0]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(problem_from_json(R"({"n": 1, "p1": 1, "p2": 1, "offset": 0, "entries": []})"),
                  std::invalid_argument);
}

TEST_CASE("Ising JSON layout", "[serialize]") {
  const auto ising = scale_ising(qubo_to_ising(build_qubo(4)));
  const auto doc = json::parse(ising_to_json(ising));
  CHECK(doc["n"] == 4);
  CHECK(doc["h"].size() == 8);
  CHECK(doc["scale"].get<double>() == ising.scale);
  CHECK(doc["offset"].get<double>() == ising.offset);
  for (const auto& c : doc["couplings"]) REQUIRE(c[0].get<int>() < c[1].get<int>());
}

TEST_CASE("pipeline report JSON", "[serialize]") {
  const auto problem = build_qubo(4);
  SamplerConfig config;
  config.batch_size = 200;
  config.max_iterations = 2;
  config.perturb_enabled = true;
  IsomerRegistry r1;
  const auto report = run_pipeline(problem, config, r1);
  const auto text = report_to_json(report);
  const auto doc = json::parse(text);
  for (const char* key : {"n", "config", "iterations_used", "isomers_found", "per_iteration"}) {
    CHECK(doc.contains(key));
  }
  CHECK(doc["iterations_used"] == 2);
  CHECK(doc["config"]["pause_sweeps"] == 80);
  CHECK(doc["config"]["schedule"]["sweeps"] == 400);
  const auto& first = doc["per_iteration"][0];
  for (const char* key : {"ground_hits", "unique_isomers_cumulative", "nonconstructible_skips", "max_frequency_state"}) {
    CHECK(first.contains(key));
  }
  CHECK(first["max_frequency_state"].get<std::string>().size() == 8);

  IsomerRegistry r2;
  CHECK(report_to_json(run_pipeline(problem, config, r2)) == text);
  config.threads = 2;
  IsomerRegistry r3;
  CHECK(report_to_json(run_pipeline(problem, config, r3)) == text);
}

TEST_CASE("bits_to_string", "[serialize]") {
  CHECK(bits_to_string(BitString{0, 1, 1, 0}) == "0110");
  CHECK(bits_to_string(BitString{}).empty());
}
