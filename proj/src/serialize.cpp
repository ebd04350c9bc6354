#include "isomer/serialize.hpp"

#include <stdexcept>

#include "json.hpp"

namespace isomer {

using json = nlohmann::ordered_json;

namespace {

json triangular_entries(const UpperTriangular& matrix, bool include_diagonal) {
  json entries = json::array();
  const std::size_t m = matrix.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = include_diagonal ? i : i + 1; j < m; ++j) {
      const double v = matrix(i, j);
      if (v != 0.0) entries.push_back(json::array({i, j, v}));
    }
  }
  return entries;
}

json config_to_json(const SamplerConfig& config, std::size_t num_variables) {
  const AnnealSchedule schedule = config.resolved_schedule(num_variables);
  json out;
  out["batch_size"] = config.batch_size;
  out["lambda"] = config.lambda;
  out["perturb_enabled"] = config.perturb_enabled;
  out["reverse_enabled"] = config.reverse_enabled;
  out["s_star"] = config.s_star;
  out["pause_sweeps"] = config.resolved_pause_sweeps(num_variables);
  out["rng_seed"] = config.rng_seed;
  out["max_iterations"] = config.max_iterations;
  out["target_isomers"] = config.target_isomers;
  out["reset_perturbation"] = config.reset_perturbation;
  out["multiset_expansion"] = config.multiset_expansion;
  out["schedule"] = {
      {"sweeps", schedule.sweeps},
      {"beta_start", schedule.beta_start},
      {"beta_end", schedule.beta_end},
      {"interpolation", to_string(schedule.interpolation)},
      {"moves", to_string(schedule.moves)},
  };
  return out;
}

}  // namespace

std::string bits_to_string(std::span<const std::uint8_t> bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::string problem_to_json(const QuboProblem& problem, int indent) {
  json out;
  out["n"] = problem.carbons;
  if (problem.carbons == 0) out["num_variables"] = problem.num_variables();
  out["p1"] = problem.penalties.p1;
  out["p2"] = problem.penalties.p2;
  out["entries"] = triangular_entries(problem.q, true);
  out["offset"] = problem.offset;
  return out.dump(indent);
}

QuboProblem problem_from_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("problem json: ") + e.what());
  }
  try {
    QuboProblem problem;
    problem.carbons = in.at("n").get<int>();
    problem.penalties.p1 = in.at("p1").get<double>();
    problem.penalties.p2 = in.at("p2").get<double>();
    problem.offset = in.at("offset").get<double>();
    std::size_t m = 0;
    if (in.contains("num_variables")) {
      m = in.at("num_variables").get<std::size_t>();
    } else if (problem.carbons >= 3) {
      m = static_cast<std::size_t>(variable_count(problem.carbons));
    } else {
      throw std::invalid_argument("problem json: n < 3 requires num_variables");
    }
    problem.q = UpperTriangular(m);
    for (const auto& entry : in.at("entries")) {
      const auto i = entry.at(0).get<std::size_t>();
      const auto j = entry.at(1).get<std::size_t>();
      if (i > j || j >= m) throw std::invalid_argument("problem json: bad entry index");
      problem.q.at(i, j) = entry.at(2).get<double>();
    }
    return problem;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("problem json: ") + e.what());
  }
}

std::string ising_to_json(const IsingProblem& problem, int indent) {
  json out;
  out["n"] = problem.carbons;
  out["h"] = problem.h;
  out["couplings"] = triangular_entries(problem.j, false);
  out["offset"] = problem.offset;
  out["scale"] = problem.scale;
  return out.dump(indent);
}

std::string report_to_json(const PipelineReport& report, int indent) {
  const auto m = static_cast<std::size_t>(variable_count(report.carbons));
  json out;
  out["n"] = report.carbons;
  out["config"] = config_to_json(report.config, m);
  out["iterations_used"] = report.iterations_used;
  out["isomers_found"] = report.isomers_found;
  json iterations = json::array();
  for (const auto& it : report.per_iteration) {
    json row;
    row["ground_hits"] = it.ground_hits;
    row["unique_isomers_cumulative"] = it.unique_isomers_cumulative;
    row["nonconstructible_skips"] = it.nonconstructible_skips;
    row["max_frequency_state"] =
        it.max_frequency_state ? json(bits_to_string(*it.max_frequency_state)) : json(nullptr);
    iterations.push_back(std::move(row));
  }
  out["per_iteration"] = std::move(iterations);
  return out.dump(indent);
}

std::string isomer_dump(const IsomerRegistry& registry) {
  std::string out;
  for (const auto& [cert, entry] : registry.entries()) {
    json row;
    row["certificate"] = cert;
    row["degree_multiset"] = entry.degree_multiset;
    json edges = json::array();
    for (const auto& [a, b] : entry.representative.edges) edges.push_back(json::array({a, b}));
    row["edges"] = std::move(edges);
    row["count"] = entry.count;
    row["first_seen_iteration"] = entry.first_seen_iteration;
    out += row.dump();
    out += '\n';
  }
  return out;
}

}  // namespace isomer
