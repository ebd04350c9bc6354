#include "isomer/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "isomer/analytics.hpp"
#include "isomer/graph.hpp"
#include "isomer/oracle.hpp"

namespace isomer {

namespace {

BitString random_state(std::size_t m, std::mt19937_64& rng) {
  BitString y(m);
  for (auto& b : y) b = static_cast<std::uint8_t>(rng() & 1u);
  return y;
}

BitString state_from_index(std::uint64_t index, std::size_t m) {
  BitString y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = static_cast<std::uint8_t>((index >> i) & 1u);
  return y;
}

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// Every state when that is cheap, otherwise `count` random ones.
std::vector<BitString> test_states(std::size_t m, std::size_t count, std::mt19937_64& rng) {
  std::vector<BitString> states;
  if (m <= 16) {
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << m); ++k) states.push_back(state_from_index(k, m));
  } else {
    for (std::size_t k = 0; k < count; ++k) states.push_back(random_state(m, rng));
  }
  return states;
}

CheckResult check(std::string name, bool passed, std::string detail = {}) {
  return CheckResult{std::move(name), passed, std::move(detail)};
}

std::set<std::string> certificates_of(const IsomerRegistry& registry) {
  const auto certs = registry.certificates();
  return {certs.begin(), certs.end()};
}

}  // namespace

std::size_t known_alkane_isomer_count(int carbons) {
  static constexpr std::array<std::size_t, 13> kCounts = {0, 1, 1, 1, 2, 3, 5, 9, 18, 35, 75, 159, 355};
  if (carbons < 1 || carbons > 12) return 0;
  return kCounts[static_cast<std::size_t>(carbons)];
}

std::vector<CheckResult> run_verification(int carbons, const VerifyOptions& options) {
  const int n = carbons;
  std::vector<CheckResult> checks;
  std::mt19937_64 rng(options.seed);
  const QuboProblem problem = build_qubo(n);
  const std::size_t m = problem.num_variables();
  const auto states = test_states(m, options.random_states, rng);

  {
    std::size_t bad = 0;
    for (const auto& y : states) {
      if (!close(matrix_eval(problem, y) + problem.offset, objective_eval(y, n), 1e-9)) ++bad;
    }
    checks.push_back(check("matrix form equals penalty objective", bad == 0,
                           std::to_string(states.size()) + " states, " + std::to_string(bad) +
                               " mismatches"));
  }
  {
    std::size_t bad = 0;
    for (const auto& y : states) {
      if ((objective_eval(y, n) == 0.0) != oracle::constraint_check(y, n)) ++bad;
    }
    checks.push_back(check("zero objective iff feasible", bad == 0, std::to_string(bad) + " mismatches"));
  }
  {
    const IsingProblem ising = qubo_to_ising(problem);
    std::size_t bad = 0;
    for (const auto& y : states) {
      const double e = ising_energy(ising, to_spins(y)) + ising.offset;
      if (!close(e, matrix_eval(problem, y), 1e-9)) ++bad;
    }
    checks.push_back(check("ising transform preserves energies", bad == 0,
                           std::to_string(bad) + " mismatches"));

    const IsingProblem scaled = scale_ising(ising);
    bool bounded = std::ranges::all_of(scaled.h, [](double h) { return std::abs(h) <= 2.0 + 1e-12; });
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) bounded = bounded && std::abs(scaled.j(i, j)) <= 1.0 + 1e-12;
    }
    std::size_t order_bad = 0;
    for (std::size_t k = 0; k + 1 < states.size(); ++k) {
      const double a = matrix_eval(problem, states[k]);
      const double b = matrix_eval(problem, states[k + 1]);
      const double sa = ising_energy(scaled, to_spins(states[k]));
      const double sb = ising_energy(scaled, to_spins(states[k + 1]));
      const bool tie = std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a));
      if (!tie && ((a < b) != (sa < sb))) ++order_bad;
    }
    checks.push_back(check("scaled ising within bounds and order preserved", bounded && order_bad == 0,
                           "scale " + std::to_string(scaled.scale)));
  }
  {
    BitString psi1 = encode_onehot(DegreeSequence{[&] {
      std::vector<int> d(static_cast<std::size_t>(n), 2);
      d.front() = d.back() = 1;
      return d;
    }()});
    BitString psi2 = random_state(m, rng);
    const double lambda = 5e-5;
    const QuboProblem shifted = perturb(perturb(problem, psi1, lambda), psi2, lambda);
    std::size_t bad = 0;
    for (std::size_t k = 0; k < std::min<std::size_t>(states.size(), options.random_states); ++k) {
      const auto& y = states[k];
      auto dot = [&](const BitString& p) {
        double s = 0;
        for (std::size_t i = 0; i < m; ++i) s += p[i] * y[i];
        return s;
      };
      const double expected = matrix_eval(problem, y) + lambda * dot(psi1) * dot(psi1) +
                              lambda * dot(psi2) * dot(psi2);
      if (!close(matrix_eval(shifted, y), expected, 1e-9)) ++bad;
    }
    checks.push_back(check("perturbation shifts by lambda (psi.y)^2", bad == 0,
                           std::to_string(bad) + " mismatches"));
  }

  std::optional<IsomerRegistry> oracle_isomers;
  if (n <= oracle::kMaxEnumeratedCarbons) {
    oracle_isomers = oracle::brute_force_isomers(n);
    const std::size_t expected = known_alkane_isomer_count(n);
    checks.push_back(check("oracle isomer count", oracle_isomers->size() == expected,
                           std::to_string(oracle_isomers->size()) + " vs " + std::to_string(expected)));
    const bool generated_once = oracle::enumerate_free_trees(n).size() == oracle_isomers->size();
    checks.push_back(check("centroid generation has no duplicates", generated_once));

    // Last-fit over every feasible ordering reaches every isomer.
    IsomerRegistry reached;
    for (const auto& r : analytics::representative_encodings(n)) {
      reached.add(sequence_to_tree(r.sequence), 0);
    }
    checks.push_back(check("last-fit construction is surjective",
                           certificates_of(reached) == certificates_of(*oracle_isomers),
                           std::to_string(reached.size()) + " reached"));

    const auto reps = analytics::representative_encodings(n);
    std::vector<BitString> encodings;
    for (const auto& r : reps) encodings.push_back(r.encoding);
    const auto hamming = analytics::hamming_report(encodings, n);
    const bool bounds = std::ranges::all_of(hamming.pairwise, [&](int d) {
      return d % 2 == 0 && d >= 4 && d <= 2 * (n - 2);
    });
    checks.push_back(check("hamming distances even and within [4, 2(n-2)]", bounds,
                           std::to_string(hamming.pairwise.size()) + " pairs"));
  }

  if (m <= 16) {
    for (const PenaltyConfig penalties : {PenaltyConfig{1.0, 1.0}, PenaltyConfig{3.0, 0.5}}) {
      const auto ground = oracle::brute_force_ground_states(build_qubo(n, penalties));
      std::vector<BitString> feasible;
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << m); ++k) {
        auto y = state_from_index(k, m);
        if (oracle::constraint_check(y, n)) feasible.push_back(std::move(y));
      }
      std::ranges::sort(feasible);
      std::ostringstream name;
      name << "ground states equal feasible set (p1=" << penalties.p1 << ", p2=" << penalties.p2 << ")";
      checks.push_back(check(name.str(), ground == feasible, std::to_string(ground.size()) + " states"));
    }
  }
  if (m <= 20 && oracle_isomers) {
    const auto ground = oracle::brute_force_ground_states(problem);
    IsomerRegistry decoded;
    for (const auto& y : ground) {
      if (auto build = try_sequence_to_tree(decode_onehot(y, n)); build.tree) decoded.add(*build.tree, 0);
    }
    checks.push_back(check("decoded ground states equal oracle isomers",
                           certificates_of(decoded) == certificates_of(*oracle_isomers)));
  }

  if (options.run_pipeline && oracle_isomers) {
    SamplerConfig config = options.pipeline;
    config.target_isomers = oracle_isomers->size();
    IsomerRegistry registry;
    const auto report = run_pipeline(problem, config, registry);
    const bool same = certificates_of(registry) == certificates_of(*oracle_isomers);
    checks.push_back(check("pipeline finds every oracle isomer", same,
                           std::to_string(registry.size()) + " isomers in " +
                               std::to_string(report.iterations_used) + " iterations"));
  }
  return checks;
}

bool print_checks(const std::vector<CheckResult>& checks, std::ostream& out) {
  bool all = true;
  for (const auto& c : checks) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << '\n';
    all = all && c.passed;
  }
  return all;
}

}  // namespace isomer
