#include "isomer/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace isomer {

namespace {

// Symmetric dense copy of Q with the diagonal split out, for O(1) flip deltas.
struct DenseQubo {
  std::size_t m = 0;
  std::vector<double> diag;
  std::vector<double> couplings;  // m*m, zero diagonal

  explicit DenseQubo(const QuboProblem& problem)
      : m(problem.num_variables()), diag(m), couplings(m * m, 0.0) {
    for (std::size_t i = 0; i < m; ++i) {
      diag[i] = problem.q(i, i);
      for (std::size_t j = i + 1; j < m; ++j) {
        couplings[i * m + j] = problem.q(i, j);
        couplings[j * m + i] = problem.q(i, j);
      }
    }
  }
  const double* row(std::size_t i) const { return couplings.data() + i * m; }
};

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// exp(-44.4) is below the 2^-64 resolution of the generator.
constexpr double kRejectThreshold = 44.36142;

class Chain {
 public:
  Chain(const DenseQubo& qubo, BitString start) : qubo_(qubo), x_(std::move(start)) {
    field_ = qubo_.diag;
    for (std::size_t i = 0; i < qubo_.m; ++i) {
      if (!x_[i]) continue;
      const double* row = qubo_.row(i);
      for (std::size_t j = 0; j < qubo_.m; ++j) field_[j] += row[j];
    }
  }

  void sweep(double beta, MoveSet moves, std::mt19937_64& rng) {
    const double threshold = kRejectThreshold / beta;
    for (std::size_t i = 0; i < qubo_.m; ++i) {
      const double delta = x_[i] ? -field_[i] : field_[i];
      if (accept(delta, beta, threshold, rng)) flip(i);
    }
    if (moves == MoveSet::kBlockSwap) block_swaps(beta, threshold, rng);
  }

  BitString take() && { return std::move(x_); }

 private:
  static bool accept(double delta, double beta, double threshold, std::mt19937_64& rng) {
    if (delta <= 0.0) return true;
    if (delta >= threshold) return false;
    return uniform01(rng) < std::exp(-beta * delta);
  }

  void flip(std::size_t i) {
    const double sign = x_[i] ? -1.0 : 1.0;
    x_[i] ^= 1;
    const double* row = qubo_.row(i);
    for (std::size_t j = 0; j < qubo_.m; ++j) field_[j] += sign * row[j];
  }

  // Moves the single set bit of a one-hot block to another position.
  void block_swaps(double beta, double threshold, std::mt19937_64& rng) {
    for (std::size_t base = 0; base + kMaxDegree <= qubo_.m; base += kMaxDegree) {
      int set = 0;
      std::size_t from = base;
      for (std::size_t k = base; k < base + kMaxDegree; ++k) {
        if (x_[k]) {
          ++set;
          from = k;
        }
      }
      if (set != 1) continue;
      std::size_t to = base + rng() % (kMaxDegree - 1);
      if (to >= from) ++to;
      const double delta = -field_[from] + field_[to] - qubo_.row(from)[to];
      if (accept(delta, beta, threshold, rng)) {
        flip(from);
        flip(to);
      }
    }
  }

  const DenseQubo& qubo_;
  BitString x_;
  std::vector<double> field_;
};

BitString random_bits(std::size_t m, std::mt19937_64& rng) {
  BitString bits(m);
  std::uint64_t pool = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i % 64 == 0) pool = rng();
    bits[i] = static_cast<std::uint8_t>(pool & 1u);
    pool >>= 1;
  }
  return bits;
}

BitString anneal_dense(const DenseQubo& qubo, const AnnealSchedule& schedule,
                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Chain chain(qubo, random_bits(qubo.m, rng));
  for (int k = 0; k < schedule.sweeps; ++k) {
    chain.sweep(schedule.beta_for_sweep(k), schedule.moves, rng);
  }
  return std::move(chain).take();
}

BitString refine_dense(const DenseQubo& qubo, BitString start, double s_star, int pause_sweeps,
                       const AnnealSchedule& schedule, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Chain chain(qubo, std::move(start));
  const double pause_beta = schedule.beta_at(s_star);
  for (int k = 0; k < pause_sweeps; ++k) chain.sweep(pause_beta, schedule.moves, rng);
  const int tail = static_cast<int>(std::lround((1.0 - s_star) * schedule.sweeps));
  for (int k = 0; k < tail; ++k) {
    const double t = tail > 1 ? static_cast<double>(k) / (tail - 1) : 1.0;
    chain.sweep(schedule.beta_at(s_star + (1.0 - s_star) * t), schedule.moves, rng);
  }
  return std::move(chain).take();
}

void check_s_star(double s_star) {
  if (!(s_star > 0.0 && s_star < 1.0)) {
    throw std::invalid_argument("s_star must lie strictly between 0 and 1");
  }
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void AnnealSchedule::validate() const {
  if (sweeps < 1) throw std::invalid_argument("schedule needs at least one sweep");
  if (!(beta_start > 0.0) || !(beta_end >= beta_start) || !std::isfinite(beta_end)) {
    throw std::invalid_argument("schedule needs 0 < beta_start <= beta_end");
  }
}

double AnnealSchedule::beta_at(double fraction) const {
  const double t = std::clamp(fraction, 0.0, 1.0);
  if (interpolation == Interpolation::kLinear) return beta_start + (beta_end - beta_start) * t;
  return beta_start * std::pow(beta_end / beta_start, t);
}

double AnnealSchedule::beta_for_sweep(int sweep) const {
  return beta_at(sweeps > 1 ? static_cast<double>(sweep) / (sweeps - 1) : 1.0);
}

AnnealSchedule default_schedule(std::size_t num_variables) {
  AnnealSchedule schedule;
  schedule.sweeps = static_cast<int>(std::max<std::size_t>(1, 50 * num_variables));
  return schedule;
}

void SamplerConfig::validate() const {
  if (batch_size < 1) throw std::invalid_argument("batch_size must be at least 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be non-negative");
  }
  check_s_star(s_star);
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (schedule) schedule->validate();
}

AnnealSchedule SamplerConfig::resolved_schedule(std::size_t num_variables) const {
  return schedule ? *schedule : default_schedule(num_variables);
}

int SamplerConfig::resolved_pause_sweeps(std::size_t num_variables) const {
  return pause_sweeps >= 0 ? pause_sweeps : static_cast<int>(10 * num_variables);
}

double ground_energy(const QuboProblem& problem) { return -problem.offset; }

SampleRecord simulated_anneal(const QuboProblem& problem, const AnnealSchedule& schedule,
                              std::uint64_t seed) {
  schedule.validate();
  const DenseQubo qubo(problem);
  SampleRecord record;
  record.bits = anneal_dense(qubo, schedule, seed);
  record.energy_original = matrix_eval(problem, record.bits);
  record.energy_sampling = record.energy_original;
  return record;
}

SampleRecord reverse_refine(const QuboProblem& problem, std::span<const std::uint8_t> start,
                            double s_star, int pause_sweeps, const AnnealSchedule& schedule,
                            std::uint64_t seed) {
  schedule.validate();
  check_s_star(s_star);
  if (start.size() != problem.num_variables()) {
    throw std::invalid_argument("reverse_refine: start length mismatch");
  }
  if (pause_sweeps < 0) throw std::invalid_argument("reverse_refine: negative pause");
  const DenseQubo qubo(problem);
  SampleRecord record;
  record.bits = refine_dense(qubo, BitString(start.begin(), start.end()), s_star, pause_sweeps,
                             schedule, seed);
  record.energy_original = matrix_eval(problem, record.bits);
  record.energy_sampling = record.energy_original;
  return record;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ (stream * 0xd1b54a32d192ed03ULL));
  return splitmix64(h ^ index);
}

std::vector<SampleRecord> sample_batch(const QuboProblem& original, const QuboProblem& sampling,
                                       const SamplerConfig& config, int iteration) {
  config.validate();
  if (original.num_variables() != sampling.num_variables()) {
    throw std::invalid_argument("sample_batch: problem size mismatch");
  }
  const std::size_t m = sampling.num_variables();
  const AnnealSchedule schedule = config.resolved_schedule(m);
  schedule.validate();
  const int pause = config.resolved_pause_sweeps(m);
  const DenseQubo qubo(sampling);
  const auto stream = static_cast<std::uint64_t>(iteration);

  std::vector<SampleRecord> records(config.batch_size);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      SampleRecord& rec = records[c];
      rec.bits = anneal_dense(qubo, schedule, derive_seed(config.rng_seed, stream, 2 * c));
      if (config.reverse_enabled) {
        rec.bits = refine_dense(qubo, std::move(rec.bits), config.s_star, pause, schedule,
                                derive_seed(config.rng_seed, stream, 2 * c + 1));
      }
      rec.energy_original = matrix_eval(original, rec.bits);
      rec.energy_sampling = matrix_eval(sampling, rec.bits);
      rec.iteration = iteration;
      rec.chain_id = static_cast<std::int64_t>(c);
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(config.threads), records.size());
  if (workers <= 1) {
    run_range(0, records.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (records.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(records.size(), begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
  }
  return records;
}

std::optional<BitString> most_frequent_ground_state(const std::vector<SampleRecord>& samples,
                                                    double ground) {
  std::map<BitString, std::size_t> counts;
  for (const auto& rec : samples) {
    if (std::abs(rec.energy_original - ground) <= kEnergyTolerance) ++counts[rec.bits];
  }
  std::optional<BitString> best;
  std::size_t best_count = 0;
  // std::map iterates in lexicographic order, so strict > keeps the smallest on ties.
  for (const auto& [bits, count] : counts) {
    if (count > best_count) {
      best = bits;
      best_count = count;
    }
  }
  return best;
}

PipelineReport run_pipeline(const QuboProblem& problem, const SamplerConfig& config,
                            IsomerRegistry& registry) {
  config.validate();
  if (problem.carbons < 3 ||
      problem.num_variables() != static_cast<std::size_t>(variable_count(problem.carbons))) {
    throw std::invalid_argument("run_pipeline: problem is not an isomer QUBO");
  }
  const double ground = ground_energy(problem);
  const int n = problem.carbons;

  PipelineReport report;
  report.carbons = n;
  report.config = config;

  // Decoding is memoized per bitstring; an empty certificate marks a
  // non-constructible ordering.
  std::map<BitString, std::vector<std::pair<std::string, MolecularTree>>> decoded;
  auto decode = [&](const BitString& bits)
      -> const std::vector<std::pair<std::string, MolecularTree>>& {
    auto it = decoded.find(bits);
    if (it != decoded.end()) return it->second;
    std::vector<std::pair<std::string, MolecularTree>> trees;
    const DegreeSequence sequence = decode_onehot(bits, n);
    if (config.multiset_expansion) {
      for (auto& tree : realize_multiset(sequence.multiset())) {
        auto form = canonicalize(tree);
        trees.emplace_back(std::move(form.certificate), std::move(tree));
      }
    } else if (auto build = try_sequence_to_tree(sequence); build.tree) {
      auto form = canonicalize(*build.tree);
      trees.emplace_back(std::move(form.certificate), std::move(*build.tree));
    }
    return decoded.emplace(bits, std::move(trees)).first->second;
  };

  QuboProblem sampling = problem;
  for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
    auto batch = sample_batch(problem, sampling, config, iteration);

    IterationStats stats;
    for (const auto& rec : batch) {
      if (std::abs(rec.energy_original - ground) > kEnergyTolerance) continue;
      ++stats.ground_hits;
      const auto& trees = decode(rec.bits);
      if (trees.empty()) {
        ++stats.nonconstructible_skips;
        continue;
      }
      for (const auto& [cert, tree] : trees) {
        if (registry.add(CanonicalForm{cert}, tree, iteration)) ++stats.new_isomers;
        ++stats.isomer_frequencies[cert];
      }
    }
    stats.max_frequency_state = most_frequent_ground_state(batch, ground);
    stats.unique_isomers_cumulative = registry.size();
    report.iterations_used = iteration;

    if (config.keep_samples) {
      std::ranges::move(batch, std::back_inserter(report.samples));
    }
    report.per_iteration.push_back(std::move(stats));

    if (config.target_isomers > 0 && registry.size() >= config.target_isomers) {
      report.reached_target = true;
      break;
    }
    const auto& psi = report.per_iteration.back().max_frequency_state;
    if (config.perturb_enabled && config.lambda > 0.0 && psi) {
      sampling = perturb(config.reset_perturbation ? problem : sampling, *psi, config.lambda);
    }
  }
  report.isomers_found = registry.size();
  return report;
}

std::string to_string(Interpolation interpolation) {
  return interpolation == Interpolation::kLinear ? "linear" : "geometric";
}

std::string to_string(MoveSet moves) {
  return moves == MoveSet::kSingleFlip ? "single_flip" : "block_swap";
}

}  // namespace isomer
