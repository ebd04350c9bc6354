#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isomer/graph.hpp"
#include "isomer/qubo.hpp"

namespace isomer {

enum class Interpolation { kLinear, kGeometric };

enum class MoveSet {
  kSingleFlip,  // uniform single-bit Metropolis sweep
  kBlockSwap,   // single-bit sweep plus one in-block swap proposal per block
};

struct AnnealSchedule {
  int sweeps = 1000;
  double beta_start = 0.1;
  double beta_end = 10.0;
  Interpolation interpolation = Interpolation::kGeometric;
  MoveSet moves = MoveSet::kSingleFlip;

  void validate() const;
  /// Inverse temperature at fraction t in [0, 1] of the schedule.
  double beta_at(double fraction) const;
  /// Inverse temperature used for sweep k in [0, sweeps).
  double beta_for_sweep(int sweep) const;
};

/// Geometric 0.1 -> 10 with 50 sweeps per variable.
AnnealSchedule default_schedule(std::size_t num_variables);

struct SamplerConfig {
  std::size_t batch_size = 10000;
  double lambda = 5e-6;
  bool perturb_enabled = false;
  bool reverse_enabled = false;
  double s_star = 0.5;
  int pause_sweeps = -1;  // -1 selects 10 sweeps per variable
  std::uint64_t rng_seed = 1;
  int max_iterations = 20;
  std::size_t target_isomers = 0;  // 0 runs until max_iterations
  bool reset_perturbation = false;  // rebuild Q' from Q before each shift
  bool multiset_expansion = false;
  bool keep_samples = false;
  int threads = 1;
  std::optional<AnnealSchedule> schedule;  // default_schedule(m) when empty

  void validate() const;
  AnnealSchedule resolved_schedule(std::size_t num_variables) const;
  int resolved_pause_sweeps(std::size_t num_variables) const;
};

struct SampleRecord {
  BitString bits;
  double energy_original = 0.0;
  double energy_sampling = 0.0;
  int iteration = 0;
  std::int64_t chain_id = 0;
};

/// Lowest objective value of the isomer QUBO, attained by every feasible
/// bitstring: -offset.
double ground_energy(const QuboProblem& problem);

/// Absolute tolerance for "same energy" comparisons.
inline constexpr double kEnergyTolerance = 1e-6;

/// Single-spin-flip Metropolis from a uniformly random start with beta swept
/// over the schedule. Both record energies are taken under `problem`.
SampleRecord simulated_anneal(const QuboProblem& problem, const AnnealSchedule& schedule,
                              std::uint64_t seed);

/// Starts the chain at `start`, fixes beta at the schedule's value at s_star,
/// holds there for pause_sweeps sweeps, then runs the remaining
/// (1 - s_star) fraction of the cooling schedule.
SampleRecord reverse_refine(const QuboProblem& problem, std::span<const std::uint8_t> start,
                            double s_star, int pause_sweeps, const AnnealSchedule& schedule,
                            std::uint64_t seed);

/// Deterministic per-chain seed stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

/// Draws `count` independent chains of forward annealing (optionally each
/// followed by reverse_refine) on `sampling`. energy_original is evaluated
/// under `original`. Results are ordered by chain id regardless of threads.
std::vector<SampleRecord> sample_batch(const QuboProblem& original, const QuboProblem& sampling,
                                       const SamplerConfig& config, int iteration);

struct IterationStats {
  std::size_t ground_hits = 0;
  std::size_t unique_isomers_cumulative = 0;
  std::size_t nonconstructible_skips = 0;
  std::size_t new_isomers = 0;
  std::optional<BitString> max_frequency_state;
  /// Ground-state samples per isomer certificate in this batch.
  std::map<std::string, std::size_t> isomer_frequencies;
};

struct PipelineReport {
  int carbons = 0;
  SamplerConfig config;
  int iterations_used = 0;
  std::size_t isomers_found = 0;
  bool reached_target = false;
  std::vector<IterationStats> per_iteration;
  std::vector<SampleRecord> samples;  // only when config.keep_samples
};

/// Sample, filter on the original ground energy, decode, register, and
/// optionally perturb with the most frequent feasible state of each batch.
PipelineReport run_pipeline(const QuboProblem& problem, const SamplerConfig& config,
                            IsomerRegistry& registry);

/// Most frequent bitstring among `samples` whose original energy is the
/// ground energy; ties go to the lexicographically smallest.
std::optional<BitString> most_frequent_ground_state(const std::vector<SampleRecord>& samples,
                                                    double ground);

std::string to_string(Interpolation interpolation);
std::string to_string(MoveSet moves);

}  // namespace isomer
