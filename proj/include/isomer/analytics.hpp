#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "isomer/graph.hpp"
#include "isomer/sampler.hpp"

namespace isomer::analytics {

struct HammingPair {
  std::size_t a = 0;
  std::size_t b = 0;
  int distance = 0;
};

struct HammingReport {
  std::vector<HammingPair> pairs;      // a < b, in index order
  std::vector<int> pairwise;           // sorted distances
  std::vector<int> per_isomer_min;     // empty when fewer than 2 isomers
};

int hamming_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// Pairwise and nearest-neighbour Hamming distances. Every bitstring must be
/// feasible and the list must not contain duplicates.
HammingReport hamming_report(const std::vector<BitString>& isomers, int carbons);

struct Representative {
  std::string certificate;
  DegreeSequence sequence;  // lexicographically smallest constructible ordering
  BitString encoding;
};

/// One encoding per isomer of C_n, in certificate order.
std::vector<Representative> representative_encodings(int carbons);

struct EnergyHistogram {
  std::map<double, std::size_t> bins;  // objective value (energy + offset) -> count
  std::size_t total() const;
};

/// Groups original-Q energies shifted by `offset`, rounded to 1e-6.
EnergyHistogram energy_histogram(const std::vector<SampleRecord>& samples, double offset = 0.0);

struct CoverageMethod {
  std::string name;
  SamplerConfig config;
};

struct CoverageStats {
  std::string method;
  std::vector<int> per_run_iterations;
  std::vector<bool> censored;  // run hit the iteration cap before full coverage
  double mean = 0.0;
  double median = 0.0;
};

double mean(const std::vector<int>& values);
double median(std::vector<int> values);

/// Runs each method `repetitions` times until every oracle isomer is found.
/// Repetition r uses seed derive_seed(config.rng_seed, 0xC0FE, r).
std::vector<CoverageStats> coverage_experiment(int carbons, const std::vector<CoverageMethod>& methods,
                                               int repetitions,
                                               const PenaltyConfig& penalties = {});

/// The four methods compared for heptane: FA, FA+QP, RA, RA+QP.
std::vector<CoverageMethod> standard_methods(const SamplerConfig& base);

std::string hamming_csv(const HammingReport& report, const std::vector<std::string>& labels);
std::string histogram_csv(const EnergyHistogram& histogram);
std::string coverage_csv(const std::vector<CoverageStats>& stats);
/// Per-iteration isomer frequencies: iteration,certificate,count.
std::string frequency_csv(const PipelineReport& report);
/// bits,energy_original,iteration,chain
std::string samples_csv(const std::vector<SampleRecord>& samples);

/// Reads samples_csv output back. Throws std::runtime_error on malformed rows.
std::vector<SampleRecord> parse_samples_csv(const std::string& text);

}  // namespace isomer::analytics
