#include "isomer/analytics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "isomer/oracle.hpp"

namespace isomer::analytics {

namespace {

std::string format_double(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buffer, end);
}

}  // namespace

int hamming_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != 0) != (b[i] != 0);
  return d;
}

HammingReport hamming_report(const std::vector<BitString>& isomers, int carbons) {
  for (const auto& y : isomers) {
    if (!oracle::constraint_check(y, carbons)) {
      throw std::invalid_argument("hamming_report: infeasible bitstring");
    }
  }
  HammingReport report;
  if (isomers.size() < 2) return report;
  report.per_isomer_min.assign(isomers.size(), kMaxDegree * carbons);
  for (std::size_t a = 0; a < isomers.size(); ++a) {
    for (std::size_t b = a + 1; b < isomers.size(); ++b) {
      const int d = hamming_distance(isomers[a], isomers[b]);
      if (d == 0) throw std::invalid_argument("hamming_report: duplicate bitstring");
      report.pairs.push_back({a, b, d});
      report.pairwise.push_back(d);
      report.per_isomer_min[a] = std::min(report.per_isomer_min[a], d);
      report.per_isomer_min[b] = std::min(report.per_isomer_min[b], d);
    }
  }
  std::ranges::sort(report.pairwise);
  return report;
}

std::vector<Representative> representative_encodings(int carbons) {
  if (carbons < 3) throw std::invalid_argument("representative_encodings: need 3+ carbons");
  const int interior = carbons - 2;
  DegreeSequence sequence;
  sequence.degrees.assign(static_cast<std::size_t>(carbons), 1);

  std::map<std::string, Representative> found;
  // Odometer over interior degrees in lexicographic order; the first ordering
  // that reaches a certificate is its smallest.
  std::vector<int> digits(static_cast<std::size_t>(interior), 1);
  while (true) {
    if (std::accumulate(digits.begin(), digits.end(), 0) == interior_degree_target(carbons)) {
      std::ranges::copy(digits, sequence.degrees.begin() + 1);
      if (auto build = try_sequence_to_tree(sequence); build.tree) {
        auto cert = canonicalize(*build.tree).certificate;
        if (!found.contains(cert)) {
          found.emplace(cert, Representative{cert, sequence, encode_onehot(sequence)});
        }
      }
    }
    int pos = interior - 1;
    while (pos >= 0 && digits[pos] == kMaxDegree) digits[pos--] = 1;
    if (pos < 0) break;
    ++digits[pos];
  }

  std::vector<Representative> out;
  out.reserve(found.size());
  for (auto& [cert, rep] : found) out.push_back(std::move(rep));
  return out;
}

std::size_t EnergyHistogram::total() const {
  std::size_t sum = 0;
  for (const auto& [energy, count] : bins) sum += count;
  return sum;
}

EnergyHistogram energy_histogram(const std::vector<SampleRecord>& samples, double offset) {
  EnergyHistogram histogram;
  for (const auto& rec : samples) {
    // Divide by the exact 1e6 so integral energies stay integral.
    double key = std::round((rec.energy_original + offset) * 1e6) / 1e6;
    if (key == 0.0) key = 0.0;  // fold -0
    ++histogram.bins[key];
  }
  return histogram;
}

double mean(const std::vector<int>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double median(std::vector<int> values) {
  if (values.empty()) return 0.0;
  std::ranges::sort(values);
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

std::vector<CoverageStats> coverage_experiment(int carbons, const std::vector<CoverageMethod>& methods,
                                               int repetitions, const PenaltyConfig& penalties) {
  if (repetitions < 0) throw std::invalid_argument("coverage_experiment: negative repetitions");
  const std::size_t target = oracle::enumerate_free_trees(carbons).size();
  const QuboProblem problem = build_qubo(carbons, penalties);

  std::vector<CoverageStats> all;
  for (const auto& method : methods) {
    CoverageStats stats;
    stats.method = method.name;
    for (int r = 0; r < repetitions; ++r) {
      SamplerConfig config = method.config;
      config.rng_seed = derive_seed(method.config.rng_seed, 0xC0FE, static_cast<std::uint64_t>(r));
      config.target_isomers = target;
      config.keep_samples = false;
      IsomerRegistry registry;
      const auto report = run_pipeline(problem, config, registry);
      stats.per_run_iterations.push_back(report.iterations_used);
      stats.censored.push_back(!report.reached_target);
    }
    stats.mean = mean(stats.per_run_iterations);
    stats.median = median(stats.per_run_iterations);
    all.push_back(std::move(stats));
  }
  return all;
}

std::vector<CoverageMethod> standard_methods(const SamplerConfig& base) {
  std::vector<CoverageMethod> methods;
  for (bool reverse : {false, true}) {
    for (bool perturb : {false, true}) {
      SamplerConfig config = base;
      config.reverse_enabled = reverse;
      config.perturb_enabled = perturb;
      std::string name = reverse ? "RA" : "FA";
      if (perturb) name += "+QP";
      methods.push_back({std::move(name), config});
    }
  }
  return methods;
}

std::string hamming_csv(const HammingReport& report, const std::vector<std::string>& labels) {
  std::ostringstream out;
  out << "isomer_a,isomer_b,distance\n";
  for (const auto& p : report.pairs) {
    const std::string a = p.a < labels.size() ? labels[p.a] : std::to_string(p.a);
    const std::string b = p.b < labels.size() ? labels[p.b] : std::to_string(p.b);
    out << a << ',' << b << ',' << p.distance << '\n';
  }
  return out.str();
}

std::string histogram_csv(const EnergyHistogram& histogram) {
  std::ostringstream out;
  out << "energy,count\n";
  for (const auto& [energy, count] : histogram.bins) {
    out << format_double(energy) << ',' << count << '\n';
  }
  return out.str();
}

std::string coverage_csv(const std::vector<CoverageStats>& stats) {
  std::ostringstream out;
  out << "method,repetition,iterations\n";
  for (const auto& s : stats) {
    for (std::size_t r = 0; r < s.per_run_iterations.size(); ++r) {
      out << s.method << ',' << r << ',' << s.per_run_iterations[r] << '\n';
    }
  }
  return out.str();
}

std::string frequency_csv(const PipelineReport& report) {
  std::ostringstream out;
  out << "iteration,certificate,count\n";
  for (std::size_t i = 0; i < report.per_iteration.size(); ++i) {
    for (const auto& [cert, count] : report.per_iteration[i].isomer_frequencies) {
      out << i + 1 << ',' << cert << ',' << count << '\n';
    }
  }
  return out.str();
}

std::string samples_csv(const std::vector<SampleRecord>& samples) {
  std::ostringstream out;
  out << "bits,energy_original,iteration,chain\n";
  for (const auto& rec : samples) {
    for (auto b : rec.bits) out << (b ? '1' : '0');
    out << ',' << format_double(rec.energy_original) << ',' << rec.iteration << ','
        << rec.chain_id << '\n';
  }
  return out.str();
}

std::vector<SampleRecord> parse_samples_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "bits,energy_original,iteration,chain") {
    throw std::runtime_error("samples csv: missing header");
  }
  std::vector<SampleRecord> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    for (std::string field; std::getline(row, field, ',');) fields.push_back(field);
    if (fields.size() != 4) {
      throw std::runtime_error("samples csv: line " + std::to_string(line_no) + " needs 4 fields");
    }
    SampleRecord rec;
    for (char c : fields[0]) {
      if (c != '0' && c != '1') {
        throw std::runtime_error("samples csv: bad bit on line " + std::to_string(line_no));
      }
      rec.bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    try {
      rec.energy_original = std::stod(fields[1]);
      rec.energy_sampling = rec.energy_original;
      rec.iteration = std::stoi(fields[2]);
      rec.chain_id = std::stoll(fields[3]);
    } catch (const std::exception&) {
      throw std::runtime_error("samples csv: bad number on line " + std::to_string(line_no));
    }
    samples.push_back(std::move(rec));
  }
  return samples;
}

}  // namespace isomer::analytics
