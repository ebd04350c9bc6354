// isomer-search: build, sample and verify the alkane isomer QUBO.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "isomer/analytics.hpp"
#include "isomer/graph.hpp"
#include "isomer/oracle.hpp"
#include "isomer/qubo.hpp"
#include "isomer/sampler.hpp"
#include "isomer/serialize.hpp"
#include "isomer/verify.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PipelineFlags {
  std::size_t samples = 10000;
  bool perturb = false;
  double lambda = 5e-6;
  bool reverse = false;
  double s_star = 0.5;
  int pause = -1;
  std::uint64_t seed = 1;
  int max_iterations = 20;
  std::optional<std::size_t> target;
  int threads = 1;
  int sweeps = 0;
  bool block_moves = false;
  bool multiset = false;
  bool reset = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--samples", samples, "Samples per iteration")->check(CLI::PositiveNumber);
    cmd->add_flag("--perturb", perturb, "Perturb the QUBO with the most frequent ground state");
    cmd->add_option("--lambda", lambda, "Perturbation strength")->check(CLI::NonNegativeNumber);
    cmd->add_flag("--reverse", reverse, "Refine each forward anneal with a reverse anneal");
    cmd->add_option("--s-star", s_star, "Reverse-anneal re-entry fraction")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--pause", pause, "Sweeps held at s*, default 10 per variable");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--max-iterations", max_iterations, "Iteration cap")->check(CLI::PositiveNumber);
    cmd->add_option("--target", target, "Stop once this many isomers are known, 0 for none (default: oracle count)");
    cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--sweeps", sweeps, "Sweeps per anneal, default 50 per variable");
    cmd->add_flag("--block-moves", block_moves, "Add in-block swap proposals");
    cmd->add_flag("--multiset", multiset, "Register every realization of each degree multiset");
    cmd->add_flag("--reset-perturbation", reset, "Apply only the latest perturbation");
  }

  isomer::SamplerConfig config(int carbons) const {
    isomer::SamplerConfig c;
    c.batch_size = samples;
    c.perturb_enabled = perturb;
    c.lambda = lambda;
    c.reverse_enabled = reverse;
    c.s_star = s_star;
    c.pause_sweeps = pause;
    c.rng_seed = seed;
    c.max_iterations = max_iterations;
    if (target) {
      c.target_isomers = *target;
    } else if (carbons <= isomer::oracle::kMaxEnumeratedCarbons) {
      c.target_isomers = isomer::known_alkane_isomer_count(carbons);
    }
    c.threads = threads;
    c.multiset_expansion = multiset;
    c.reset_perturbation = reset;
    if (sweeps > 0 || block_moves) {
      auto schedule = isomer::default_schedule(static_cast<std::size_t>(isomer::variable_count(carbons)));
      if (sweeps > 0) schedule.sweeps = sweeps;
      if (block_moves) schedule.moves = isomer::MoveSet::kBlockSwap;
      c.schedule = schedule;
    }
    return c;
  }
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string with_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s.push_back('\n');
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alkane structural isomer search on a degenerate QUBO"};
  app.require_subcommand(1);

  int carbons = 0;
  std::string output;

  // build
  auto* build = app.add_subcommand("build", "Emit the isomer QUBO as JSON");
  double p1 = 1.0, p2 = 1.0;
  bool as_ising = false, scale = false;
  double h_bound = 2.0, j_bound = 1.0, j_floor = 1.0;
  build->add_option("--n", carbons, "Carbon count")->required()->check(CLI::Range(3, 1000));
  build->add_option("--p1", p1, "One-hot penalty")->check(CLI::PositiveNumber);
  build->add_option("--p2", p2, "Degree-sum penalty")->check(CLI::PositiveNumber);
  build->add_flag("--ising", as_ising, "Emit the Ising form");
  build->add_flag("--scale", scale, "Scale Ising coefficients into hardware ranges");
  build->add_option("--h-bound", h_bound, "Bound on |h|")->check(CLI::PositiveNumber);
  build->add_option("--j-bound", j_bound, "Upper bound on J")->check(CLI::PositiveNumber);
  build->add_option("--j-floor", j_floor, "Magnitude of the lower bound on J")->check(CLI::PositiveNumber);
  build->add_option("-o,--output", output, "Output file");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "Run the sampling pipeline");
  PipelineFlags flags;
  std::string isomers_path, samples_path;
  enumerate->add_option("--n", carbons, "Carbon count")->required()->check(CLI::Range(3, 1000));
  flags.attach(enumerate);
  enumerate->add_option("-o,--output", output, "Report JSON file (default stdout)");
  enumerate->add_option("--isomers", isomers_path, "Isomer JSON-lines dump (default <output>.isomers.jsonl)");
  enumerate->add_option("--samples-csv", samples_path, "Raw sample CSV dump");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force ground truth");
  std::string oracle_mode = "isomers";
  oracle_cmd->add_option("--n", carbons, "Carbon count")->required()->check(CLI::Range(1, 12));
  oracle_cmd->add_option("--mode", oracle_mode)->check(CLI::IsMember({"isomers", "ground-states"}));
  oracle_cmd->add_option("-o,--output", output, "Output file");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Emit analysis CSVs");
  std::string analyze_mode;
  std::string input;
  int repetitions = 25;
  std::vector<std::string> method_names;
  PipelineFlags analyze_flags;
  analyze->add_option("--mode", analyze_mode)
      ->required()
      ->check(CLI::IsMember({"hamming", "histogram", "coverage", "frequency"}));
  analyze->add_option("--n", carbons, "Carbon count")->check(CLI::Range(3, 1000));
  analyze->add_option("inputs", input, "Sample CSV for histogram mode");
  analyze->add_option("--repetitions", repetitions, "Coverage repetitions")->check(CLI::NonNegativeNumber);
  analyze->add_option("--methods", method_names, "Coverage methods (FA, FA+QP, RA, RA+QP)")->delimiter(',');
  analyze_flags.attach(analyze);
  analyze->add_option("-o,--output", output, "Output file");

  // verify
  auto* verify = app.add_subcommand("verify", "Cross-check oracle, pipeline and identities");
  PipelineFlags verify_flags;
  bool skip_pipeline = false;
  verify->add_option("--n", carbons, "Carbon count")->required()->check(CLI::Range(3, 1000));
  verify->add_flag("--no-pipeline", skip_pipeline, "Skip the sampling check");
  verify_flags.attach(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*build) {
      const auto problem = isomer::build_qubo(carbons, {p1, p2});
      if (as_ising || scale) {
        auto ising = isomer::qubo_to_ising(problem);
        if (scale) ising = isomer::scale_ising(ising, h_bound, j_bound, j_floor);
        write_output(output, with_newline(isomer::ising_to_json(ising)));
      } else {
        write_output(output, with_newline(isomer::problem_to_json(problem)));
      }
      return 0;
    }

    if (*enumerate) {
      const auto problem = isomer::build_qubo(carbons);
      auto config = flags.config(carbons);
      config.keep_samples = !samples_path.empty();
      isomer::IsomerRegistry registry;
      const auto report = isomer::run_pipeline(problem, config, registry);
      write_output(output, with_newline(isomer::report_to_json(report)));
      if (isomers_path.empty() && !output.empty() && output != "-") {
        isomers_path = output + ".isomers.jsonl";
      }
      if (!isomers_path.empty()) write_output(isomers_path, isomer::isomer_dump(registry));
      if (!samples_path.empty()) write_output(samples_path, isomer::analytics::samples_csv(report.samples));
      std::cerr << "found " << report.isomers_found << " isomers in " << report.iterations_used
                << " iteration(s)\n";
      return 0;
    }

    if (*oracle_cmd) {
      if (oracle_mode == "isomers") {
        write_output(output, isomer::isomer_dump(isomer::oracle::brute_force_isomers(carbons)));
      } else {
        if (carbons < 3) throw UsageError("ground-states mode needs --n >= 3");
        std::ostringstream out;
        for (const auto& y : isomer::oracle::brute_force_ground_states(isomer::build_qubo(carbons))) {
          const auto seq = isomer::decode_onehot(y, carbons);
          out << "{\"bits\":\"" << isomer::bits_to_string(y) << "\",\"degrees\":[";
          for (std::size_t i = 0; i < seq.degrees.size(); ++i) out << (i ? "," : "") << seq.degrees[i];
          out << "]}\n";
        }
        write_output(output, out.str());
      }
      return 0;
    }

    if (*analyze) {
      namespace an = isomer::analytics;
      if (analyze_mode == "histogram" && !input.empty()) {
        if (carbons < 3) throw UsageError("histogram needs --n to add the objective offset");
        const auto samples = an::parse_samples_csv(read_file(input));
        const double offset = isomer::build_qubo(carbons).offset;
        write_output(output, an::histogram_csv(an::energy_histogram(samples, offset)));
        return 0;
      }
      if (carbons < 3) throw UsageError("--n is required for this mode");
      if (analyze_mode == "hamming") {
        const auto reps = an::representative_encodings(carbons);
        std::vector<isomer::BitString> encodings;
        std::vector<std::string> labels;
        for (const auto& r : reps) {
          encodings.push_back(r.encoding);
          labels.push_back(r.certificate);
        }
        write_output(output, an::hamming_csv(an::hamming_report(encodings, carbons), labels));
      } else if (analyze_mode == "histogram") {
        const auto problem = isomer::build_qubo(carbons);
        auto config = analyze_flags.config(carbons);
        const auto batch = isomer::sample_batch(problem, problem, config, 1);
        write_output(output, an::histogram_csv(an::energy_histogram(batch, problem.offset)));
      } else if (analyze_mode == "coverage") {
        auto base = analyze_flags.config(carbons);
        auto methods = an::standard_methods(base);
        if (!method_names.empty()) {
          std::vector<an::CoverageMethod> chosen;
          for (const auto& name : method_names) {
            auto it = std::ranges::find(methods, name, &an::CoverageMethod::name);
            if (it == methods.end()) throw UsageError("unknown method " + name);
            chosen.push_back(*it);
          }
          methods = std::move(chosen);
        }
        const auto stats = an::coverage_experiment(carbons, methods, repetitions);
        write_output(output, an::coverage_csv(stats));
        for (const auto& s : stats) {
          std::cerr << s.method << ": mean " << s.mean << ", median " << s.median << '\n';
        }
      } else {
        const auto problem = isomer::build_qubo(carbons);
        auto config = analyze_flags.config(carbons);
        config.target_isomers = analyze_flags.target.value_or(0);  // full iteration budget by default
        isomer::IsomerRegistry registry;
        write_output(output, an::frequency_csv(isomer::run_pipeline(problem, config, registry)));
      }
      return 0;
    }

    if (*verify) {
      isomer::VerifyOptions options;
      options.seed = verify_flags.seed;
      options.run_pipeline = !skip_pipeline;
      options.pipeline = verify_flags.config(carbons);
      const auto checks = isomer::run_verification(carbons, options);
      return isomer::print_checks(checks, std::cout) ? 0 : kExitVerifyFailed;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
