#pragma once

#include <string>

#include "isomer/graph.hpp"
#include "isomer/qubo.hpp"
#include "isomer/sampler.hpp"

namespace isomer {

/// {n, p1, p2, entries: [[i, j, value], ...], offset} with 0-based i <= j and
/// only non-zero entries. Problems not built by build_qubo (n = 0) also carry
/// "num_variables". Doubles round-trip exactly.
std::string problem_to_json(const QuboProblem& problem, int indent = 2);
QuboProblem problem_from_json(const std::string& text);

/// {n, h: [...], couplings: [[i, j, value], ...], offset, scale}
std::string ising_to_json(const IsingProblem& problem, int indent = 2);

/// {n, config, iterations_used, isomers_found, per_iteration: [...]}
std::string report_to_json(const PipelineReport& report, int indent = 2);

std::string bits_to_string(std::span<const std::uint8_t> bits);

}  // namespace isomer
