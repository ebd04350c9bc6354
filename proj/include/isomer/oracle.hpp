#pragma once

#include <vector>

#include "isomer/graph.hpp"
#include "isomer/qubo.hpp"

namespace isomer::oracle {

inline constexpr std::size_t kMaxEnumeratedVariables = 24;
inline constexpr int kMaxEnumeratedCarbons = 12;

/// Exact argmin set of y^T Q y by full Gray-code enumeration, in
/// lexicographic order. Throws std::invalid_argument above 24 variables.
std::vector<BitString> brute_force_ground_states(const QuboProblem& problem);

/// Every unlabeled tree on `carbons` nodes with max degree 4, generated once
/// each from centroid-rooted canonical forms. 1 <= carbons <= 12.
std::vector<MolecularTree> enumerate_free_trees(int carbons);

/// enumerate_free_trees deduplicated into a registry (iteration 0, count 1).
IsomerRegistry brute_force_isomers(int carbons);

/// Every block one-hot and interior degrees summing to 2(n-2).
bool constraint_check(std::span<const std::uint8_t> y, int carbons);

}  // namespace isomer::oracle
