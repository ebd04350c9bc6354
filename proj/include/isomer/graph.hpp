#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isomer/qubo.hpp"

namespace isomer {

/// Raised by decode_onehot when a block has zero or several set bits.
class OneHotViolation : public std::runtime_error {
 public:
  explicit OneHotViolation(int block);
  int block() const { return block_; }

 private:
  int block_;
};

/// Raised by sequence_to_tree when no earlier carbon has spare valence.
class NonConstructible : public std::runtime_error {
 public:
  explicit NonConstructible(int position);
  /// 1-based position in the degree sequence of the carbon that could not attach.
  int position() const { return position_; }

 private:
  int position_;
};

/// Ordered carbon degrees (x_1, ..., x_n) with x_1 = x_n = 1.
struct DegreeSequence {
  std::vector<int> degrees;

  int carbons() const { return static_cast<int>(degrees.size()); }
  /// True when endpoints are 1, every degree is in 1..4 and the sum is 2(n-1).
  bool valid() const;
  /// Sorted copy of all degrees, endpoints included.
  std::vector<int> multiset() const;

  friend auto operator<=>(const DegreeSequence&, const DegreeSequence&) = default;
};

/// Carbon skeleton; nodes are 0-based. Hydrogens are implicit (4 - degree each).
struct MolecularTree {
  int carbons = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree;

  /// Builds the degree cache and normalizes edges (i < j, sorted).
  static MolecularTree from_edges(int carbons, std::vector<std::pair<int, int>> edges);

  /// Connected, acyclic, max degree 4.
  bool valid() const;
  int hydrogens() const;
  std::vector<std::vector<int>> adjacency() const;
};

struct CanonicalForm {
  std::string certificate;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

DegreeSequence decode_onehot(std::span<const std::uint8_t> y, int carbons);

/// Inverse of decode_onehot for the interior carbons of a valid sequence.
BitString encode_onehot(const DegreeSequence& sequence);

/// Non-throwing last-fit construction. On failure `tree` is empty and
/// `failed_position` holds the 1-based position that could not attach.
struct TreeBuild {
  std::optional<MolecularTree> tree;
  int failed_position = 0;
};
TreeBuild try_sequence_to_tree(const DegreeSequence& sequence);

/// Each carbon after the first attaches to the highest-indexed earlier carbon
/// that still has spare valence. Throws NonConstructible when none has.
MolecularTree sequence_to_tree(const DegreeSequence& sequence);

/// Center-rooted AHU certificate; equal iff the trees are isomorphic.
CanonicalForm canonicalize(const MolecularTree& tree);

/// Enumerates every non-isomorphic tree realizing the degree multiset, by
/// backtracking over distinct orderings of the interior degrees and building
/// each with last-fit. `degree_multiset` must contain the two endpoint 1s.
std::vector<MolecularTree> realize_multiset(std::vector<int> degree_multiset);

struct IsomerEntry {
  MolecularTree representative;
  std::vector<int> degree_multiset;
  std::size_t count = 0;
  int first_seen_iteration = 0;
};

/// Isomers keyed by certificate.
class IsomerRegistry {
 public:
  /// Returns true when the isomer had not been seen before.
  bool add(const MolecularTree& tree, int iteration);
  /// Same, with a certificate the caller already computed for `tree`.
  bool add(const CanonicalForm& form, const MolecularTree& tree, int iteration);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool contains(const CanonicalForm& form) const { return entries_.contains(form.certificate); }
  const IsomerEntry* find(const CanonicalForm& form) const;

  const std::map<std::string, IsomerEntry>& entries() const { return entries_; }
  std::vector<std::string> certificates() const;

 private:
  std::map<std::string, IsomerEntry> entries_;
};

/// JSON lines, one object per isomer in certificate order:
/// {certificate, degree_multiset, edges, count, first_seen_iteration}.
std::string isomer_dump(const IsomerRegistry& registry);

}  // namespace isomer
