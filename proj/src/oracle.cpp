#include "isomer/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace isomer::oracle {

namespace {

// A rooted subtree is identified by (size, index into the catalog of that
// size). Children are kept in non-increasing key order, which makes each
// multiset of children appear exactly once.
struct Key {
  int size = 0;
  int index = 0;
  friend auto operator<=>(const Key&, const Key&) = default;
};

using Children = std::vector<Key>;

// Rooted trees whose every node has at most `kMaxDegree - 1` children.
class RootedCatalog {
 public:
  explicit RootedCatalog(int max_size) : by_size_(static_cast<std::size_t>(max_size) + 1) {
    if (max_size >= 1) by_size_[1].push_back({});
    for (int s = 2; s <= max_size; ++s) {
      Children current;
      choose(s - 1, kMaxDegree - 1, Key{s - 1, count(s - 1) - 1}, s - 1, current,
             [&](const Children& kids) { by_size_[s].push_back(kids); });
    }
  }

  int count(int size) const { return static_cast<int>(by_size_[size].size()); }
  const Children& children(Key key) const { return by_size_[key.size][key.index]; }

  // Enumerates non-increasing child key lists with total size `remaining`,
  // at most `parts` entries, every key <= `upper` and size <= `max_child`.
  void choose(int remaining, int parts, Key upper, int max_child, Children& current,
              const std::function<void(const Children&)>& emit) const {
    if (remaining == 0) {
      emit(current);
      return;
    }
    if (parts == 0) return;
    for (int size = std::min({remaining, max_child, upper.size}); size >= 1; --size) {
      const int top = size == upper.size ? upper.index : count(size) - 1;
      for (int index = top; index >= 0; --index) {
        current.push_back(Key{size, index});
        choose(remaining - size, parts - 1, Key{size, index}, max_child, current, emit);
        current.pop_back();
      }
    }
  }

 private:
  std::vector<std::vector<Children>> by_size_;
};

int materialize(const RootedCatalog& catalog, const Children& kids, int& next_id,
                std::vector<std::pair<int, int>>& edges) {
  const int id = next_id++;
  for (const Key& key : kids) {
    const int child = materialize(catalog, catalog.children(key), next_id, edges);
    edges.emplace_back(id, child);
  }
  return id;
}

}  // namespace

std::vector<BitString> brute_force_ground_states(const QuboProblem& problem) {
  const std::size_t m = problem.num_variables();
  if (m > kMaxEnumeratedVariables) {
    throw std::invalid_argument("brute_force_ground_states: " + std::to_string(m) +
                                " variables exceeds the enumeration cap");
  }
  // Symmetric couplings for the incremental local-field update.
  std::vector<double> w(m * m, 0.0);
  std::vector<double> field(m);
  for (std::size_t i = 0; i < m; ++i) {
    field[i] = problem.q(i, i);
    for (std::size_t j = i + 1; j < m; ++j) w[i * m + j] = w[j * m + i] = problem.q(i, j);
  }

  BitString x(m, 0);
  double energy = 0.0;
  double best = 0.0;
  double scale = 1.0;
  for (double v : problem.q.packed()) scale = std::max(scale, std::abs(v));
  const double slack = 1e-9 * scale * static_cast<double>(m * m + 1);
  std::vector<BitString> candidates{x};

  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t k = 1; k < total; ++k) {
    const auto i = static_cast<std::size_t>(std::countr_zero(k));
    const double sign = x[i] ? -1.0 : 1.0;
    energy += sign * field[i];
    x[i] ^= 1;
    for (std::size_t j = 0; j < m; ++j) field[j] += sign * w[i * m + j];

    if (energy < best - slack) {
      best = energy;
      candidates.clear();
    }
    if (energy <= best + slack) {
      best = std::min(best, energy);
      candidates.push_back(x);
    }
  }

  // Exact re-evaluation removes anything the running sum let through.
  double exact_best = matrix_eval(problem, candidates.front());
  for (const auto& c : candidates) exact_best = std::min(exact_best, matrix_eval(problem, c));
  const double tolerance = 1e-9 * std::max(1.0, std::abs(exact_best));
  std::vector<BitString> ground;
  for (auto& c : candidates) {
    if (std::abs(matrix_eval(problem, c) - exact_best) <= tolerance) ground.push_back(std::move(c));
  }
  std::ranges::sort(ground);
  return ground;
}

std::vector<MolecularTree> enumerate_free_trees(int carbons) {
  if (carbons < 1 || carbons > kMaxEnumeratedCarbons) {
    throw std::invalid_argument("enumerate_free_trees: carbons must be in 1..12");
  }
  const int n = carbons;
  const RootedCatalog catalog(n);
  std::vector<MolecularTree> trees;

  // Unique centroid: every branch has fewer than n/2 nodes.
  const int max_branch = (n - 1) / 2;
  Children current;
  if (n == 1) {
    trees.push_back(MolecularTree::from_edges(1, {}));
  } else if (max_branch >= 1) {
    catalog.choose(n - 1, kMaxDegree, Key{max_branch, catalog.count(max_branch) - 1}, max_branch,
                   current, [&](const Children& kids) {
                     int next_id = 0;
                     std::vector<std::pair<int, int>> edges;
                     materialize(catalog, kids, next_id, edges);
                     trees.push_back(MolecularTree::from_edges(n, std::move(edges)));
                   });
  }

  // Two centroids joined by an edge splitting the tree in half.
  if (n % 2 == 0) {
    const int half = n / 2;
    for (int a = 0; a < catalog.count(half); ++a) {
      for (int b = a; b < catalog.count(half); ++b) {
        int next_id = 0;
        std::vector<std::pair<int, int>> edges;
        const int left = materialize(catalog, catalog.children(Key{half, a}), next_id, edges);
        const int right = materialize(catalog, catalog.children(Key{half, b}), next_id, edges);
        edges.emplace_back(left, right);
        trees.push_back(MolecularTree::from_edges(n, std::move(edges)));
      }
    }
  }
  return trees;
}

IsomerRegistry brute_force_isomers(int carbons) {
  IsomerRegistry registry;
  for (const auto& tree : enumerate_free_trees(carbons)) registry.add(tree, 0);
  return registry;
}

bool constraint_check(std::span<const std::uint8_t> y, int carbons) {
  if (carbons < 3) throw std::invalid_argument("constraint_check: need at least 3 carbons");
  if (y.size() != static_cast<std::size_t>(variable_count(carbons))) {
    throw std::invalid_argument("constraint_check: length mismatch");
  }
  int sum = 0;
  for (std::size_t block = 0; block < y.size(); block += kMaxDegree) {
    int set = 0;
    for (int j = 0; j < kMaxDegree; ++j) {
      if (y[block + j]) {
        ++set;
        sum += j + 1;
      }
    }
    if (set != 1) return false;
  }
  return sum == interior_degree_target(carbons);
}

}  // namespace isomer::oracle
