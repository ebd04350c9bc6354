#include "isomer/graph.hpp"

#include <algorithm>
#include <numeric>

namespace isomer {

OneHotViolation::OneHotViolation(int block)
    : std::runtime_error("block " + std::to_string(block) + " is not one-hot"), block_(block) {}

NonConstructible::NonConstructible(int position)
    : std::runtime_error("no earlier carbon has spare valence for position " +
                         std::to_string(position)),
      position_(position) {}

bool DegreeSequence::valid() const {
  const int n = carbons();
  if (n < 2 || degrees.front() != 1 || degrees.back() != 1) return false;
  if (std::ranges::any_of(degrees, [](int d) { return d < 1 || d > kMaxDegree; })) return false;
  return std::accumulate(degrees.begin(), degrees.end(), 0) == 2 * (n - 1);
}

std::vector<int> DegreeSequence::multiset() const {
  std::vector<int> sorted = degrees;
  std::ranges::sort(sorted);
  return sorted;
}

MolecularTree MolecularTree::from_edges(int carbons, std::vector<std::pair<int, int>> edges) {
  MolecularTree tree;
  tree.carbons = carbons;
  tree.degree.assign(static_cast<std::size_t>(carbons), 0);
  for (auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= carbons || b >= carbons) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (a > b) std::swap(a, b);
    ++tree.degree[a];
    ++tree.degree[b];
  }
  std::ranges::sort(edges);
  tree.edges = std::move(edges);
  return tree;
}

std::vector<std::vector<int>> MolecularTree::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(carbons));
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

bool MolecularTree::valid() const {
  if (carbons < 1 || static_cast<int>(edges.size()) != carbons - 1) return false;
  if (std::ranges::any_of(degree, [](int d) { return d > kMaxDegree; })) return false;
  const auto adj = adjacency();
  std::vector<char> seen(static_cast<std::size_t>(carbons), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  // n-1 edges and connected implies acyclic.
  return reached == carbons;
}

int MolecularTree::hydrogens() const {
  int total = 0;
  for (int d : degree) total += kMaxDegree - d;
  return total;
}

DegreeSequence decode_onehot(std::span<const std::uint8_t> y, int carbons) {
  if (carbons < 3) throw std::invalid_argument("decode_onehot: need at least 3 carbons");
  if (y.size() != static_cast<std::size_t>(variable_count(carbons))) {
    throw std::invalid_argument("decode_onehot: length mismatch");
  }
  DegreeSequence sequence;
  sequence.degrees.reserve(static_cast<std::size_t>(carbons));
  sequence.degrees.push_back(1);
  for (int block = 0; block < carbons - 2; ++block) {
    int degree = 0;
    int set = 0;
    for (int j = 0; j < kMaxDegree; ++j) {
      if (y[block * kMaxDegree + j] != 0) {
        ++set;
        degree = j + 1;
      }
    }
    if (set != 1) throw OneHotViolation(block);
    sequence.degrees.push_back(degree);
  }
  sequence.degrees.push_back(1);
  return sequence;
}

BitString encode_onehot(const DegreeSequence& sequence) {
  const int n = sequence.carbons();
  if (n < 3) throw std::invalid_argument("encode_onehot: need at least 3 carbons");
  BitString bits(static_cast<std::size_t>(variable_count(n)), 0);
  for (int i = 1; i + 1 < n; ++i) {
    const int d = sequence.degrees[i];
    if (d < 1 || d > kMaxDegree) throw std::invalid_argument("encode_onehot: degree out of range");
    bits[(i - 1) * kMaxDegree + (d - 1)] = 1;
  }
  return bits;
}

TreeBuild try_sequence_to_tree(const DegreeSequence& sequence) {
  if (!sequence.valid()) throw std::invalid_argument("sequence_to_tree: invalid degree sequence");
  const int n = sequence.carbons();
  std::vector<int> spare(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n - 1));
  spare[0] = sequence.degrees[0];
  for (int i = 1; i < n; ++i) {
    int parent = i - 1;
    while (parent >= 0 && spare[parent] == 0) --parent;
    if (parent < 0) return TreeBuild{std::nullopt, i + 1};
    --spare[parent];
    spare[i] = sequence.degrees[i] - 1;
    edges.emplace_back(parent, i);
  }
  return TreeBuild{MolecularTree::from_edges(n, std::move(edges)), 0};
}

MolecularTree sequence_to_tree(const DegreeSequence& sequence) {
  auto build = try_sequence_to_tree(sequence);
  if (!build.tree) throw NonConstructible(build.failed_position);
  return std::move(*build.tree);
}

namespace {

std::string rooted_certificate(const std::vector<std::vector<int>>& adj, int root) {
  // Iterative post-order so deep chains do not recurse.
  const auto n = adj.size();
  std::vector<int> parent(n, -1);
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> stack{root};
  parent[root] = root;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int w : adj[v]) {
      if (parent[w] == -1) {
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  std::vector<std::vector<std::string>> children(n);
  std::vector<std::string> label(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    auto& kids = children[v];
    std::ranges::sort(kids);
    std::string s = "(";
    for (auto& k : kids) s += k;
    s += ")";
    kids.clear();
    if (v != root) {
      children[parent[v]].push_back(std::move(s));
    } else {
      label[v] = std::move(s);
    }
  }
  return label[root];
}

std::vector<int> tree_centers(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n <= 2) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<int> remaining_degree(static_cast<std::size_t>(n));
  std::vector<int> leaves;
  for (int v = 0; v < n; ++v) {
    remaining_degree[v] = static_cast<int>(adj[v].size());
    if (remaining_degree[v] <= 1) leaves.push_back(v);
  }
  int left = n;
  while (left > 2) {
    left -= static_cast<int>(leaves.size());
    std::vector<int> next;
    for (int leaf : leaves) {
      for (int w : adj[leaf]) {
        if (--remaining_degree[w] == 1) next.push_back(w);
      }
    }
    leaves = std::move(next);
  }
  std::ranges::sort(leaves);
  return leaves;
}

}  // namespace

CanonicalForm canonicalize(const MolecularTree& tree) {
  if (tree.carbons == 0) return CanonicalForm{""};
  const auto adj = tree.adjacency();
  std::string best;
  for (int center : tree_centers(adj)) {
    std::string cert = rooted_certificate(adj, center);
    if (best.empty() || cert < best) best = std::move(cert);
  }
  return CanonicalForm{std::move(best)};
}

std::vector<MolecularTree> realize_multiset(std::vector<int> degree_multiset) {
  std::ranges::sort(degree_multiset);
  const int n = static_cast<int>(degree_multiset.size());
  if (n < 3 || degree_multiset[0] != 1 || degree_multiset[1] != 1) {
    throw std::invalid_argument("realize_multiset: need at least two unit degrees and n >= 3");
  }
  std::vector<int> interior(degree_multiset.begin() + 2, degree_multiset.end());
  std::map<std::string, MolecularTree> found;
  DegreeSequence sequence;
  sequence.degrees.resize(static_cast<std::size_t>(n));
  sequence.degrees.front() = 1;
  sequence.degrees.back() = 1;
  std::ranges::copy(interior, sequence.degrees.begin() + 1);
  if (!sequence.valid()) return {};
  do {
    std::ranges::copy(interior, sequence.degrees.begin() + 1);
    auto build = try_sequence_to_tree(sequence);
    if (build.tree) {
      auto form = canonicalize(*build.tree);
      found.try_emplace(std::move(form.certificate), std::move(*build.tree));
    }
  } while (std::next_permutation(interior.begin(), interior.end()));

  std::vector<MolecularTree> trees;
  trees.reserve(found.size());
  for (auto& [cert, tree] : found) trees.push_back(std::move(tree));
  return trees;
}

bool IsomerRegistry::add(const MolecularTree& tree, int iteration) {
  return add(canonicalize(tree), tree, iteration);
}

bool IsomerRegistry::add(const CanonicalForm& form, const MolecularTree& tree, int iteration) {
  auto it = entries_.find(form.certificate);
  if (it != entries_.end()) {
    ++it->second.count;
    return false;
  }
  IsomerEntry entry;
  entry.representative = tree;
  entry.degree_multiset = tree.degree;
  std::ranges::sort(entry.degree_multiset);
  entry.count = 1;
  entry.first_seen_iteration = iteration;
  entries_.emplace(form.certificate, std::move(entry));
  return true;
}

const IsomerEntry* IsomerRegistry::find(const CanonicalForm& form) const {
  auto it = entries_.find(form.certificate);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> IsomerRegistry::certificates() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [cert, entry] : entries_) out.push_back(cert);
  return out;
}

}  // namespace isomer
