#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace isomer {

/// One binary decision variable per entry. For the isomer QUBO the string is
/// laid out as (n-2) blocks of 4 bits; bit j (0-based) of a block is set when
/// that interior carbon has degree j+1.
using BitString = std::vector<std::uint8_t>;

inline constexpr int kMaxDegree = 4;

/// Number of QUBO variables for an alkane with `carbons` carbon atoms.
constexpr int variable_count(int carbons) { return kMaxDegree * (carbons - 2); }

/// Interior degree-sum target: twice the tree's edge count, minus the two
/// fixed unit endpoints.
constexpr int interior_degree_target(int carbons) { return 2 * (carbons - 2); }

struct PenaltyConfig {
  double p1 = 1.0;  // one-hot constraint per block
  double p2 = 1.0;  // interior degree sum

  /// Throws std::invalid_argument unless both weights are positive and finite.
  void validate() const;
  friend bool operator==(const PenaltyConfig&, const PenaltyConfig&) = default;
};

/// Packed upper-triangular matrix with diagonal. Entry (i, j) with i > j is
/// not stored; add() folds it onto (j, i).
class UpperTriangular {
 public:
  UpperTriangular() = default;
  explicit UpperTriangular(std::size_t size);

  std::size_t size() const { return size_; }

  /// Requires i <= j < size().
  double operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
  double& at(std::size_t i, std::size_t j);

  /// Adds `value` to entry (min(i,j), max(i,j)).
  void add(std::size_t i, std::size_t j, double value);

  std::span<const double> packed() const { return data_; }

  friend bool operator==(const UpperTriangular&, const UpperTriangular&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    return i * size_ - i * (i + 1) / 2 + j;
  }

  std::size_t size_ = 0;
  std::vector<double> data_;
};

/// Quadratic form y^T Q y + offset over binary y. `carbons` is 0 for problems
/// that were not produced by build_qubo.
struct QuboProblem {
  int carbons = 0;
  PenaltyConfig penalties;
  UpperTriangular q;
  double offset = 0.0;

  std::size_t num_variables() const { return q.size(); }
  friend bool operator==(const QuboProblem&, const QuboProblem&) = default;
};

/// sum_i h_i s_i + sum_{i<j} J_ij s_i s_j + offset over s in {-1,+1}.
/// `scale` records the cumulative factor applied by scale_ising.
struct IsingProblem {
  int carbons = 0;
  std::vector<double> h;
  UpperTriangular j;  // diagonal unused (always 0)
  double offset = 0.0;
  double scale = 1.0;
};

/// Assembles Q = A + D_b for the alkane C_n H_{2n+2}. The stored offset is the
/// constant c, so that y^T Q y + offset equals objective_eval(y).
QuboProblem build_qubo(int carbons, const PenaltyConfig& penalties = {});

/// Penalty objective evaluated directly from its definition:
/// p1 * sum_blocks (sum_j y_bj - 1)^2 + p2 * (sum_blocks sum_j j*y_bj - 2(n-2))^2.
double objective_eval(std::span<const std::uint8_t> y, int carbons,
                      const PenaltyConfig& penalties = {});

/// y^T Q y without the offset.
double matrix_eval(const QuboProblem& problem, std::span<const std::uint8_t> y);

IsingProblem qubo_to_ising(const QuboProblem& problem);

/// Ising energy of spins (each -1 or +1), without the offset.
double ising_energy(const IsingProblem& problem, std::span<const std::int8_t> spins);

/// Maps x in {0,1} to s = 2x - 1.
std::vector<std::int8_t> to_spins(std::span<const std::uint8_t> x);

/// Applies one uniform factor s <= 1 to h, J and the offset so that
/// |h_i| <= h_bound, J_ij <= j_bound and J_ij >= -j_negative_bound.
/// Problems already within bounds, and all-zero problems, are returned as is.
IsingProblem scale_ising(const IsingProblem& problem, double h_bound, double j_bound,
                         double j_negative_bound);
inline IsingProblem scale_ising(const IsingProblem& problem, double h_bound = 2.0,
                                double j_bound = 1.0) {
  return scale_ising(problem, h_bound, j_bound, j_bound);
}

/// Returns Q' = Q + lambda * psi psi^T, folded into upper-triangular storage
/// (diagonal gains lambda*psi_i, pairs gain 2*lambda*psi_i*psi_j). Then
/// y^T Q' y = y^T Q y + lambda * (psi . y)^2 and the offset is unchanged.
QuboProblem perturb(const QuboProblem& problem, std::span<const std::uint8_t> psi,
                    double lambda);

}  // namespace isomer
