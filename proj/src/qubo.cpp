#include "isomer/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isomer {

namespace {

void check_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(want) +
                                " variables, got " + std::to_string(got));
  }
}

int degree_weight(std::size_t index) { return static_cast<int>(index % kMaxDegree) + 1; }

}  // namespace

void PenaltyConfig::validate() const {
  if (!(p1 > 0.0) || !(p2 > 0.0) || !std::isfinite(p1) || !std::isfinite(p2)) {
    throw std::invalid_argument("penalty weights must be positive and finite");
  }
}

UpperTriangular::UpperTriangular(std::size_t size)
    : size_(size), data_(size * (size + 1) / 2, 0.0) {}

double& UpperTriangular::at(std::size_t i, std::size_t j) {
  if (i > j || j >= size_) throw std::out_of_range("UpperTriangular::at");
  return data_[index(i, j)];
}

void UpperTriangular::add(std::size_t i, std::size_t j, double value) {
  if (i > j) std::swap(i, j);
  at(i, j) += value;
}

QuboProblem build_qubo(int carbons, const PenaltyConfig& penalties) {
  if (carbons < 3) {
    throw std::invalid_argument("build_qubo: need at least 3 carbons, got " +
                                std::to_string(carbons));
  }
  penalties.validate();

  const auto m = static_cast<std::size_t>(variable_count(carbons));
  const double interior = carbons - 2;
  const double p1 = penalties.p1;
  const double p2 = penalties.p2;

  QuboProblem problem;
  problem.carbons = carbons;
  problem.penalties = penalties;
  problem.q = UpperTriangular(m);

  for (std::size_t i = 0; i < m; ++i) {
    const double ai = degree_weight(i);
    // P2 * D_alpha^2 on the diagonal plus the linear vector b.
    const double b = -(4.0 * interior * p2 * ai + p1);
    problem.q.at(i, i) = p2 * ai * ai + b;
    for (std::size_t j = i + 1; j < m; ++j) {
      const double aj = degree_weight(j);
      double coupling = 2.0 * p2 * ai * aj;
      if (i / kMaxDegree == j / kMaxDegree) coupling += 2.0 * p1;
      problem.q.at(i, j) = coupling;
    }
  }
  problem.offset = 4.0 * interior * interior * p2 + interior * p1;
  return problem;
}

double objective_eval(std::span<const std::uint8_t> y, int carbons,
                      const PenaltyConfig& penalties) {
  if (carbons < 3) throw std::invalid_argument("objective_eval: need at least 3 carbons");
  check_length(y.size(), static_cast<std::size_t>(variable_count(carbons)), "objective_eval");

  double onehot = 0.0;
  double degree_sum = 0.0;
  for (int block = 0; block < carbons - 2; ++block) {
    int set = 0;
    for (int j = 0; j < kMaxDegree; ++j) {
      if (y[block * kMaxDegree + j] != 0) {
        ++set;
        degree_sum += j + 1;
      }
    }
    onehot += static_cast<double>((set - 1) * (set - 1));
  }
  const double deficit = degree_sum - interior_degree_target(carbons);
  return penalties.p1 * onehot + penalties.p2 * deficit * deficit;
}

double matrix_eval(const QuboProblem& problem, std::span<const std::uint8_t> y) {
  const std::size_t m = problem.num_variables();
  check_length(y.size(), m, "matrix_eval");
  double energy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (y[i] == 0) continue;
    energy += problem.q(i, i);
    for (std::size_t j = i + 1; j < m; ++j) {
      if (y[j] != 0) energy += problem.q(i, j);
    }
  }
  return energy;
}

IsingProblem qubo_to_ising(const QuboProblem& problem) {
  // x = (s + 1) / 2:
  //   Q_ii x_i            -> Q_ii/2 s_i + Q_ii/2
  //   Q_ij x_i x_j (i<j)  -> Q_ij/4 (s_i s_j + s_i + s_j + 1)
  const std::size_t m = problem.num_variables();
  IsingProblem ising;
  ising.carbons = problem.carbons;
  ising.h.assign(m, 0.0);
  ising.j = UpperTriangular(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double diag = problem.q(i, i);
    ising.h[i] += diag / 2.0;
    ising.offset += diag / 2.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      const double quarter = problem.q(i, j) / 4.0;
      ising.j.at(i, j) = quarter;
      ising.h[i] += quarter;
      ising.h[j] += quarter;
      ising.offset += quarter;
    }
  }
  return ising;
}

double ising_energy(const IsingProblem& problem, std::span<const std::int8_t> spins) {
  const std::size_t m = problem.h.size();
  check_length(spins.size(), m, "ising_energy");
  double energy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    energy += problem.h[i] * spins[i];
    for (std::size_t j = i + 1; j < m; ++j) {
      energy += problem.j(i, j) * spins[i] * spins[j];
    }
  }
  return energy;
}

std::vector<std::int8_t> to_spins(std::span<const std::uint8_t> x) {
  std::vector<std::int8_t> spins(x.size());
  std::ranges::transform(x, spins.begin(),
                         [](std::uint8_t b) { return static_cast<std::int8_t>(b ? 1 : -1); });
  return spins;
}

IsingProblem scale_ising(const IsingProblem& problem, double h_bound, double j_bound,
                         double j_negative_bound) {
  if (!(h_bound > 0.0) || !(j_bound > 0.0) || !(j_negative_bound > 0.0)) {
    throw std::invalid_argument("scale_ising: bounds must be positive");
  }
  double factor = 1.0;
  for (double h : problem.h) {
    if (std::abs(h) > 0.0) factor = std::min(factor, h_bound / std::abs(h));
  }
  const std::size_t m = problem.h.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      const double value = problem.j(i, k);
      if (value > 0.0) factor = std::min(factor, j_bound / value);
      if (value < 0.0) factor = std::min(factor, j_negative_bound / -value);
    }
  }
  if (factor == 1.0) return problem;

  IsingProblem scaled = problem;
  for (double& h : scaled.h) h *= factor;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) scaled.j.at(i, k) *= factor;
  }
  scaled.offset *= factor;
  scaled.scale *= factor;
  return scaled;
}

QuboProblem perturb(const QuboProblem& problem, std::span<const std::uint8_t> psi,
                    double lambda) {
  const std::size_t m = problem.num_variables();
  check_length(psi.size(), m, "perturb");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("perturb: lambda must be positive");
  }
  QuboProblem shifted = problem;
  for (std::size_t i = 0; i < m; ++i) {
    if (psi[i] == 0) continue;
    shifted.q.at(i, i) += lambda;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (psi[j] != 0) shifted.q.at(i, j) += 2.0 * lambda;
    }
  }
  return shifted;
}

}  // namespace isomer
