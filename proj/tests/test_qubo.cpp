#include <algorithm>
#include <random>

#include "catch2/catch_amalgamated.hpp"
#include "isomer/qubo.hpp"
#include "support/test_support.hpp"

using namespace isomer;
using namespace isomer::testing;
using Catch::Approx;

namespace {

// Penalty matrices assembled term by term: A = P2 Da^2 + 2(P2 Da Ua + P1 DU),
// b = -(4(n-2) P2 alpha + P1 1), c = 4(n-2)^2 P2 + (n-2) P1.
struct MatrixRoute {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  double c = 0.0;
};

MatrixRoute matrix_route(int n, double p1, double p2) {
  const std::size_t m = 4 * (n - 2);
  std::vector<double> alpha(m);
  for (std::size_t i = 0; i < m; ++i) alpha[i] = static_cast<double>(i % 4 + 1);
  std::vector<std::vector<double>> da(m, std::vector<double>(m, 0.0)), ua = da, du = da;
  for (std::size_t i = 0; i < m; ++i) {
    da[i][i] = alpha[i];
    for (std::size_t j = i + 1; j < m; ++j) {
      ua[i][j] = alpha[j];
      if (i / 4 == j / 4) du[i][j] = 1.0;
    }
  }
  MatrixRoute r;
  r.a.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double da2 = 0.0, daua = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        da2 += da[i][k] * da[k][j];
        daua += da[i][k] * ua[k][j];
      }
      r.a[i][j] = p2 * da2 + 2.0 * (p2 * daua + p1 * du[i][j]);
    }
  }
  r.b.resize(m);
  for (std::size_t i = 0; i < m; ++i) r.b[i] = -(4.0 * (n - 2) * p2 * alpha[i] + p1);
  r.c = 4.0 * (n - 2) * (n - 2) * p2 + (n - 2) * p1;
  return r;
}

}  // namespace

TEST_CASE("build_qubo sizes and constants for butane", "[qubo]") {
  const auto problem = build_qubo(4, {1.0, 1.0});
  CHECK(problem.num_variables() == 8);
  CHECK(problem.offset == 18.0);
  CHECK(problem.q(0, 0) == -8.0);
  CHECK(problem.carbons == 4);
}

TEST_CASE("build_qubo matches the term-by-term matrix assembly", "[qubo]") {
  for (auto [p1, p2] : {std::pair{1.0, 1.0}, std::pair{3.0, 0.5}, std::pair{0.7, 2.25}}) {
    for (int n : {3, 4, 5}) {
      const auto route = matrix_route(n, p1, p2);
      const auto problem = build_qubo(n, {p1, p2});
      CHECK(problem.offset == Approx(route.c));
      const std::size_t m = problem.num_variables();
      for (const auto& y : all_states(m)) {
        const double via_route = dense_quadratic(route.a, route.b, y);
        REQUIRE(rel_close(matrix_eval(problem, y), via_route));
        REQUIRE(rel_close(via_route + route.c, objective_eval(y, n, {p1, p2})));
      }
    }
  }
}

TEST_CASE("butane QUBO minimum is -18 with three minimizers", "[qubo]") {
  const auto problem = build_qubo(4);
  double best = 1e300;
  int hits = 0;
  for (const auto& y : all_states(8)) {
    const double e = matrix_eval(problem, y);
    if (e < best) {
      best = e;
      hits = 1;
    } else if (e == best) {
      ++hits;
    }
  }
  CHECK(best == -18.0);
  CHECK(hits == 3);
}

TEST_CASE("build_qubo rejects bad inputs", "[qubo]") {
  CHECK_THROWS_AS(build_qubo(2), std::invalid_argument);
  CHECK_THROWS_AS(build_qubo(4, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_qubo(4, {1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("objective_eval examples", "[qubo]") {
  CHECK(objective_eval(onehot({2, 2}), 4) == 0.0);
  CHECK(objective_eval(BitString(8, 0), 4, {1.0, 1.0}) == 18.0);
  CHECK(objective_eval(BitString(8, 0), 4, {2.0, 3.0}) == 2.0 * 2 + 3.0 * 16);
  CHECK(objective_eval(onehot({2, 2, 2}), 5) == 0.0);
  CHECK(objective_eval(onehot({1, 1}), 4) == 4.0);
  CHECK_THROWS_AS(objective_eval(BitString(7, 0), 4), std::invalid_argument);
}

TEST_CASE("matrix_eval plus offset equals the objective on random states", "[qubo][property]") {
  std::mt19937_64 rng(7);
  for (int n = 4; n <= 9; ++n) {
    const auto problem = build_qubo(n);
    for (int k = 0; k < 2000; ++k) {
      const auto y = random_bits(problem.num_variables(), rng);
      REQUIRE(rel_close(matrix_eval(problem, y) + problem.offset, objective_eval(y, n)));
    }
  }
  const auto problem = build_qubo(4);
  CHECK(matrix_eval(problem, onehot({2, 2})) == -18.0);
  CHECK(matrix_eval(problem, BitString(8, 0)) == 0.0);
  CHECK_THROWS_AS(matrix_eval(problem, BitString(9, 0)), std::invalid_argument);
}

TEST_CASE("UpperTriangular folds mirrored entries", "[qubo]") {
  UpperTriangular q(3);
  q.add(2, 0, 1.5);
  q.add(0, 2, 0.5);
  CHECK(q(0, 2) == 2.0);
  CHECK(q.packed().size() == 6);
  CHECK_THROWS_AS(q.at(2, 1), std::out_of_range);
}

TEST_CASE("qubo_to_ising small cases", "[qubo][ising]") {
  QuboProblem one;
  one.q = UpperTriangular(1);
  one.q.at(0, 0) = 3.0;
  const auto ising = qubo_to_ising(one);
  CHECK(ising.h[0] == 1.5);
  CHECK(ising.offset == 1.5);

  QuboProblem zero;
  zero.q = UpperTriangular(4);
  const auto z = qubo_to_ising(zero);
  CHECK(std::ranges::all_of(z.h, [](double h) { return h == 0.0; }));
  CHECK(z.offset == 0.0);
  CHECK(std::ranges::all_of(z.j.packed(), [](double v) { return v == 0.0; }));
}

TEST_CASE("qubo_to_ising preserves energies", "[qubo][ising][property]") {
  for (int n : {4, 5}) {
    const auto problem = build_qubo(n);
    const auto ising = qubo_to_ising(problem);
    for (const auto& y : all_states(problem.num_variables())) {
      REQUIRE(rel_close(ising_energy(ising, to_spins(y)) + ising.offset, matrix_eval(problem, y)));
    }
  }
  std::mt19937_64 rng(11);
  for (int n : {6, 7, 8, 9}) {
    const auto problem = build_qubo(n, {1.3, 0.4});
    const auto ising = qubo_to_ising(problem);
    for (int k = 0; k < 10000; ++k) {
      const auto y = random_bits(problem.num_variables(), rng);
      REQUIRE(rel_close(ising_energy(ising, to_spins(y)) + ising.offset, matrix_eval(problem, y)));
    }
  }
}

TEST_CASE("scale_ising applies one uniform factor", "[qubo][ising]") {
  IsingProblem p;
  p.h = {4.0, -4.0};
  p.j = UpperTriangular(2);
  const auto scaled = scale_ising(p, 2.0, 1.0);
  CHECK(scaled.scale == 0.5);
  CHECK(scaled.h == std::vector<double>{2.0, -2.0});

  IsingProblem inside;
  inside.h = {1.0, -0.5};
  inside.j = UpperTriangular(2);
  inside.j.at(0, 1) = 0.25;
  inside.offset = 3.0;
  const auto same = scale_ising(inside, 2.0, 1.0);
  CHECK(same.scale == 1.0);
  CHECK(same.h == inside.h);
  CHECK(same.offset == 3.0);

  IsingProblem negative;
  negative.h = {0.1, 0.1};
  negative.j = UpperTriangular(2);
  negative.j.at(0, 1) = -1.0;
  CHECK(scale_ising(negative, 2.0, 1.0, 0.8).j(0, 1) == Approx(-0.8));

  CHECK_THROWS_AS(scale_ising(p, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("scaled butane keeps coefficients in range and the full ordering", "[qubo][ising]") {
  const auto problem = build_qubo(4);
  const auto scaled = scale_ising(qubo_to_ising(problem));
  const std::size_t m = problem.num_variables();
  double max_h = 0.0, max_j = 0.0;
  for (double h : scaled.h) max_h = std::max(max_h, std::abs(h));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) max_j = std::max(max_j, std::abs(scaled.j(i, j)));
  CHECK(max_h <= 2.0 + 1e-12);
  CHECK(max_j <= 1.0 + 1e-12);
  CHECK((max_h == Approx(2.0) || max_j == Approx(1.0)));

  auto states = all_states(m);
  auto by_qubo = states;
  auto by_ising = states;
  std::ranges::stable_sort(by_qubo, {}, [&](const BitString& y) { return matrix_eval(problem, y); });
  std::ranges::stable_sort(by_ising, {}, [&](const BitString& y) {
    return std::round(ising_energy(scaled, to_spins(y)) * 1e9);
  });
  for (std::size_t k = 0; k < states.size(); ++k) {
    REQUIRE(matrix_eval(problem, by_qubo[k]) == matrix_eval(problem, by_ising[k]));
  }
}

TEST_CASE("perturb adds lambda (psi . y)^2", "[qubo][perturb]") {
  const auto problem = build_qubo(5);
  const auto psi = onehot({2, 2, 2});
  const double lambda = 5e-5;
  const auto shifted = perturb(problem, psi, lambda);
  CHECK(shifted.offset == problem.offset);
  CHECK(rel_close(matrix_eval(shifted, psi) - matrix_eval(problem, psi), lambda * 9.0, 1e-12));

  const auto other = onehot({1, 3, 1});  // no overlap with psi
  CHECK(matrix_eval(shifted, other) == matrix_eval(problem, other));
  CHECK(problem == build_qubo(5));

  std::mt19937_64 rng(3);
  for (int k = 0; k < 5000; ++k) {
    const auto y = random_bits(problem.num_variables(), rng);
    double dot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) dot += psi[i] * y[i];
    REQUIRE(rel_close(matrix_eval(shifted, y), matrix_eval(problem, y) + lambda * dot * dot));
  }

  CHECK_THROWS_AS(perturb(problem, BitString(3, 1), lambda), std::invalid_argument);
  CHECK_THROWS_AS(perturb(problem, psi, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(perturb(problem, psi, -1.0), std::invalid_argument);
}
