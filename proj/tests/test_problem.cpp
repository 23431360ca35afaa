// SPDX-License-Identifier: MIT

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "meshcond/problem.hpp"
#include "oracles.hpp"

using namespace meshcond;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("eta branch values agree at every interface angle") {
  const ProblemSpec s = kellogg_gamma01();
  for (int b = 0; b < 3; ++b) {
    const double theta = (b + 1) * kPi / 2;
    const double left = eta_on_branch(theta, b, s);
    const double right = eta_on_branch(theta, b + 1, s);
    REQUIRE(std::abs(left - right) <= 1e-14);
  }
  REQUIRE(std::abs(eta(0.0, s) - eta(2 * kPi, s)) <= 1e-14);
}

TEST_CASE("eta at pi/2 equals the shared closed form") {
  const ProblemSpec s = kellogg_gamma01();
  const double expected =
      std::cos(s.rho * s.gamma) * std::cos((kPi / 2 - s.sigma) * s.gamma);
  REQUIRE(eta(kPi / 2, s) == Approx(expected).epsilon(1e-14));
}

TEST_CASE("eta golden value at theta = 0") {
  // High-precision evaluation of branch 1 with the gamma = 0.1 parameters.
  REQUIRE(eta(0.0, kellogg_gamma01()) == Approx(-0.078210763271045642).epsilon(1e-12));
}

TEST_CASE("eta rejects angles outside [0, 2*pi]") {
  const ProblemSpec s = kellogg_gamma01();
  REQUIRE_THROWS_AS(eta(-0.1, s), std::domain_error);
  REQUIRE_THROWS_AS(eta(2 * kPi + 0.1, s), std::domain_error);
  REQUIRE_THROWS_AS(eta_prime(7.0, s), std::domain_error);
}

TEST_CASE("eta_prime matches a central finite difference") {
  const ProblemSpec s = kellogg_gamma01();
  std::mt19937 rng(20240901);
  std::uniform_real_distribution<double> inner(0.05, kPi / 2 - 0.05);
  for (int b = 0; b < 4; ++b) {
    for (int k = 0; k < 25; ++k) {
      const double theta = b * kPi / 2 + inner(rng);
      const double fd = oracles::central_difference(
          [&](double t) { return eta(t, s); }, theta, 1e-6);
      const double an = eta_prime(theta, s);
      REQUIRE(an == Approx(fd).epsilon(1e-6).margin(1e-12));
    }
  }
}

TEST_CASE("eta_prime vanishes with the singularity exponent") {
  ProblemSpec s = kellogg_gamma01();
  s.gamma = 1e-9;
  for (double theta : {0.3, 1.0, 2.2, 3.4, 4.9, 6.1})
    REQUIRE(std::abs(eta_prime(theta, s)) <= 1e-8);
}

TEST_CASE("eta satisfies eta'' = -gamma^2 eta on every branch") {
  const ProblemSpec s = kellogg_gamma01();
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> inner(1e-3, kPi / 2 - 1e-3);
  for (int b = 0; b < 4; ++b) {
    for (int k = 0; k < 100; ++k) {
      const double theta = b * kPi / 2 + inner(rng);
      REQUIRE(std::abs(eta_second(theta, s) + s.gamma * s.gamma * eta(theta, s)) <= 1e-8);
      // and the analytic second derivative agrees with a finite difference
      const double fd = oracles::second_difference(
          [&](double t) { return eta(t, s); }, theta, 1e-4);
      REQUIRE(eta_second(theta, s) == Approx(fd).margin(1e-6));
    }
  }
}

TEST_CASE("weighted flux continuity holds across the four interfaces") {
  const ProblemSpec s = kellogg_gamma01();
  const QuadrantPermeability k = quadrant_permeability(s);
  const double perm[4] = {k.k1, k.k2, k.k3, k.k4};
  for (int b = 0; b < 4; ++b) {
    // interface between branch b and branch (b+1) mod 4
    const double theta = (b + 1) * kPi / 2;
    const double from_left = perm[b] * eta_prime_on_branch(theta, b, s);
    const double from_right =
        perm[(b + 1) % 4] * eta_prime_on_branch(b == 3 ? 0.0 : theta, (b + 1) % 4, s);
    REQUIRE(std::abs(from_left - from_right) / std::abs(from_left) <= 1e-3);
  }
}

TEST_CASE("exact pressure basics") {
  const ProblemSpec s = kellogg_gamma01();
  REQUIRE(exact_pressure(0.0, 0.0, s) == 0.0);
  // on the unit circle r^gamma = 1, so the pressure equals eta(theta)
  for (double theta : {0.2, 1.4, 2.8, 4.0, 5.5})
    REQUIRE(exact_pressure(std::cos(theta), std::sin(theta), s) ==
            Approx(eta(theta, s)).epsilon(1e-13));
  // golden corner value 2^{gamma/2} * eta(pi/4)
  REQUIRE(exact_pressure(1.0, 1.0, s) == Approx(-0.081219230493083111).epsilon(1e-12));
}

TEST_CASE("exact pressure is monotone in r along rays") {
  const ProblemSpec s = kellogg_gamma01();
  for (double theta : {0.4, 1.1, 2.0, 3.3, 4.6, 5.9}) {
    if (std::abs(eta(theta, s)) < 1e-12) continue;
    double prev = 0.0;
    for (double r = 0.1; r <= 1.0; r += 0.1) {
      const double p = exact_pressure(r * std::cos(theta), r * std::sin(theta), s);
      REQUIRE(std::abs(p) > std::abs(prev));
      REQUIRE(p * eta(theta, s) > 0.0);
      prev = p;
    }
  }
}

TEST_CASE("permeability is the checkerboard") {
  const ProblemSpec s = kellogg_gamma01();
  REQUIRE(permeability(0.5, 0.5, s) == 161.4476);
  REQUIRE(permeability(-0.5, 0.5, s) == 1.0);
  REQUIRE(permeability(-0.5, -0.5, s) == 161.4476);
  REQUIRE(permeability(0.5, -0.5, s) == 1.0);
  REQUIRE_THROWS_AS(permeability(0.0, 0.5, s), std::domain_error);
  REQUIRE_THROWS_AS(permeability(0.5, 0.0, s), std::domain_error);
}

TEST_CASE("source vanishes and the pressure is discretely harmonic") {
  const ProblemSpec s = kellogg_gamma01();
  REQUIRE(source(0.3, -0.7, s) == 0.0);
  // K * (5-point Laplacian of p) must be numerically zero away from the axes
  auto p = [&](double x, double y) { return exact_pressure(x, y, s); };
  const double in_high = permeability(0.3, 0.4, s) * oracles::laplacian_5pt(p, 0.3, 0.4, 1e-4);
  REQUIRE(std::abs(in_high) <= 1e-4);
  const double in_low = permeability(-0.3, 0.4, s) * oracles::laplacian_5pt(p, -0.3, 0.4, 1e-4);
  REQUIRE(std::abs(in_low) <= 1e-4);
}

TEST_CASE("quadrant classification") {
  REQUIRE(quadrant_of(0.1, 0.1) == 1);
  REQUIRE(quadrant_of(-0.1, 0.1) == 2);
  REQUIRE(quadrant_of(-0.1, -0.1) == 3);
  REQUIRE(quadrant_of(0.1, -0.1) == 4);
  REQUIRE_THROWS_AS(quadrant_of(0.0, 1.0), std::domain_error);
}
