#include "doctest.h"

#include <cmath>

#include "corona/bezout.hpp"
#include "corona/error.hpp"
#include "support.hpp"

using namespace corona;

namespace {

double coefficient_residual(std::span<const CPoly> f, std::span<const CPoly> g) {
  CPoly acc;
  for (std::size_t k = 0; k < f.size(); ++k) acc += f[k] * g[k];
  acc -= CPoly{1.0};
  double s = 0.0;
  for (const auto& c : acc.coeffs()) s += std::norm(c);
  return std::sqrt(s);
}

double max_identity_error(std::span<const CPoly> f, std::span<const CPoly> g) {
  double worst = 0.0;
  for (int i = 0; i < 400; ++i) {
    const Complex z = testing::random_disc_point();
    Complex acc{};
    for (std::size_t k = 0; k < f.size(); ++k) acc += f[k](z) * g[k](z);
    worst = std::max(worst, std::abs(acc - 1.0));
  }
  return worst;
}

}  // namespace

TEST_SUITE("bezout") {
  TEST_CASE("xgcd of (z, 1 - z/2) is (1/2, 1)") {
    const auto r = xgcd(CPoly{0.0, 1.0}, CPoly{1.0, -0.5});
    CHECK(r.gcd == CPoly{1.0});
    CHECK(r.a == CPoly{0.5});
    CHECK(r.b == CPoly{1.0});
  }

  TEST_CASE("xgcd with constant or zero inputs") {
    const auto r = xgcd(CPoly{2.0}, CPoly{0.0, 1.0, 1.0});
    CHECK(r.gcd == CPoly{1.0});
    CHECK(r.a == CPoly{0.5});
    CHECK(r.b.is_zero());
    const auto z = xgcd(CPoly{0.0, 2.0}, CPoly{});
    CHECK(z.gcd == CPoly{0.0, 1.0});
  }

  TEST_CASE("xgcd on random coprime pairs") {
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const CPoly p = testing::random_poly(1 + trial % 8), q = testing::random_poly(1 + (trial / 8) % 8);
      XgcdResult r;
      try {
        r = xgcd(p, q);
      } catch (const CoronaError& e) {
        CHECK(e.kind() == ErrorKind::ill_conditioned);
        continue;
      }
      ++checked;
      CHECK(r.gcd == CPoly{1.0});
      const std::vector<CPoly> f{p, q}, g{r.a, r.b};
      CHECK(max_identity_error(f, g) <= 1e-10);
    }
    CHECK(checked >= 190);
  }

  TEST_CASE("xgcd recovers a shared factor") {
    const CPoly common{-2.0, 1.0};
    const auto r = xgcd(common * CPoly{0.3, 1.0}, common * CPoly{Complex(0, 0.5), 1.0});
    REQUIRE(r.gcd.degree() == 1);
    CHECK(std::abs(r.gcd[0] - Complex(-2.0)) < 1e-10);
    CHECK(r.gcd.leading() == Complex(1.0));
  }

  TEST_CASE("gcd chain reports a zero in the disc") {
    const std::vector<CPoly> f{CPoly{0.0, 1.0}, CPoly{0.0, 0.0, 1.0}};
    try {
      gcd_chain_bezout(f);
      FAIL("expected a corona violation");
    } catch (const CoronaError& e) {
      CHECK(e.kind() == ErrorKind::corona_violated);
    }
    const std::vector<CPoly> zero{CPoly{}, CPoly{}};
    CHECK_THROWS_AS(gcd_chain_bezout(zero), CoronaError);
  }

  TEST_CASE("gcd chain over three components") {
    const std::vector<CPoly> f{CPoly{0.0, 1.0}, CPoly{-1.0, 1.0}, CPoly{0.5, 0.0, 1.0}};
    const auto out = gcd_chain_bezout(f);
    REQUIRE(out.solution);
    CHECK(out.solution->exact());
    CHECK(max_identity_error(f, out.solution->g) < 1e-12);
  }

  TEST_CASE("a zero-free common factor leaves the chain without a solution") {
    const CPoly common{-2.0, 1.0};
    const std::vector<CPoly> f{common * CPoly{0.0, 1.0}, common * CPoly{-0.5, 1.0}};
    const auto out = gcd_chain_bezout(f);
    CHECK_FALSE(out.solution);
    CHECK(out.gcd.degree() == 1);
    CHECK(out.gcd_inf.lo > 0.0);
  }

  TEST_CASE("least-norm residual never increases with the degree") {
    const CPoly common{-2.0, 1.0};
    const std::vector<CPoly> f{common * CPoly{0.0, 1.0}, common * CPoly{-0.5, 1.0}};
    double prev = std::numeric_limits<double>::infinity();
    for (int d = 1; d <= 16; ++d) {
      const auto sol = least_norm_bezout(f, d);
      const double r = coefficient_residual(f, sol.g);
      CHECK(r <= prev + 1e-12);
      prev = r;
    }
    CHECK(prev < 1e-3);
  }

  TEST_CASE("least-norm solutions are orthogonal to the syzygies") {
    // Every (f2 z^j, -f1 z^j) solves the homogeneous system; the minimum-norm
    // solution must be orthogonal to all of them within the degree bound.
    const std::vector<CPoly> f{CPoly{0.5, 1.0}, CPoly{1.0, Complex(0, 0.3), 0.2}};
    const int degree = 5;
    const auto sol = least_norm_bezout(f, degree);
    CHECK(coefficient_residual(f, sol.g) < 1e-12);
    for (int j = 0; j + std::max(f[0].degree(), f[1].degree()) <= degree; ++j) {
      const CPoly v0 = f[1] * CPoly::monomial(j, 1.0), v1 = -(f[0] * CPoly::monomial(j, 1.0));
      Complex inner{};
      for (int i = 0; i <= degree; ++i) inner += std::conj(v0[i]) * sol.g[0][i] + std::conj(v1[i]) * sol.g[1][i];
      CHECK(std::abs(inner) < 1e-10);
    }
  }

  TEST_CASE("point solver prefers the exact chain") {
    const std::vector<CPoly> f{CPoly{0.0, 1.0 / 3}, CPoly{2.0 / 3, -1.0 / 3}};
    const auto sol = solve_point(f);
    CHECK(sol.solver == PointSolver::gcd_chain);
    CHECK(sol.exact());
    CHECK(sol.residual_cert.hi < 1e-12);
    // g = (3/2, 3/2) is the unique constant solution.
    CHECK(std::abs(sol.g[0](0.3) - 1.5) < 1e-12);
    CHECK(std::abs(sol.g[1](0.3) - 1.5) < 1e-12);
    CHECK(sol.norm_cert.contains(1.5 * std::sqrt(2.0), 1e-12));
  }

  TEST_CASE("point solver falls back to least norm") {
    const CPoly common{-2.0, 1.0};
    const std::vector<CPoly> f{common * CPoly{0.0, 0.5}, common * CPoly{-0.5, 0.5}};
    const auto sol = solve_point(f);
    CHECK(sol.solver == PointSolver::least_norm);
    CHECK_FALSE(sol.exact());
    CHECK(sol.residual_cert.hi <= kPointResidualGate);
    CHECK(max_identity_error(f, sol.g) <= sol.residual_cert.hi + 1e-12);
  }

  TEST_CASE("constant data") {
    const std::vector<CPoly> f{CPoly{Complex(0, 2)}};
    const auto sol = solve_point(f);
    CHECK(sol.g[0] == CPoly{Complex(0, -0.5)});
    const auto certs = certify(f, sol.g);
    CHECK(certs.residual_cert.hi == 0.0);
  }
}
