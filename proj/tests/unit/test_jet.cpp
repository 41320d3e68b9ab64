#include "doctest.h"

#include <cmath>

#include "corona/jet.hpp"

using namespace corona;

TEST_SUITE("jet") {
  TEST_CASE("product of variables expands like the polynomial") {
    // (1 + x)(2 + y) at (0, 0) -> 2 + 2x + y + xy.
    auto x = Jet<double>::variable(2, 3, 0, 1.0);
    auto y = Jet<double>::variable(2, 3, 1, 2.0);
    const auto p = x * y;
    CHECK(p.value() == doctest::Approx(2.0));
    CHECK(p.derivative({1, 0}) == doctest::Approx(2.0));
    CHECK(p.derivative({0, 1}) == doctest::Approx(1.0));
    CHECK(p.derivative({1, 1}) == doctest::Approx(1.0));
    CHECK(p.derivative({2, 0}) == doctest::Approx(0.0));
  }

  TEST_CASE("reciprocal inverts in the truncated ring") {
    auto x = Jet<double>::variable(1, 6, 0, 3.0);
    x = x * x + Jet<double>::constant(1, 6, 1.0);  // 1 + t^2 around t = 3
    const auto r = reciprocal(x);
    const auto one = r * x;
    CHECK(one.value() == doctest::Approx(1.0));
    for (int k = 1; k <= 6; ++k) CHECK(std::abs(one[{k, 0}]) < 1e-14);
    // d/dt 1/(1+t^2) = -2t/(1+t^2)^2 at t = 3.
    CHECK(r.derivative({1, 0}) == doctest::Approx(-6.0 / 100.0));
  }

  TEST_CASE("exp of a linear jet has geometric derivatives") {
    auto t = Jet<double>::variable(1, 5, 0, 0.5);
    const auto e = exp(t * 2.0);
    for (int k = 0; k <= 5; ++k) CHECK(e.derivative({k, 0}) == doctest::Approx(std::pow(2.0, k) * std::exp(1.0)));
  }

  TEST_CASE("index enumeration is lexicographic and complete") {
    std::vector<MultiIndex> seen;
    Jet<double>::for_each_index(2, 2, [&](const MultiIndex& a) { seen.push_back(a); });
    REQUIRE(seen.size() == 6);
    CHECK(seen.front() == MultiIndex{0, 0});
    for (const auto& a : seen) CHECK(order_of(a) <= 2);
    CHECK(factorial(5) == 120.0);
  }

  TEST_CASE("complex jets and casts") {
    auto x = Jet<double>::variable(1, 2, 0, 1.0).cast<std::complex<double>>();
    const auto sq = x * x * std::complex<double>(0, 1);
    CHECK(sq.derivative({2, 0}) == std::complex<double>(0, 2));
  }
}
