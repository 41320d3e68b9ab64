#include "doctest.h"

#include <cmath>
#include <limits>

#include "corona/cover.hpp"
#include "corona/error.hpp"
#include "support.hpp"

using namespace corona;

namespace {

SPoint random_point(const Box& k) {
  SPoint s(k.dim());
  for (int i = 0; i < k.dim(); ++i) s[i] = testing::uniform(k.lo(i), k.hi(i));
  return s;
}

double dist(const SPoint& a, const SPoint& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

}  // namespace

TEST_SUITE("cover") {
  TEST_CASE("s-Lipschitz bound of the worked family") {
    CHECK(lipschitz_s_bound(testing::worked()) == doctest::Approx(1.0 / 3.0));
    CHECK(lipschitz_s_bound(testing::frozen()) == 0.0);
  }

  TEST_CASE("modulus inverse") {
    CHECK(modulus_inverse(0.5, 0.0) == kInfiniteRadius);
    CHECK(modulus_inverse(0.5, 2.0) == doctest::Approx(0.25));
    CHECK_THROWS_AS(modulus_inverse(0.0, 1.0), CoronaError);
  }

  TEST_CASE("cover sizes") {
    const auto c = build_cover(testing::unit_interval(), 0.3);
    REQUIRE(c.size() == 2);
    CHECK(c.centers[0][0] == doctest::Approx(0.25));
    CHECK(c.centers[1][0] == doctest::Approx(0.75));
    CHECK(build_cover(Box({0.0, 0.0}, {1.0, 1.0}), 0.5).size() == 4);
    const auto inf = build_cover(testing::unit_interval(), kInfiniteRadius);
    CHECK(inf.size() == 1);
    CHECK(inf.infinite());
    CHECK(inf.centers[0] == SPoint{0.5});
  }

  TEST_CASE("cover soundness on a dense scan") {
    for (double r : {0.07, 0.2, 0.45}) {
      const Box k({0.0, -1.0}, {1.0, 0.5});
      const auto c = build_cover(k, r);
      double worst = 0.0;
      for (const auto& s : k.grid(100)) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& ctr : c.centers) best = std::min(best, dist(s, ctr));
        worst = std::max(worst, best);
      }
      CHECK(worst < r);
      CHECK(worst <= kCoverFill * r + 1e-12);
    }
  }

  TEST_CASE("bump profile") {
    CHECK(bump(0.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(bump(1.0) == 0.0);
    CHECK(bump(-1.5) == 0.0);
    CHECK(bump(0.4) == bump(-0.4));
  }

  TEST_CASE("partition of unity identity and support") {
    const Box k({0.0, 0.0}, {1.0, 2.0});
    const double r = 0.35;
    const PartitionOfUnity pou(build_cover(k, r), 2);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const SPoint s = random_point(k);
      const auto eta = pou.eval(s);
      double sum = 0.0;
      for (std::size_t j = 0; j < eta.size(); ++j) {
        CHECK(eta[j] >= 0.0);
        if (dist(s, pou.cover().centers[j]) >= r) CHECK(eta[j] == 0.0);
        sum += eta[j];
      }
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("derivative sum rule") {
    const Box k({0.0, 0.0}, {1.0, 1.0});
    const PartitionOfUnity pou(build_cover(k, 0.3), 2);
    for (int i = 0; i < 200; ++i) {
      const SPoint s = random_point(k);
      Jet<double>::for_each_index(2, 2, [&](const MultiIndex& a) {
        if (order_of(a) == 0) return;
        double sum = 0.0;
        for (double v : pou.deriv(s, a)) sum += v;
        CHECK(std::abs(sum) <= 1e-9);
      });
    }
  }

  TEST_CASE("derivatives agree with central differences") {
    const Box k({0.0}, {1.0});
    const double r = 0.3;
    const PartitionOfUnity pou(build_cover(k, r), 1);
    const double h = 1e-4 * r;
    int tested = 0;
    while (tested < 100) {
      const SPoint s = random_point(k);
      if (s[0] < 2 * h || s[0] > 1 - 2 * h || pou.support_edge_distance(s) < 0.05 * r) continue;
      ++tested;
      const auto d1 = pou.deriv(s, {1, 0}), d2 = pou.deriv(s, {2, 0});
      // Central differences at h and h/2, Richardson-combined.
      auto central = [&](double t, std::size_t j, int order) {
        const auto p = pou.eval(SPoint{s[0] + t}), m = pou.eval(SPoint{s[0] - t}), c = pou.eval(s);
        return order == 1 ? (p[j] - m[j]) / (2 * t) : (p[j] - 2 * c[j] + m[j]) / (t * t);
      };
      for (std::size_t j = 0; j < d1.size(); ++j) {
        const double fd1 = (4 * central(h / 2, j, 1) - central(h, j, 1)) / 3;
        const double fd2 = (4 * central(h / 2, j, 2) - central(h, j, 2)) / 3;
        CHECK(std::abs(fd1 - d1[j]) / std::max(std::abs(d1[j]), 1.0) <= 1e-6);
        CHECK(std::abs(fd2 - d2[j]) / std::max(std::abs(d2[j]), 1.0) <= 1e-4);
      }
    }
  }

  TEST_CASE("single-centre partitions are constant") {
    const PartitionOfUnity pou(build_cover(testing::unit_interval(), kInfiniteRadius), 1);
    CHECK(pou.eval(SPoint{0.2}) == std::vector<double>{1.0});
    CHECK(pou.deriv(SPoint{0.2}, {1, 0}) == std::vector<double>{0.0});
    const auto grid = testing::unit_interval().grid(11);
    CHECK(pou_cnorm(pou, 0, grid).estimate == 1.0);
    CHECK(pou_cnorm(pou, 2, grid).estimate == 1.0);
  }

  TEST_CASE("partition norm estimates") {
    const PartitionOfUnity pou(Cover{{{0.25}, {0.75}}, 0.6}, 1);
    const auto n0 = pou_cnorm(pou, 0, testing::unit_interval().grid(101));
    CHECK(n0.estimate >= 1.0);
    CHECK(n0.estimate <= 2.0);
    const auto coarse = pou_cnorm(pou, 1, testing::unit_interval().grid(201));
    const auto fine = pou_cnorm(pou, 1, testing::unit_interval().grid(401));
    CHECK(std::isfinite(coarse.estimate));
    CHECK(coarse.estimate > 0.0);
    CHECK(std::abs(fine.estimate - coarse.estimate) <= 0.05 * fine.estimate);
    CHECK(coarse.envelope > 0.0);
    CHECK(bump_derivative_constant(0) == doctest::Approx(1.0));
  }
}
