#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "corona/polyalg.hpp"

namespace testing {

using corona::Complex;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Complex random_complex(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }

inline corona::CPoly random_poly(int degree, double scale = 1.0) {
  std::vector<Complex> c(degree + 1);
  for (auto& x : c) x = random_complex(scale);
  if (std::abs(c.back()) < 0.1) c.back() = 0.5;
  return corona::CPoly(c);
}

// Power-sum evaluation, independent of the Horner scheme under test.
inline Complex power_sum(const std::vector<Complex>& c, Complex z) {
  Complex acc{};
  for (std::size_t j = 0; j < c.size(); ++j) acc += c[j] * std::pow(z, static_cast<double>(j));
  return acc;
}

inline Complex random_disc_point() {
  const double r = std::sqrt(uniform(0.0, 1.0));
  return std::polar(r, uniform(0.0, 2.0 * std::numbers::pi));
}

// Term-list builder: {z power, s exponents, coefficient}.
struct Term {
  int z;
  corona::MultiIndex s;
  Complex c;
};

inline corona::ParamFamily family(corona::Box box, const std::vector<std::vector<Term>>& comps) {
  std::vector<corona::ZPoly> out;
  for (const auto& comp : comps) {
    corona::ZPoly zp;
    for (const auto& t : comp) {
      while (static_cast<int>(zp.size()) <= t.z) zp.push_back(corona::SPoly(box.dim()));
      zp[t.z].add_term(t.s, t.c);
    }
    out.push_back(zp);
  }
  return corona::ParamFamily(box, out);
}

inline corona::Box unit_interval() { return corona::Box({0.0}, {1.0}); }

// (z, (2 + s) - z) * scale on [0, 1].
inline corona::ParamFamily worked(double scale = 1.0 / 3.0) {
  return family(unit_interval(), {{{1, {0, 0}, scale}}, {{0, {0, 0}, 2 * scale}, {0, {1, 0}, scale}, {1, {0, 0}, -scale}}});
}

// (z/3, (2 + 4 s - z)/9): needs several cover centres.
inline corona::ParamFamily steep() {
  return family(unit_interval(),
                {{{1, {0, 0}, 1.0 / 3}}, {{0, {0, 0}, 2.0 / 9}, {0, {1, 0}, 4.0 / 9}, {1, {0, 0}, -1.0 / 9}}});
}

// (z/2, (2 + s1 - s2 z)/5) on [0, 1]^2.
inline corona::ParamFamily plane() {
  return family(corona::Box({0.0, 0.0}, {1.0, 1.0}),
                {{{1, {0, 0}, 0.5}}, {{0, {0, 0}, 0.4}, {0, {1, 0}, 0.2}, {1, {0, 1}, -0.2}}});
}

// (z, z - s/4): common zero at (0, 0).
inline corona::ParamFamily common_zero() {
  return family(unit_interval(), {{{1, {0, 0}, 1.0}}, {{1, {0, 0}, 1.0}, {0, {1, 0}, -0.25}}});
}

// s-independent, pointwise solvable data.
inline corona::ParamFamily frozen() {
  return family(unit_interval(), {{{1, {0, 0}, 0.5}}, {{0, {0, 0}, 0.5}, {1, {0, 0}, -0.25}}});
}

}  // namespace testing
