#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "corona/polyalg.hpp"

namespace corona {

// Where a bracketed extremum was observed.
struct Witness {
  Complex z;
  SPoint s;
};

/// Certified bracket [lo, hi] for a supremum or infimum.
struct NormCert {
  double lo = 0.0;
  double hi = 0.0;
  std::string quantity;
  std::int64_t samples_used = 0;
  std::optional<Witness> witness;

  bool contains(double v, double tol = 0.0) const noexcept { return v >= lo - tol && v <= hi + tol; }
};

// Sampling resolution for infimum searches over (closed disc) x K.
struct DiscGrid {
  int radial = 64;
  int angular = 128;
  int k_per_axis = 33;
};

constexpr int kDefaultBoundarySamples = 512;

/// L = sum_j j |a_j|; |p(z) - p(w)| <= L |z - w| on the closed disc.
double coeff_lipschitz_bound(const CPoly& p);

/// Bracket for sup_{|z|<=1} |p(z)| from M equispaced boundary samples. The
/// boundary trace is L-Lipschitz in the angle, so on each arc between two
/// samples of moduli a and b it is at most (a + b + L h) / 2 with h = 2 pi / M.
NormCert sup_disc(const CPoly& p, int samples = kDefaultBoundarySamples);

/// Bracket for sup over the disc of (sum_k |f_k|^2)^(1/2). The squared modulus
/// is subharmonic, so boundary sampling suffices.
NormCert vec_sup_norm(std::span<const CPoly> tuple, int samples = kDefaultBoundarySamples);

/// Bracket for sup over disc x K of |f(z, s)|_2.
NormCert family_sup_norm(const ParamFamily& family, int samples = kDefaultBoundarySamples,
                         int k_per_axis = 33);

/// Bracket for inf over (closed disc) x K of |f(z, s)|_2: polar grid in z
/// crossed with a uniform K grid, hi = smallest sample, lo = hi - slack.
NormCert delta_lower(const ParamFamily& family, const DiscGrid& grid = {});

/// Bracket for inf over the closed disc of |p(z)|.
NormCert inf_disc(const CPoly& p, int radial = 64, int angular = 128);

inline bool corona_certified(const NormCert& delta) noexcept { return delta.lo > 0.0; }

// Throws corona_violated when `delta` does not certify a positive lower bound.
void require_corona(const NormCert& delta, const std::string& stage = "check");

/// Bound on sup over disc x K of |d f / dz|_2 from coefficient sums.
double z_lipschitz_bound(const ParamFamily& family);

}  // namespace corona
