#pragma once

#include <optional>
#include <span>
#include <vector>

#include "corona/cpoly.hpp"
#include "corona/hnorm.hpp"

namespace corona {

// Largest pointwise residual the glue stage accepts from a point solution.
constexpr double kPointResidualGate = 0.25;
// Residual below which a point solution counts as exact.
constexpr double kExactResidual = 1e-9;

struct XgcdResult {
  CPoly gcd;  // monic
  CPoly a;
  CPoly b;
};

/// Extended Euclid over C[z]: a p + b q = gcd(p, q) with a monic gcd.
/// Remainders are rescaled to monic form at every step. A remainder that is
/// neither negligible nor safely nonzero raises ErrorKind::ill_conditioned.
XgcdResult xgcd(const CPoly& p, const CPoly& q);

enum class PointSolver { gcd_chain, least_norm };

const char* to_string(PointSolver solver);

/// Bezout solution g with g^T f = 1 at one parameter value.
struct PointSolution {
  std::vector<CPoly> g;
  NormCert norm_cert;      // sup_z |g(z)|_2
  NormCert residual_cert;  // sup_z |1 - g^T f|
  PointSolver solver = PointSolver::gcd_chain;

  bool exact() const noexcept { return residual_cert.hi <= kExactResidual; }
};

struct BezoutSettings {
  int boundary_samples = kDefaultBoundarySamples;
  int radial = 64;
  int angular = 128;
  int degree_cap_factor = 8;
};

/// Outcome of the gcd chain: a solution when the overall gcd is constant,
/// otherwise the zero-free common factor with its certificate.
struct ChainOutcome {
  std::optional<PointSolution> solution;
  CPoly gcd;
  NormCert gcd_inf;
};

/// Iterated xgcd over the tuple. Throws corona_violated when the common
/// factor cannot be certified zero-free on the closed disc.
ChainOutcome gcd_chain_bezout(std::span<const CPoly> f, const BezoutSettings& settings = {});

/// Minimum coefficient-norm g of degree <= `degree` for the linear system
/// coeffs(sum_k f_k g_k) = (1, 0, ..., 0); least squares when inconsistent.
PointSolution least_norm_bezout(std::span<const CPoly> f, int degree, const BezoutSettings& settings = {});

struct BezoutCerts {
  NormCert norm_cert;
  NormCert residual_cert;
};

BezoutCerts certify(std::span<const CPoly> f, std::span<const CPoly> g,
                    int samples = kDefaultBoundarySamples);

/// Exact-first point solve: gcd chain, then the least-norm solver on the
/// degree ladder D0, 2 D0, ... up to degree_cap_factor * D0.
PointSolution solve_point(std::span<const CPoly> f, const BezoutSettings& settings = {});

}  // namespace corona
