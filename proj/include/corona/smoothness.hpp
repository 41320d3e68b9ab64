#pragma once

#include <span>
#include <string>
#include <vector>

#include "corona/glue.hpp"

namespace corona {

/// s-jets of every component of g = gtilde / phi at (z, s), built from the
/// partition-of-unity jets, the family jets, a jet product for phi and the
/// jet reciprocal of phi.
std::vector<Jet<Complex>> g_jet(const GluedSolution& glued, Complex z, std::span<const double> s, int order);

/// d^a_s g(z, s); |a| must not exceed the configured order.
std::vector<Complex> g_partial(const GluedSolution& glued, Complex z, std::span<const double> s, const MultiIndex& a);

/// Deviation of a central-difference estimate of d^a g (|a| in {1, 2}) from
/// g_partial, relative to |d^a g| (absolute when that is below 1e-10). The
/// estimate Richardson-combines the stencils at steps h and h/2.
double fd_check(const GluedSolution& glued, Complex z, std::span<const double> s, const MultiIndex& a, double h);

struct CAlphaReport {
  int alpha = 0;
  double g_norm_estimate = 0.0;
  double f_norm_estimate = 0.0;
  double ratio = 0.0;
  std::string grid;
};

/// Grid estimates of |g|_{C^alpha(K; H-inf l2)} and the same for f: max over
/// the K grid, over |b| <= alpha and over boundary z samples of |d^b .|_2.
CAlphaReport cnorm_report(const GluedSolution& glued, int alpha, int z_samples = 256, int s_samples = 33);

/// omega_f(t) <= t * |f|_{C^1} on a convex parameter set.
double pathmetric_modulus_bound(double lipschitz_c1, double t);

}  // namespace corona
