#pragma once

#include <span>
#include <vector>

#include "corona/bezout.hpp"
#include "corona/cover.hpp"
#include "corona/hnorm.hpp"
#include "corona/polyalg.hpp"

namespace corona {

// Gate on sup over disc x K of |1 - gtilde^T f|.
constexpr double kGlueResidualGate = 0.5;

struct SolverSettings {
  int boundary_samples = kDefaultBoundarySamples;
  DiscGrid delta_grid;
  int residual_k_samples = 33;
  int order = 2;
  int max_refinements = 6;
  int degree_cap_factor = 8;

  BezoutSettings bezout() const {
    return {boundary_samples, delta_grid.radial, delta_grid.angular, degree_cap_factor};
  }
  friend bool operator==(const SolverSettings& a, const SolverSettings& b) {
    return a.boundary_samples == b.boundary_samples && a.delta_grid.radial == b.delta_grid.radial &&
           a.delta_grid.angular == b.delta_grid.angular && a.delta_grid.k_per_axis == b.delta_grid.k_per_axis &&
           a.residual_k_samples == b.residual_k_samples && a.order == b.order &&
           a.max_refinements == b.max_refinements && a.degree_cap_factor == b.degree_cap_factor;
  }
};

/// Point solutions aligned with the cover centres.
struct PointSolutionSet {
  std::vector<PointSolution> solutions;
  double C0 = 0.0;  // max_k solutions[k].norm_cert.hi

  bool all_exact() const noexcept;
};

PointSolutionSet make_point_set(std::vector<PointSolution> solutions);

/// Solves the Bezout equation at every cover centre.
PointSolutionSet solve_at_samples(const ParamFamily& family, const Cover& cover, const SolverSettings& settings = {});

struct RadiusCheck {
  bool pass = false;
  double budget = 0.0;        // 1/2 with exact point solutions, 1/4 otherwise
  double perturbation = 0.0;  // L_s * r * C0
  double margin = 0.0;        // budget / C0 - L_s * r
};

/// L_s r C0 <= 1/2 (all points exact) or <= 1/4 (least-norm fallback in play).
RadiusCheck radius_check(double lipschitz_s, double radius, double C0, bool all_exact);

struct SolveDiagnostics {
  NormCert delta_cert;
  NormCert sup_cert;
  double lipschitz_s = 0.0;
  double pilot_C0 = 0.0;
  int refinements = 0;  // radius halvings used
  RadiusCheck radius;
};

/// The glued family g(z, s) = gtilde(z, s) / phi(z, s), where
/// gtilde = sum_k eta_k(s) g_{s_k}(z) and phi = gtilde^T f.
class GluedSolution {
 public:
  GluedSolution(ParamFamily family, Cover cover, std::vector<PointSolution> points, NormCert residual_cert,
                SolverSettings settings, SolveDiagnostics diagnostics = {});

  const ParamFamily& family() const noexcept { return family_; }
  const PartitionOfUnity& pou() const noexcept { return pou_; }
  const PointSolutionSet& points() const noexcept { return points_; }
  const NormCert& residual_cert() const noexcept { return residual_cert_; }
  const SolverSettings& settings() const noexcept { return settings_; }
  const SolveDiagnostics& diagnostics() const noexcept { return diagnostics_; }
  double C0() const noexcept { return points_.C0; }
  int order() const noexcept { return settings_.order; }

 private:
  ParamFamily family_;
  PartitionOfUnity pou_;
  PointSolutionSet points_;
  NormCert residual_cert_;
  SolverSettings settings_;
  SolveDiagnostics diagnostics_;
};

std::vector<Complex> gtilde_eval(const GluedSolution& glued, Complex z, std::span<const double> s);

// phi = gtilde^T f.
Complex phi_eval(const GluedSolution& glued, Complex z, std::span<const double> s);

/// g = gtilde / phi; throws internal when |phi| < 1/2 at the point.
std::vector<Complex> g_eval(const GluedSolution& glued, Complex z, std::span<const double> s);

/// Bracket for sup over disc x K of |1 - phi|. The lower end is the largest
/// sampled value; the upper end uses that 1 - phi is a convex combination of
/// 1 - g_k^T f(., s) over centres whose ball contains s, each bounded over
/// disc x (ball box cap K) by sampling with Lipschitz slack.
NormCert residual_certify(const ParamFamily& family, const PartitionOfUnity& pou, const PointSolutionSet& points,
                          const SolverSettings& settings = {});

inline NormCert residual_certify(const GluedSolution& glued) {
  return residual_certify(glued.family(), glued.pou(), glued.points(), glued.settings());
}

/// Full pipeline: certify (C), pilot C0, cover, point solves, radius check,
/// residual gate; halves the radius on failure up to max_refinements times.
GluedSolution solve(const ParamFamily& family, const SolverSettings& settings = {});

}  // namespace corona
