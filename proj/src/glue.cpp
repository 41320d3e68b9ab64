#include "corona/glue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "corona/error.hpp"
#include "corona/parallel.hpp"

namespace corona {

namespace {

std::string describe(std::span<const double> s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + std::to_string(s[i]);
  return out + ")";
}

Complex bilinear(std::span<const Complex> a, std::span<const Complex> b) {
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Solves at every point, reusing cached results for points seen before.
std::vector<PointSolution> solve_points(const ParamFamily& family, const std::vector<SPoint>& points,
                                        const SolverSettings& settings, std::map<SPoint, PointSolution>* cache,
                                        const std::string& stage) {
  std::vector<PointSolution> out(points.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (cache) {
      auto it = cache->find(points[i]);
      if (it != cache->end()) {
        out[i] = it->second;
        continue;
      }
    }
    todo.push_back(i);
  }
  const auto bezout = settings.bezout();
  parallel_for(todo.size(), [&](std::size_t t) {
    const std::size_t i = todo[t];
    try {
      const auto tuple = family.at(points[i]);
      out[i] = solve_point(tuple, bezout);
    } catch (const CoronaError& e) {
      throw CoronaError(e.kind(), std::string(e.what()) + " [centre s=" + describe(points[i]) + "]", stage);
    }
  });
  if (cache)
    for (std::size_t i : todo) cache->emplace(points[i], out[i]);
  return out;
}

// Local sampling box [c - r, c + r] cap K for one centre.
Box local_box(const Box& domain, const SPoint& centre, double radius) {
  if (radius == kInfiniteRadius) return domain;
  std::vector<double> lo(centre.size()), hi(centre.size());
  for (std::size_t i = 0; i < centre.size(); ++i) {
    lo[i] = std::max(domain.lo(static_cast<int>(i)), centre[i] - radius);
    hi[i] = std::min(domain.hi(static_cast<int>(i)), centre[i] + radius);
    if (!(hi[i] > lo[i])) hi[i] = std::nextafter(lo[i], std::numeric_limits<double>::infinity());
  }
  return Box(std::move(lo), std::move(hi));
}

}  // namespace

bool PointSolutionSet::all_exact() const noexcept {
  return std::all_of(solutions.begin(), solutions.end(), [](const PointSolution& p) { return p.exact(); });
}

PointSolutionSet make_point_set(std::vector<PointSolution> solutions) {
  PointSolutionSet set;
  set.solutions = std::move(solutions);
  for (const auto& p : set.solutions) set.C0 = std::max(set.C0, p.norm_cert.hi);
  return set;
}

PointSolutionSet solve_at_samples(const ParamFamily& family, const Cover& cover, const SolverSettings& settings) {
  return make_point_set(solve_points(family, cover.centers, settings, nullptr, "solve_at_samples"));
}

RadiusCheck radius_check(double lipschitz_s, double radius, double C0, bool all_exact) {
  RadiusCheck rc;
  rc.budget = all_exact ? 0.5 : 0.25;
  const double shift = lipschitz_s == 0.0 ? 0.0 : lipschitz_s * radius;
  rc.perturbation = shift * C0;
  rc.margin = rc.budget / C0 - shift;
  rc.pass = rc.perturbation <= rc.budget;
  return rc;
}

GluedSolution::GluedSolution(ParamFamily family, Cover cover, std::vector<PointSolution> points,
                             NormCert residual_cert, SolverSettings settings, SolveDiagnostics diagnostics)
    : family_(std::move(family)),
      pou_(std::move(cover), family_.dim()),
      points_(make_point_set(std::move(points))),
      residual_cert_(std::move(residual_cert)),
      settings_(settings),
      diagnostics_(std::move(diagnostics)) {
  if (points_.solutions.size() != pou_.size())
    throw CoronaError(ErrorKind::domain, "point solutions do not match the cover size");
  for (const auto& p : points_.solutions)
    if (p.g.size() != family_.size())
      throw CoronaError(ErrorKind::domain, "point solution length differs from the family size");
}

std::vector<Complex> gtilde_eval(const GluedSolution& glued, Complex z, std::span<const double> s) {
  const auto w = glued.pou().eval(s);
  std::vector<Complex> out(glued.family().size(), Complex{});
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == 0.0) continue;
    const auto& g = glued.points().solutions[k].g;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w[k] * g[i](z);
  }
  return out;
}

Complex phi_eval(const GluedSolution& glued, Complex z, std::span<const double> s) {
  const auto gt = gtilde_eval(glued, z, s);
  const auto f = eval_family(glued.family(), z, s);
  return bilinear(gt, f);
}

std::vector<Complex> g_eval(const GluedSolution& glued, Complex z, std::span<const double> s) {
  auto gt = gtilde_eval(glued, z, s);
  const auto f = eval_family(glued.family(), z, s);
  const Complex phi = bilinear(gt, f);
  if (std::abs(phi) < 0.5)
    throw CoronaError(ErrorKind::internal, "|phi| = " + std::to_string(std::abs(phi)) + " < 1/2 at z=(" +
                                               std::to_string(z.real()) + "," + std::to_string(z.imag()) +
                                               ") s=" + describe(s) + "; residual certificate is wrong");
  for (auto& x : gt) x /= phi;
  return gt;
}

NormCert residual_certify(const ParamFamily& family, const PartitionOfUnity& pou, const PointSolutionSet& points,
                          const SolverSettings& settings) {
  const int m = settings.boundary_samples;
  const int n = settings.residual_k_samples;
  if (m < 8 || n < 1) throw CoronaError(ErrorKind::domain, "residual grid too small");
  const Box& domain = family.domain();
  const auto& centres = pou.cover().centers;
  const double radius = pou.cover().radius;

  NormCert cert;
  cert.quantity = "sup |1 - gtilde^T f|";

  // Sampled lower end over boundary z x K grid.
  const auto sgrid = domain.grid(n);
  std::vector<std::pair<double, Witness>> sampled(sgrid.size());
  parallel_for(sgrid.size(), [&](std::size_t i) {
    const auto w = pou.eval(sgrid[i]);
    const auto f = family.at(sgrid[i]);
    std::vector<CPoly> gt(family.size());
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k] != 0.0)
        for (std::size_t c = 0; c < gt.size(); ++c) gt[c] += points.solutions[k].g[c] * w[k];
    CPoly residual = CPoly::constant(1.0);
    for (std::size_t c = 0; c < gt.size(); ++c) residual -= gt[c] * f[c];
    const auto local = sup_disc(residual, m);
    sampled[i] = {local.lo, Witness{local.witness->z, sgrid[i]}};
  });
  cert.lo = 0.0;
  for (const auto& [v, where] : sampled)
    if (v > cert.lo || !cert.witness) {
      cert.lo = v;
      cert.witness = where;
    }

  // Certified upper end, centre by centre.
  const double ls = lipschitz_s_bound(family);
  std::vector<double> upper(centres.size(), 0.0);
  parallel_for(centres.size(), [&](std::size_t k) {
    const Box box = local_box(domain, centres[k], radius);
    int nodes = 1;
    for (int i = 0; i < domain.dim(); ++i) {
      const double global_step = n > 1 ? domain.length(i) / (n - 1) : domain.length(i);
      nodes = std::max(nodes, 1 + static_cast<int>(std::ceil(box.length(i) / global_step)));
    }
    const auto& g = points.solutions[k].g;
    double worst = 0.0;
    for (const auto& s : box.grid(nodes)) {
      const auto f = family.at(s);
      CPoly residual = CPoly::constant(1.0);
      for (std::size_t c = 0; c < g.size(); ++c) residual -= g[c] * f[c];
      worst = std::max(worst, sup_disc(residual, m).hi);
    }
    upper[k] = worst + points.solutions[k].norm_cert.hi * ls * box.grid_covering_radius(nodes);
  });
  cert.hi = std::max(cert.lo, *std::max_element(upper.begin(), upper.end()));
  cert.samples_used = static_cast<std::int64_t>(sgrid.size()) * m;
  return cert;
}

GluedSolution solve(const ParamFamily& family, const SolverSettings& settings) {
  if (settings.order < 0 || settings.order > kMaxJetOrder)
    throw CoronaError(ErrorKind::config, "order r must lie in [0, 6]", "solve");
  SolveDiagnostics diag;
  diag.delta_cert = delta_lower(family, settings.delta_grid);
  require_corona(diag.delta_cert, "check");
  diag.sup_cert = family_sup_norm(family, settings.boundary_samples, settings.delta_grid.k_per_axis);
  diag.lipschitz_s = lipschitz_s_bound(family);

  std::map<SPoint, PointSolution> cache;
  std::vector<SPoint> pilot = family.domain().corners();
  pilot.push_back(family.domain().midpoint());
  const auto pilot_set = make_point_set(solve_points(family, pilot, settings, &cache, "pilot"));
  diag.pilot_C0 = pilot_set.C0;

  const double eps = (pilot_set.all_exact() ? 0.5 : 0.25) / pilot_set.C0;
  double radius = modulus_inverse(eps, diag.lipschitz_s);

  std::string last_failure;
  for (int round = 0; round <= settings.max_refinements; ++round) {
    diag.refinements = round;
    Cover cover = build_cover(family.domain(), radius);
    auto set = make_point_set(solve_points(family, cover.centers, settings, &cache, "solve_at_samples"));
    diag.radius = radius_check(diag.lipschitz_s, radius, set.C0, set.all_exact());
    const auto next_radius = [&] {
      if (radius == kInfiniteRadius) {
        double diag2 = 0.0;
        for (int i = 0; i < family.dim(); ++i) diag2 += family.domain().length(i) * family.domain().length(i);
        return 0.5 * std::sqrt(diag2);
      }
      return 0.5 * radius;
    };
    if (!diag.radius.pass) {
      last_failure = "radius_check: L_s r C0 = " + std::to_string(diag.radius.perturbation) + " exceeds budget " +
                     std::to_string(diag.radius.budget);
      radius = next_radius();
      continue;
    }
    PartitionOfUnity pou(cover, family.dim());
    NormCert residual = residual_certify(family, pou, set, settings);
    if (residual.hi > kGlueResidualGate) {
      last_failure = "residual_certify: sup |1 - phi| <= " + std::to_string(residual.hi) + " exceeds 1/2";
      radius = next_radius();
      continue;
    }
    return GluedSolution(family, std::move(cover), std::move(set.solutions), std::move(residual), settings,
                         std::move(diag));
  }
  throw CoronaError(ErrorKind::refinement_exhausted,
                    "refinement exhausted after " + std::to_string(settings.max_refinements) +
                        " halvings; last failure: " + last_failure,
                    "refinement");
}

}  // namespace corona
