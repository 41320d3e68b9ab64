#include "corona/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "corona/error.hpp"
#include "corona/parallel.hpp"

namespace corona {

namespace {

void check_order(const GluedSolution& glued, int order) {
  if (order < 0 || order > glued.order())
    throw CoronaError(ErrorKind::domain, "derivative order " + std::to_string(order) +
                                             " exceeds the configured order r = " + std::to_string(glued.order()));
}

}  // namespace

std::vector<Jet<Complex>> g_jet(const GluedSolution& glued, Complex z, std::span<const double> s, int order) {
  check_order(glued, order);
  if (!glued.family().domain().contains(s)) throw CoronaError(ErrorKind::domain, "parameter point lies outside K");
  const int d = glued.family().dim();
  const auto eta = glued.pou().jets(s, order);
  const auto f = glued.family().jet(z, s, order);
  const std::size_t nf = glued.family().size();

  std::vector<Jet<Complex>> gt(nf, Jet<Complex>(d, order));
  for (std::size_t k = 0; k < eta.size(); ++k) {
    if (eta[k].value() == 0.0) {
      // Outside the open support every derivative of eta_k vanishes too.
      bool all_zero = true;
      Jet<double>::for_each_index(d, order, [&](const MultiIndex& a) { all_zero = all_zero && eta[k][a] == 0.0; });
      if (all_zero) continue;
    }
    const auto ek = eta[k].cast<Complex>();
    const auto& g = glued.points().solutions[k].g;
    for (std::size_t i = 0; i < nf; ++i) gt[i] += ek * g[i](z);
  }
  Jet<Complex> phi(d, order);
  for (std::size_t i = 0; i < nf; ++i) phi += gt[i] * f[i];
  if (std::abs(phi.value()) < 0.5)
    throw CoronaError(ErrorKind::internal, "|phi| < 1/2 while differentiating g; residual certificate is wrong");
  const auto inv = reciprocal(phi);
  for (auto& x : gt) x = x * inv;
  return gt;
}

std::vector<Complex> g_partial(const GluedSolution& glued, Complex z, std::span<const double> s,
                               const MultiIndex& a) {
  const auto jets = g_jet(glued, z, s, order_of(a));
  std::vector<Complex> out;
  out.reserve(jets.size());
  for (const auto& j : jets) out.push_back(j.derivative(a));
  return out;
}

double fd_check(const GluedSolution& glued, Complex z, std::span<const double> s, const MultiIndex& a, double h) {
  const int order = order_of(a);
  if (order < 1 || order > 2) throw CoronaError(ErrorKind::domain, "fd_check supports |alpha| in {1, 2}");
  const auto exact = g_partial(glued, z, s, a);
  auto shifted = [&](double d0, double d1) {
    SPoint p(s.begin(), s.end());
    p[0] += d0;
    if (p.size() > 1) p[1] += d1;
    return g_eval(glued, z, p);
  };
  const int i0 = a[0] > 0 ? 0 : 1;
  auto central = [&](double t) {
    std::vector<Complex> fd(exact.size());
    const double d0 = i0 == 0 ? t : 0.0, d1 = i0 == 0 ? 0.0 : t;
    if (order == 1) {
      const auto plus = shifted(d0, d1), minus = shifted(-d0, -d1);
      for (std::size_t i = 0; i < fd.size(); ++i) fd[i] = (plus[i] - minus[i]) / (2.0 * t);
    } else if (a[0] == 1 && a[1] == 1) {
      const auto pp = shifted(t, t), pm = shifted(t, -t), mp = shifted(-t, t), mm = shifted(-t, -t);
      for (std::size_t i = 0; i < fd.size(); ++i) fd[i] = (pp[i] - pm[i] - mp[i] + mm[i]) / (4.0 * t * t);
    } else {
      const auto plus = shifted(d0, d1), mid = shifted(0.0, 0.0), minus = shifted(-d0, -d1);
      for (std::size_t i = 0; i < fd.size(); ++i) fd[i] = (plus[i] - 2.0 * mid[i] + minus[i]) / (t * t);
    }
    return fd;
  };
  // One Richardson step on the stencils at h and h/2 cancels the h^2 term.
  const auto coarse = central(h), fine = central(h / 2.0);
  std::vector<Complex> fd(exact.size());
  for (std::size_t i = 0; i < fd.size(); ++i) fd[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  std::vector<Complex> diff(fd.size());
  for (std::size_t i = 0; i < fd.size(); ++i) diff[i] = fd[i] - exact[i];
  const double scale = l2_norm(exact);
  return scale < 1e-10 ? l2_norm(diff) : l2_norm(diff) / scale;
}

CAlphaReport cnorm_report(const GluedSolution& glued, int alpha, int z_samples, int s_samples) {
  check_order(glued, alpha);
  if (z_samples < 1 || s_samples < 1) throw CoronaError(ErrorKind::domain, "cnorm_report needs a nonempty grid");
  const int d = glued.family().dim();
  const auto sgrid = glued.family().domain().grid(s_samples);
  std::vector<std::pair<double, double>> local(sgrid.size(), {0.0, 0.0});
  parallel_for(sgrid.size(), [&](std::size_t i) {
    for (int m = 0; m < z_samples; ++m) {
      const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * m / z_samples);
      const auto gj = g_jet(glued, z, sgrid[i], alpha);
      const auto fj = glued.family().jet(z, sgrid[i], alpha);
      Jet<Complex>::for_each_index(d, alpha, [&](const MultiIndex& a) {
        double g2 = 0.0, f2 = 0.0;
        for (const auto& j : gj) g2 += std::norm(j.derivative(a));
        for (const auto& j : fj) f2 += std::norm(j.derivative(a));
        local[i].first = std::max(local[i].first, std::sqrt(g2));
        local[i].second = std::max(local[i].second, std::sqrt(f2));
      });
    }
  });
  CAlphaReport report;
  report.alpha = alpha;
  for (const auto& [g, f] : local) {
    report.g_norm_estimate = std::max(report.g_norm_estimate, g);
    report.f_norm_estimate = std::max(report.f_norm_estimate, f);
  }
  report.ratio = report.g_norm_estimate / std::max(report.f_norm_estimate, std::numeric_limits<double>::min());
  std::string axes = std::to_string(s_samples);
  for (int i = 1; i < d; ++i) axes += "x" + std::to_string(s_samples);
  report.grid = std::to_string(z_samples) + " boundary z x " + axes + " s";
  return report;
}

double pathmetric_modulus_bound(double lipschitz_c1, double t) {
  if (t < 0.0) throw CoronaError(ErrorKind::domain, "modulus argument must be nonnegative");
  return t * lipschitz_c1;
}

}  // namespace corona
