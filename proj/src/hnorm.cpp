#include "corona/hnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "corona/cover.hpp"
#include "corona/error.hpp"
#include "corona/parallel.hpp"

namespace corona {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex boundary_point(int m, int samples) {
  // (2 pi m) / M keeps the nodes of M bit-identical inside the nodes of 2M.
  return std::polar(1.0, kTwoPi * m / samples);
}

void check_samples(int samples) {
  if (samples < 8) throw CoronaError(ErrorKind::domain, "boundary sample count must be at least 8");
}

// Upper bound for the maximum of an L-Lipschitz (in angle) periodic trace
// known at equispaced nodes.
double arc_upper_bound(const std::vector<double>& values, double lipschitz) {
  const std::size_t m = values.size();
  double lo = *std::max_element(values.begin(), values.end());
  if (lipschitz == 0.0) return lo;
  const double h = kTwoPi / static_cast<double>(m);
  double hi = lo;
  for (std::size_t i = 0; i < m; ++i) {
    const double a = values[i];
    const double b = values[(i + 1) % m];
    hi = std::max(hi, 0.5 * (a + b + lipschitz * h));
  }
  return hi;
}

struct Extremum {
  double value;
  Witness where;
};

double polar_covering_radius(int radial, int angular) {
  return 0.5 / (radial - 1) + std::numbers::pi / angular;
}

void check_polar(int radial, int angular) {
  if (radial < 2 || angular < 3)
    throw CoronaError(ErrorKind::domain, "polar grid needs at least 2 radii and 3 angles");
}

// Minimum of |f(z)|_2 over the polar grid (radius 0 visited once).
Extremum polar_min(std::span<const CPoly> tuple, int radial, int angular) {
  Extremum best{std::numeric_limits<double>::infinity(), {}};
  std::vector<Complex> vals(tuple.size());
  for (int i = 0; i < radial; ++i) {
    const double rho = i == radial - 1 ? 1.0 : static_cast<double>(i) / (radial - 1);
    const int n_angles = i == 0 ? 1 : angular;
    for (int j = 0; j < n_angles; ++j) {
      const Complex z = std::polar(rho, kTwoPi * j / angular);
      for (std::size_t k = 0; k < tuple.size(); ++k) vals[k] = tuple[k](z);
      const double v = l2_norm(vals);
      if (v < best.value) best = {v, {z, {}}};
    }
  }
  return best;
}

}  // namespace

double coeff_lipschitz_bound(const CPoly& p) {
  double l = 0.0;
  for (std::size_t j = 1; j < p.size(); ++j) l += static_cast<double>(j) * std::abs(p[j]);
  return l;
}

NormCert sup_disc(const CPoly& p, int samples) {
  check_samples(samples);
  std::vector<double> values(static_cast<std::size_t>(samples));
  for (int m = 0; m < samples; ++m) values[m] = std::abs(p(boundary_point(m, samples)));
  const auto arg = std::max_element(values.begin(), values.end()) - values.begin();
  NormCert cert;
  cert.quantity = "H∞ norm";
  cert.samples_used = samples;
  cert.lo = values[arg];
  cert.hi = arc_upper_bound(values, coeff_lipschitz_bound(p));
  cert.witness = Witness{boundary_point(static_cast<int>(arg), samples), {}};
  return cert;
}

NormCert vec_sup_norm(std::span<const CPoly> tuple, int samples) {
  check_samples(samples);
  if (tuple.empty()) throw CoronaError(ErrorKind::domain, "vec_sup_norm needs a nonempty tuple");
  double l2 = 0.0;
  for (const auto& p : tuple) l2 += std::pow(coeff_lipschitz_bound(p), 2);
  std::vector<double> values(static_cast<std::size_t>(samples));
  std::vector<Complex> vals(tuple.size());
  for (int m = 0; m < samples; ++m) {
    const Complex z = boundary_point(m, samples);
    for (std::size_t k = 0; k < tuple.size(); ++k) vals[k] = tuple[k](z);
    values[m] = l2_norm(vals);
  }
  const auto arg = std::max_element(values.begin(), values.end()) - values.begin();
  NormCert cert;
  cert.quantity = "l2 sup norm";
  cert.samples_used = samples;
  cert.lo = values[arg];
  cert.hi = arc_upper_bound(values, std::sqrt(l2));
  cert.witness = Witness{boundary_point(static_cast<int>(arg), samples), {}};
  return cert;
}

NormCert family_sup_norm(const ParamFamily& family, int samples, int k_per_axis) {
  check_samples(samples);
  if (k_per_axis < 1) throw CoronaError(ErrorKind::domain, "K grid needs at least one point per axis");
  const auto grid = family.domain().grid(k_per_axis);
  std::vector<NormCert> local(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto tuple = family.at(grid[i]);
    local[i] = vec_sup_norm(tuple, samples);
  });
  NormCert cert;
  cert.quantity = "l2 sup norm over disc x K";
  cert.lo = -1.0;
  cert.hi = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    cert.samples_used += local[i].samples_used;
    cert.hi = std::max(cert.hi, local[i].hi);
    if (local[i].lo > cert.lo) {
      cert.lo = local[i].lo;
      cert.witness = Witness{local[i].witness->z, grid[i]};
    }
  }
  const double ls = lipschitz_s_bound(family);
  cert.hi += ls * family.domain().grid_covering_radius(k_per_axis);
  return cert;
}

NormCert delta_lower(const ParamFamily& family, const DiscGrid& grid) {
  check_polar(grid.radial, grid.angular);
  if (grid.k_per_axis < 1) throw CoronaError(ErrorKind::domain, "K grid needs at least one point per axis");
  const auto sgrid = family.domain().grid(grid.k_per_axis);
  std::vector<Extremum> local(sgrid.size());
  parallel_for(sgrid.size(), [&](std::size_t i) {
    const auto tuple = family.at(sgrid[i]);
    local[i] = polar_min(tuple, grid.radial, grid.angular);
  });
  NormCert cert;
  cert.quantity = "corona delta";
  cert.hi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sgrid.size(); ++i) {
    if (local[i].value < cert.hi) {
      cert.hi = local[i].value;
      cert.witness = Witness{local[i].where.z, sgrid[i]};
    }
  }
  const std::int64_t per_s = 1 + static_cast<std::int64_t>(grid.radial - 1) * grid.angular;
  cert.samples_used = per_s * static_cast<std::int64_t>(sgrid.size());
  const double slack = z_lipschitz_bound(family) * polar_covering_radius(grid.radial, grid.angular) +
                       lipschitz_s_bound(family) * family.domain().grid_covering_radius(grid.k_per_axis);
  cert.lo = cert.hi - slack;
  return cert;
}

NormCert inf_disc(const CPoly& p, int radial, int angular) {
  check_polar(radial, angular);
  const CPoly tuple[] = {p};
  const auto best = polar_min(tuple, radial, angular);
  NormCert cert;
  cert.quantity = "inf |p| on disc";
  cert.hi = best.value;
  cert.lo = best.value - coeff_lipschitz_bound(p) * polar_covering_radius(radial, angular);
  cert.samples_used = 1 + static_cast<std::int64_t>(radial - 1) * angular;
  cert.witness = best.where;
  return cert;
}

void require_corona(const NormCert& delta, const std::string& stage) {
  if (corona_certified(delta)) return;
  std::string msg = "corona condition not certified: delta bracket [" + std::to_string(delta.lo) + ", " +
                    std::to_string(delta.hi) + "]";
  if (delta.witness) {
    msg += " near z=(" + std::to_string(delta.witness->z.real()) + "," + std::to_string(delta.witness->z.imag()) +
           ")";
    if (!delta.witness->s.empty()) {
      msg += " s=(";
      for (std::size_t i = 0; i < delta.witness->s.size(); ++i)
        msg += (i ? "," : "") + std::to_string(delta.witness->s[i]);
      msg += ")";
    }
  }
  throw CoronaError(ErrorKind::corona_violated, msg, stage);
}

double z_lipschitz_bound(const ParamFamily& family) {
  double total = 0.0;
  for (const auto& comp : family.components()) {
    double l = 0.0;
    for (std::size_t j = 1; j < comp.size(); ++j) l += static_cast<double>(j) * comp[j].sup_bound(family.domain());
    total += l * l;
  }
  return std::sqrt(total);
}

}  // namespace corona
