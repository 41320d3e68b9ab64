#include "corona/cover.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <string>

#include "corona/error.hpp"

namespace corona {

namespace {

// Bumps are clamped to zero once t exceeds this, keeping 1 / (1 - t^2) finite.
constexpr double kEdgeClamp = 1.0 - 1e-6;
constexpr std::size_t kMaxCoverSize = 200000;

}  // namespace

double lipschitz_s_bound(const ParamFamily& family) {
  double total = 0.0;
  for (int axis = 0; axis < family.dim(); ++axis) {
    MultiIndex a{0, 0};
    a[axis] = 1;
    for (const auto& comp : family.components()) {
      double b = 0.0;
      for (const auto& c : comp) b += c.partial(a).sup_bound(family.domain());
      total += b * b;
    }
  }
  return std::sqrt(total);
}

double modulus_inverse(double eps, double lipschitz_s) {
  if (!(eps > 0.0)) throw CoronaError(ErrorKind::domain, "modulus_inverse needs eps > 0");
  if (lipschitz_s < 0.0) throw CoronaError(ErrorKind::domain, "Lipschitz bound must be nonnegative");
  if (lipschitz_s == 0.0) return kInfiniteRadius;
  return eps / lipschitz_s;
}

Cover build_cover(const Box& box, double radius) {
  if (!(radius > 0.0)) throw CoronaError(ErrorKind::domain, "cover radius must be positive");
  Cover cover;
  cover.radius = radius;
  if (radius == kInfiniteRadius) {
    cover.centers.push_back(box.midpoint());
    return cover;
  }
  const int d = box.dim();
  std::array<std::vector<double>, kMaxParamDim> nodes;
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) {
    const double cells = std::ceil(box.length(i) * std::sqrt(static_cast<double>(d)) / (2.0 * radius * kCoverFill));
    if (!(cells < static_cast<double>(kMaxCoverSize)))
      throw CoronaError(ErrorKind::solve_failed, "cover would need more than " + std::to_string(kMaxCoverSize) +
                                                     " centres; radius " + std::to_string(radius) + " too small");
    const int n = std::max(1, static_cast<int>(cells));
    total *= static_cast<std::size_t>(n);
    for (int k = 0; k < n; ++k) nodes[i].push_back(box.lo(i) + box.length(i) * (k + 0.5) / n);
  }
  if (total > kMaxCoverSize)
    throw CoronaError(ErrorKind::solve_failed, "cover would need more than " + std::to_string(kMaxCoverSize) +
                                                   " centres; radius " + std::to_string(radius) + " too small");
  if (d == 1) {
    for (double x : nodes[0]) cover.centers.push_back({x});
  } else {
    for (double x : nodes[0])
      for (double y : nodes[1]) cover.centers.push_back({x, y});
  }
  return cover;
}

double bump(double t) {
  const double a = std::abs(t);
  if (a > kEdgeClamp) return 0.0;
  return std::exp(-1.0 / (1.0 - a * a));
}

PartitionOfUnity::PartitionOfUnity(Cover cover, int dim) : cover_(std::move(cover)), dim_(dim) {
  if (cover_.centers.empty()) throw CoronaError(ErrorKind::domain, "cover has no centres");
  for (const auto& c : cover_.centers)
    if (static_cast<int>(c.size()) != dim_) throw CoronaError(ErrorKind::domain, "centre has wrong dimension");
}

Jet<double> PartitionOfUnity::bump_jet(std::size_t k, std::span<const double> s, int order) const {
  if (cover_.infinite()) return Jet<double>::constant(dim_, order, bump(0.0));
  const double r = cover_.radius;
  const auto& c = cover_.centers[k];
  // u = 1 - |s + ds - c|^2 / r^2 is quadratic in ds, so its jet is exact.
  Jet<double> u = Jet<double>::constant(dim_, order, 1.0);
  double t2 = 0.0;
  for (int i = 0; i < dim_; ++i) {
    const double x = (s[i] - c[i]) / r;
    t2 += x * x;
    Jet<double> xi = Jet<double>::constant(dim_, order, x);
    if (order >= 1) {
      MultiIndex e{0, 0};
      e[i] = 1;
      xi[e] = 1.0 / r;
    }
    u -= xi * xi;
  }
  if (std::sqrt(t2) > kEdgeClamp) return Jet<double>(dim_, order);
  return exp(reciprocal(u) * -1.0);
}

std::vector<Jet<double>> PartitionOfUnity::jets(std::span<const double> s, int order) const {
  if (order < 0 || order > kMaxJetOrder)
    throw CoronaError(ErrorKind::domain, "derivative order exceeds the configured maximum of " +
                                             std::to_string(kMaxJetOrder));
  if (static_cast<int>(s.size()) != dim_) throw CoronaError(ErrorKind::domain, "parameter point has wrong dimension");
  const std::size_t n = cover_.size();
  if (n == 1) return {Jet<double>::constant(dim_, order, 1.0)};
  std::vector<Jet<double>> b(n);
  Jet<double> total(dim_, order);
  for (std::size_t k = 0; k < n; ++k) {
    b[k] = bump_jet(k, s, order);
    total += b[k];
  }
  if (!(total.value() > 0.0))
    throw CoronaError(ErrorKind::internal, "cover invariant violated: no bump is positive at this point");
  const Jet<double> inv = reciprocal(total);
  for (auto& j : b) j = j * inv;
  return b;
}

std::vector<double> PartitionOfUnity::eval(std::span<const double> s) const {
  if (static_cast<int>(s.size()) != dim_) throw CoronaError(ErrorKind::domain, "parameter point has wrong dimension");
  const std::size_t n = cover_.size();
  if (n == 1) return {1.0};
  std::vector<double> w(n, 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double t2 = 0.0;
    if (!cover_.infinite())
      for (int i = 0; i < dim_; ++i) {
        const double x = (s[i] - cover_.centers[k][i]) / cover_.radius;
        t2 += x * x;
      }
    w[k] = bump(std::sqrt(t2));
    total += w[k];
  }
  if (!(total > 0.0))
    throw CoronaError(ErrorKind::internal, "cover invariant violated: no bump is positive at this point");
  for (auto& x : w) x /= total;
  return w;
}

std::vector<double> PartitionOfUnity::deriv(std::span<const double> s, const MultiIndex& a) const {
  const auto j = jets(s, order_of(a));
  std::vector<double> out(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) out[k] = j[k].derivative(a);
  return out;
}

double PartitionOfUnity::support_edge_distance(std::span<const double> s) const {
  if (cover_.infinite()) return kInfiniteRadius;
  double best = kInfiniteRadius;
  for (const auto& c : cover_.centers) {
    double d2 = 0.0;
    for (int i = 0; i < dim_; ++i) d2 += (s[i] - c[i]) * (s[i] - c[i]);
    best = std::min(best, std::abs(std::sqrt(d2) - cover_.radius));
  }
  return best;
}

double bump_derivative_constant(int k) {
  static std::array<double, kMaxJetOrder + 1> table{};
  static std::once_flag once;
  std::call_once(once, [] {
    constexpr int kNodes = 4001;
    const double b0 = bump(0.0);
    for (int i = 1; i < kNodes - 1; ++i) {
      const double t = -1.0 + 2.0 * i / (kNodes - 1);
      if (std::abs(t) > kEdgeClamp) continue;
      Jet<double> u = Jet<double>::constant(1, kMaxJetOrder, 1.0);
      const Jet<double> x = Jet<double>::variable(1, kMaxJetOrder, 0, t);
      u -= x * x;
      const Jet<double> b = exp(reciprocal(u) * -1.0);
      for (int n = 0; n <= kMaxJetOrder; ++n)
        table[n] = std::max(table[n], std::abs(b.derivative({n, 0})) / b0);
    }
  });
  if (k < 0 || k > kMaxJetOrder) throw CoronaError(ErrorKind::domain, "bump derivative order out of range");
  return table[k];
}

PouNormEstimate pou_cnorm(const PartitionOfUnity& pou, int alpha, std::span<const SPoint> grid) {
  if (alpha < 0 || alpha > kMaxJetOrder) throw CoronaError(ErrorKind::domain, "alpha out of range");
  const std::size_t n = pou.size();
  std::vector<double> per_center(n, 0.0);
  for (const auto& s : grid) {
    const auto j = pou.jets(s, alpha);
    for (std::size_t k = 0; k < n; ++k)
      Jet<double>::for_each_index(pou.dim(), alpha, [&](const MultiIndex& a) {
        per_center[k] = std::max(per_center[k], std::abs(j[k].derivative(a)));
      });
  }
  PouNormEstimate out;
  for (double v : per_center) out.estimate += v;
  const double r = pou.cover().radius;
  if (alpha == 0) {
    out.envelope = static_cast<double>(n);
  } else if (pou.cover().infinite() || n == 1) {
    out.envelope = 0.0;
  } else {
    out.envelope = bump_derivative_constant(alpha) * static_cast<double>(n) * std::pow(r, -alpha);
  }
  return out;
}

}  // namespace corona
