#pragma once

#include <limits>
#include <span>
#include <vector>

#include "corona/jet.hpp"
#include "corona/polyalg.hpp"

namespace corona {

constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();
constexpr int kMaxJetOrder = 6;

/// Finite family of balls U_k = B(center_k, radius) covering K.
struct Cover {
  std::vector<SPoint> centers;
  double radius = kInfiniteRadius;

  std::size_t size() const noexcept { return centers.size(); }
  bool infinite() const noexcept { return radius == kInfiniteRadius; }
};

/// Bound L_s on sup over disc x K of the Frobenius norm of the s-Jacobian of
/// f, from coefficient sums. On a convex K this gives
/// |f(., s) - f(., s')|_{H-inf, l2} <= L_s |s - s'|.
double lipschitz_s_bound(const ParamFamily& family);

/// Radius r with L_s r = eps; +inf when L_s == 0.
double modulus_inverse(double eps, double lipschitz_s);

/// Cell-centred grid cover. Each axis is split into
/// ceil(len * sqrt(d) / (2 r * kCoverFill)) cells, so every point of K is
/// within kCoverFill * r of a centre. An infinite radius gives the midpoint.
constexpr double kCoverFill = 0.9;
Cover build_cover(const Box& box, double radius);

/// Standard mollifier profile exp(-1 / (1 - t^2)) on |t| < 1, zero elsewhere.
double bump(double t);

/// Smooth partition of unity subordinate to a Cover:
/// eta_k(s) = bump(|s - s_k| / r) / sum_j bump(|s - s_j| / r).
class PartitionOfUnity {
 public:
  PartitionOfUnity(Cover cover, int dim);

  const Cover& cover() const noexcept { return cover_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return cover_.size(); }

  std::vector<double> eval(std::span<const double> s) const;

  // Order-`order` s-jets of every eta_k at s.
  std::vector<Jet<double>> jets(std::span<const double> s, int order) const;

  // d^a eta_k(s) for every k.
  std::vector<double> deriv(std::span<const double> s, const MultiIndex& a) const;

  // Smallest | |s - s_k| - r | over k: distance to the nearest support edge.
  double support_edge_distance(std::span<const double> s) const;

 private:
  Jet<double> bump_jet(std::size_t k, std::span<const double> s, int order) const;

  Cover cover_;
  int dim_;
};

struct PouNormEstimate {
  double estimate = 0.0;  // grid value of sum_k |eta_k|_{C^alpha}
  double envelope = 0.0;  // B(alpha) * N * r^-alpha
};

/// Supremum of |d^k/dt^k bump(t)| over |t| < 1, relative to bump(0).
double bump_derivative_constant(int k);

PouNormEstimate pou_cnorm(const PartitionOfUnity& pou, int alpha, std::span<const SPoint> grid);

}  // namespace corona
