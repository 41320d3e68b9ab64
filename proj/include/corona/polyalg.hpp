#pragma once

#include <functional>
#include <span>
#include <vector>

#include "corona/cpoly.hpp"
#include "corona/jet.hpp"

namespace corona {

// A point of the parameter set K; length equals the parameter dimension.
using SPoint = std::vector<double>;

constexpr int kMaxParamDim = 2;

/// Axis-aligned parameter box K = prod [lo_i, hi_i] with hi_i > lo_i.
class Box {
 public:
  Box(std::vector<double> lo, std::vector<double> hi);

  int dim() const noexcept { return static_cast<int>(lo_.size()); }
  double lo(int axis) const { return lo_[axis]; }
  double hi(int axis) const { return hi_[axis]; }
  double length(int axis) const { return hi_[axis] - lo_[axis]; }
  // max(|lo_i|, |hi_i|): bound on |s_i| over the box.
  double abs_bound(int axis) const;

  SPoint midpoint() const;
  std::vector<SPoint> corners() const;
  bool contains(std::span<const double> s, double tol = 1e-12) const;

  // n points per axis, endpoints included (the midpoint when n == 1).
  std::vector<SPoint> grid(int n) const;
  // Largest distance from a point of the box to the nearest grid(n) node.
  double grid_covering_radius(int n) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<double> lo_, hi_;
};

/// Multivariate polynomial in s with dense exponent-indexed coefficients.
/// Coefficients are complex so that families with non-real z-coefficients
/// can be expressed; real data simply has zero imaginary parts.
class SPoly {
 public:
  explicit SPoly(int dim = 1);

  static SPoly constant(int dim, Complex c);
  static SPoly monomial(int dim, const MultiIndex& e, Complex c);

  int dim() const noexcept { return dim_; }
  int degree(int axis) const noexcept { return extent_[axis] - 1; }
  bool is_zero() const noexcept;

  Complex coeff(const MultiIndex& e) const noexcept;
  void add_term(const MultiIndex& e, Complex c);

  // Calls fn(e, c) for every stored nonzero coefficient.
  void for_each_term(const std::function<void(const MultiIndex&, Complex)>& fn) const;

  Complex operator()(std::span<const double> s) const;

  SPoly partial(const MultiIndex& a) const;

  // Taylor jet at s up to the given total order.
  Jet<Complex> jet(std::span<const double> s, int order) const;

  // Upper bound for sup over the box of |p(s)|: sum |c_e| prod |s_i|max^e_i.
  double sup_bound(const Box& box) const;

  SPoly& operator*=(Complex c);
  SPoly& operator+=(const SPoly& other);

  friend bool operator==(const SPoly&, const SPoly&) = default;

 private:
  std::size_t index(const MultiIndex& e) const noexcept {
    return static_cast<std::size_t>(e[0] * extent_[1] + e[1]);
  }
  void resize(const std::array<int, 2>& extent);
  void normalize();

  int dim_;
  std::array<int, 2> extent_{1, 1};
  std::vector<Complex> coeffs_;
};

/// One family component: a polynomial in z whose z^j coefficient is an SPoly.
using ZPoly = std::vector<SPoly>;

/// The corona data f(z, s) = (f_1, ..., f_N) over the disc times a box K.
class ParamFamily {
 public:
  ParamFamily(Box domain, std::vector<ZPoly> components);

  const Box& domain() const noexcept { return domain_; }
  int dim() const noexcept { return domain_.dim(); }
  std::size_t size() const noexcept { return components_.size(); }
  const std::vector<ZPoly>& components() const noexcept { return components_; }
  int z_degree() const noexcept;

  // Freezes the family at s into a tuple of z-polynomials.
  std::vector<CPoly> at(std::span<const double> s) const;

  // Per-component s-jets of f(z, .) at s.
  std::vector<Jet<Complex>> jet(Complex z, std::span<const double> s, int order) const;

  ParamFamily scaled(Complex factor) const;

  friend bool operator==(const ParamFamily&, const ParamFamily&) = default;

 private:
  Box domain_;
  std::vector<ZPoly> components_;
};

std::vector<Complex> eval_family(const ParamFamily& family, Complex z, std::span<const double> s);

ParamFamily partial_s(const ParamFamily& family, const MultiIndex& a);

// Evaluate every polynomial in a tuple at z.
std::vector<Complex> eval_tuple(std::span<const CPoly> tuple, Complex z);

double l2_norm(std::span<const Complex> v) noexcept;

}  // namespace corona
