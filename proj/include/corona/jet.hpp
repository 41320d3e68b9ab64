#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <complex>
#include <vector>

namespace corona {

// Exponent vector for the parameter s; only the first `dim` entries are used.
using MultiIndex = std::array<int, 2>;

inline int order_of(const MultiIndex& a) noexcept { return a[0] + a[1]; }

inline double factorial(int n) noexcept {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Truncated multivariate Taylor polynomial in dim <= 2 variables.
///
/// Entry a holds the Taylor coefficient d^a f / a!, for every multi-index with
/// |a| <= order. Products drop every term of total degree above `order`, so a
/// Jet is the order-`order` jet of a smooth function at a base point. The
/// nonlinear maps (reciprocal, exp) use that the non-constant part w of a jet
/// is nilpotent: w^(order+1) == 0, so their power series terminate exactly.
template <class T>
class Jet {
 public:
  Jet() = default;
  Jet(int dim, int order)
      : dim_(dim), order_(order), c_(dim == 1 ? order + 1 : (order + 1) * (order + 1), T{}) {
    assert(dim == 1 || dim == 2);
    assert(order >= 0);
  }

  static Jet constant(int dim, int order, T value) {
    Jet j(dim, order);
    j.c_[0] = value;
    return j;
  }

  // The coordinate function s_axis expanded at a base point with value `value`.
  static Jet variable(int dim, int order, int axis, T value) {
    Jet j = constant(dim, order, value);
    if (order >= 1) {
      MultiIndex e{0, 0};
      e[axis] = 1;
      j[e] = T{1};
    }
    return j;
  }

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }

  T& operator[](const MultiIndex& a) noexcept { return c_[index(a)]; }
  const T& operator[](const MultiIndex& a) const noexcept { return c_[index(a)]; }

  T value() const noexcept { return c_[0]; }

  // Partial derivative d^a at the base point.
  T derivative(const MultiIndex& a) const noexcept {
    return (*this)[a] * (factorial(a[0]) * factorial(a[1]));
  }

  // Calls fn(a) for every multi-index with |a| <= order, lexicographically.
  template <class Fn>
  static void for_each_index(int dim, int order, Fn&& fn) {
    if (dim == 1) {
      for (int i = 0; i <= order; ++i) fn(MultiIndex{i, 0});
      return;
    }
    for (int i = 0; i <= order; ++i)
      for (int k = 0; i + k <= order; ++k) fn(MultiIndex{i, k});
  }

  template <class U>
  Jet<U> cast() const {
    Jet<U> out(dim_, order_);
    for_each_index(dim_, order_, [&](const MultiIndex& a) { out[a] = U((*this)[a]); });
    return out;
  }

  Jet& operator+=(const Jet& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(T s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, T s) { return a *= s; }
  friend Jet operator*(T s, Jet a) { return a *= s; }

  friend Jet operator*(const Jet& x, const Jet& y) {
    Jet out(x.dim_, x.order_);
    const int n = x.order_;
    for_each_index(x.dim_, n, [&](const MultiIndex& a) {
      const T xa = x[a];
      if (xa == T{}) return;
      for_each_index(x.dim_, n - order_of(a), [&](const MultiIndex& b) {
        out[MultiIndex{a[0] + b[0], a[1] + b[1]}] += xa * y[b];
      });
    });
    return out;
  }

 private:
  std::size_t index(const MultiIndex& a) const noexcept {
    return dim_ == 1 ? static_cast<std::size_t>(a[0])
                     : static_cast<std::size_t>(a[0] * (order_ + 1) + a[1]);
  }

  int dim_ = 1;
  int order_ = 0;
  std::vector<T> c_ = std::vector<T>(1, T{});
};

// 1/x for a jet with nonzero value: (1/x0) * sum_n (-w/x0)^n, w = x - x0.
template <class T>
Jet<T> reciprocal(const Jet<T>& x) {
  const T inv0 = T{1} / x.value();
  Jet<T> q = x;
  q[MultiIndex{0, 0}] = T{};
  q *= -inv0;
  Jet<T> acc = Jet<T>::constant(x.dim(), x.order(), T{1});
  for (int n = x.order(); n >= 1; --n) {
    acc = q * acc;
    acc[MultiIndex{0, 0}] += T{1};
  }
  return acc * inv0;
}

// exp(x) = e^{x0} * sum_n w^n / n!, evaluated in Horner form.
template <class T>
Jet<T> exp(const Jet<T>& x) {
  using std::exp;
  const T e0 = exp(x.value());
  Jet<T> w = x;
  w[MultiIndex{0, 0}] = T{};
  Jet<T> acc = Jet<T>::constant(x.dim(), x.order(), T{1});
  for (int n = x.order(); n >= 1; --n) {
    acc = w * acc;
    acc *= T{1.0 / n};
    acc[MultiIndex{0, 0}] += T{1};
  }
  return acc * e0;
}

}  // namespace corona
