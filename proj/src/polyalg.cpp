#include "corona/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "corona/error.hpp"

namespace corona {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Box

Box::Box(std::vector<double> lo, std::vector<double> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size() || lo_.empty())
    throw CoronaError(ErrorKind::domain, "box bounds must have matching nonzero length");
  if (lo_.size() > static_cast<std::size_t>(kMaxParamDim))
    throw CoronaError(ErrorKind::domain, "parameter dimension above 2 is not supported");
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (!(hi_[i] > lo_[i]) || !std::isfinite(lo_[i]) || !std::isfinite(hi_[i]))
      throw CoronaError(ErrorKind::domain, "box axis " + std::to_string(i) + " needs finite lo < hi");
  }
}

double Box::abs_bound(int axis) const { return std::max(std::abs(lo_[axis]), std::abs(hi_[axis])); }

SPoint Box::midpoint() const {
  SPoint m(lo_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * (lo_[i] + hi_[i]);
  return m;
}

std::vector<SPoint> Box::corners() const {
  std::vector<SPoint> out;
  const int d = dim();
  for (int mask = 0; mask < (1 << d); ++mask) {
    SPoint c(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) c[i] = (mask >> i) & 1 ? hi_[i] : lo_[i];
    out.push_back(std::move(c));
  }
  return out;
}

bool Box::contains(std::span<const double> s, double tol) const {
  if (s.size() != lo_.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double slack = tol * (1.0 + std::abs(lo_[i]) + std::abs(hi_[i]));
    if (!(s[i] >= lo_[i] - slack && s[i] <= hi_[i] + slack)) return false;
  }
  return true;
}

std::vector<SPoint> Box::grid(int n) const {
  std::vector<SPoint> out;
  if (n <= 0) return out;
  auto axis_nodes = [&](int axis) {
    std::vector<double> v(static_cast<std::size_t>(n));
    if (n == 1) {
      v[0] = 0.5 * (lo_[axis] + hi_[axis]);
      return v;
    }
    for (int k = 0; k < n; ++k) v[k] = lo_[axis] + length(axis) * k / (n - 1);
    v[n - 1] = hi_[axis];
    return v;
  };
  const auto x = axis_nodes(0);
  if (dim() == 1) {
    for (double v : x) out.push_back({v});
    return out;
  }
  const auto y = axis_nodes(1);
  for (double a : x)
    for (double b : y) out.push_back({a, b});
  return out;
}

double Box::grid_covering_radius(int n) const {
  double r2 = 0.0;
  for (int i = 0; i < dim(); ++i) {
    const double half = n <= 1 ? 0.5 * length(i) : 0.5 * length(i) / (n - 1);
    r2 += half * half;
  }
  return std::sqrt(r2);
}

// ---------------------------------------------------------------------------
// SPoly

SPoly::SPoly(int dim) : dim_(dim), coeffs_(1, Complex{}) {
  if (dim < 1 || dim > kMaxParamDim)
    throw CoronaError(ErrorKind::domain, "parameter dimension must be 1 or 2");
}

SPoly SPoly::constant(int dim, Complex c) {
  SPoly p(dim);
  p.coeffs_[0] = c;
  return p;
}

SPoly SPoly::monomial(int dim, const MultiIndex& e, Complex c) {
  SPoly p(dim);
  p.add_term(e, c);
  return p;
}

bool SPoly::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex{}; });
}

Complex SPoly::coeff(const MultiIndex& e) const noexcept {
  if (e[0] < 0 || e[1] < 0 || e[0] >= extent_[0] || e[1] >= extent_[1]) return Complex{};
  return coeffs_[index(e)];
}

void SPoly::resize(const std::array<int, 2>& extent) {
  std::vector<Complex> next(static_cast<std::size_t>(extent[0] * extent[1]), Complex{});
  for (int i = 0; i < std::min(extent[0], extent_[0]); ++i)
    for (int k = 0; k < std::min(extent[1], extent_[1]); ++k)
      next[static_cast<std::size_t>(i * extent[1] + k)] = coeffs_[index({i, k})];
  extent_ = extent;
  coeffs_ = std::move(next);
}

void SPoly::add_term(const MultiIndex& e, Complex c) {
  if (e[0] < 0 || e[1] < 0 || (dim_ == 1 && e[1] != 0))
    throw CoronaError(ErrorKind::domain, "exponent does not match parameter dimension");
  if (e[0] >= extent_[0] || e[1] >= extent_[1])
    resize({std::max(extent_[0], e[0] + 1), std::max(extent_[1], e[1] + 1)});
  coeffs_[index(e)] += c;
  normalize();
}

void SPoly::normalize() {
  auto row_zero = [&](int i) {
    for (int k = 0; k < extent_[1]; ++k)
      if (coeffs_[index({i, k})] != Complex{}) return false;
    return true;
  };
  auto col_zero = [&](int k) {
    for (int i = 0; i < extent_[0]; ++i)
      if (coeffs_[index({i, k})] != Complex{}) return false;
    return true;
  };
  std::array<int, 2> ext = extent_;
  while (ext[0] > 1 && row_zero(ext[0] - 1)) --ext[0];
  while (ext[1] > 1 && col_zero(ext[1] - 1)) --ext[1];
  if (ext != extent_) resize(ext);
}

void SPoly::for_each_term(const std::function<void(const MultiIndex&, Complex)>& fn) const {
  for (int i = 0; i < extent_[0]; ++i)
    for (int k = 0; k < extent_[1]; ++k) {
      const Complex c = coeffs_[index({i, k})];
      if (c != Complex{}) fn(MultiIndex{i, k}, c);
    }
}

Complex SPoly::operator()(std::span<const double> s) const {
  if (static_cast<int>(s.size()) != dim_)
    throw CoronaError(ErrorKind::domain, "parameter point has wrong dimension");
  Complex acc{};
  for (int i = extent_[0] - 1; i >= 0; --i) {
    Complex inner{};
    if (dim_ == 2) {
      for (int k = extent_[1] - 1; k >= 0; --k) inner = inner * s[1] + coeffs_[index({i, k})];
    } else {
      inner = coeffs_[index({i, 0})];
    }
    acc = acc * s[0] + inner;
  }
  return acc;
}

SPoly SPoly::partial(const MultiIndex& a) const {
  SPoly out(dim_);
  for_each_term([&](const MultiIndex& e, Complex c) {
    if (e[0] < a[0] || e[1] < a[1]) return;
    double factor = 1.0;
    for (int axis = 0; axis < 2; ++axis)
      for (int t = 0; t < a[axis]; ++t) factor *= e[axis] - t;
    out.add_term({e[0] - a[0], e[1] - a[1]}, c * factor);
  });
  return out;
}

Jet<Complex> SPoly::jet(std::span<const double> s, int order) const {
  if (static_cast<int>(s.size()) != dim_)
    throw CoronaError(ErrorKind::domain, "parameter point has wrong dimension");
  Jet<Complex> out(dim_, order);
  const double s1 = dim_ == 2 ? s[1] : 0.0;
  for_each_term([&](const MultiIndex& e, Complex c) {
    // (s + d)^e = prod_i sum_k C(e_i, k) s_i^(e_i - k) d_i^k
    Jet<Complex>::for_each_index(dim_, order, [&](const MultiIndex& a) {
      if (a[0] > e[0] || a[1] > e[1]) return;
      const double w = binomial(e[0], a[0]) * ipow(s[0], e[0] - a[0]) * binomial(e[1], a[1]) *
                       ipow(s1, e[1] - a[1]);
      out[a] += c * w;
    });
  });
  return out;
}

double SPoly::sup_bound(const Box& box) const {
  double total = 0.0;
  const double b0 = box.abs_bound(0);
  const double b1 = dim_ == 2 ? box.abs_bound(1) : 1.0;
  for_each_term([&](const MultiIndex& e, Complex c) {
    total += std::abs(c) * ipow(b0, e[0]) * ipow(b1, e[1]);
  });
  return total;
}

SPoly& SPoly::operator*=(Complex c) {
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

SPoly& SPoly::operator+=(const SPoly& other) {
  other.for_each_term([&](const MultiIndex& e, Complex c) { add_term(e, c); });
  return *this;
}

// ---------------------------------------------------------------------------
// ParamFamily

ParamFamily::ParamFamily(Box domain, std::vector<ZPoly> components)
    : domain_(std::move(domain)), components_(std::move(components)) {
  if (components_.empty()) throw CoronaError(ErrorKind::domain, "family needs at least one component");
  for (auto& comp : components_) {
    if (comp.empty()) comp.push_back(SPoly(dim()));
    for (const auto& c : comp)
      if (c.dim() != dim())
        throw CoronaError(ErrorKind::domain, "component coefficient dimension differs from the box");
    while (comp.size() > 1 && comp.back().is_zero()) comp.pop_back();
  }
}

int ParamFamily::z_degree() const noexcept {
  int d = 0;
  for (const auto& comp : components_) d = std::max(d, static_cast<int>(comp.size()) - 1);
  return d;
}

std::vector<CPoly> ParamFamily::at(std::span<const double> s) const {
  std::vector<CPoly> out;
  out.reserve(components_.size());
  for (const auto& comp : components_) {
    std::vector<Complex> c(comp.size());
    for (std::size_t j = 0; j < comp.size(); ++j) c[j] = comp[j](s);
    out.emplace_back(std::move(c));
  }
  return out;
}

std::vector<Jet<Complex>> ParamFamily::jet(Complex z, std::span<const double> s, int order) const {
  std::vector<Jet<Complex>> out;
  out.reserve(components_.size());
  for (const auto& comp : components_) {
    Jet<Complex> acc(dim(), order);
    for (auto it = comp.rbegin(); it != comp.rend(); ++it) {
      acc *= z;
      acc += it->jet(s, order);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

ParamFamily ParamFamily::scaled(Complex factor) const {
  auto comps = components_;
  for (auto& comp : comps)
    for (auto& c : comp) c *= factor;
  return ParamFamily(domain_, std::move(comps));
}

std::vector<Complex> eval_family(const ParamFamily& family, Complex z, std::span<const double> s) {
  if (!family.domain().contains(s))
    throw CoronaError(ErrorKind::domain, "parameter point lies outside K");
  std::vector<Complex> out;
  out.reserve(family.size());
  for (const auto& comp : family.components()) {
    Complex acc{};
    for (auto it = comp.rbegin(); it != comp.rend(); ++it) acc = acc * z + (*it)(s);
    out.push_back(acc);
  }
  return out;
}

ParamFamily partial_s(const ParamFamily& family, const MultiIndex& a) {
  if (a[0] == 0 && a[1] == 0) return family;
  std::vector<ZPoly> comps;
  for (const auto& comp : family.components()) {
    ZPoly next;
    for (const auto& c : comp) next.push_back(c.partial(a));
    comps.push_back(std::move(next));
  }
  return ParamFamily(family.domain(), std::move(comps));
}

std::vector<Complex> eval_tuple(std::span<const CPoly> tuple, Complex z) {
  std::vector<Complex> out;
  out.reserve(tuple.size());
  for (const auto& p : tuple) out.push_back(p(z));
  return out;
}

double l2_norm(std::span<const Complex> v) noexcept {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace corona
