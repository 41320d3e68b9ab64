#include "corona/cpoly.hpp"

#include <algorithm>
#include <cmath>

#include "corona/error.hpp"

namespace corona {

CPoly::CPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

CPoly CPoly::monomial(int degree, Complex c) {
  std::vector<Complex> v(static_cast<std::size_t>(degree) + 1, Complex{});
  v.back() = c;
  return CPoly(std::move(v));
}

void CPoly::normalize() {
  while (coeffs_.size() > 1 && coeffs_.back() == Complex{}) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(Complex{});
}

Complex CPoly::operator()(Complex z) const noexcept {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

CPoly& CPoly::operator+=(const CPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Complex{});
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  normalize();
  return *this;
}

CPoly& CPoly::operator-=(const CPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Complex{});
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  normalize();
  return *this;
}

CPoly& CPoly::operator*=(Complex c) {
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

CPoly operator*(const CPoly& a, const CPoly& b) {
  std::vector<Complex> out(a.size() + b.size() - 1, Complex{});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return CPoly(std::move(out));
}

Complex eval(const CPoly& p, Complex z) noexcept { return p(z); }

CPoly derivative_z(const CPoly& p) {
  if (p.size() == 1) return CPoly{};
  std::vector<Complex> out(p.size() - 1);
  for (std::size_t j = 1; j < p.size(); ++j) out[j - 1] = static_cast<double>(j) * p[j];
  return CPoly(std::move(out));
}

double norm1(const CPoly& p) noexcept {
  double s = 0.0;
  for (const auto& c : p.coeffs()) s += std::abs(c);
  return s;
}

double norm_inf(const CPoly& p) noexcept {
  double s = 0.0;
  for (const auto& c : p.coeffs()) s = std::max(s, std::abs(c));
  return s;
}

DivMod divmod(const CPoly& dividend, const CPoly& divisor) {
  if (divisor.is_zero()) throw CoronaError(ErrorKind::domain, "polynomial division by zero");
  const int n = dividend.degree();
  const int m = divisor.degree();
  if (dividend.is_zero() || n < m) return {CPoly{}, dividend};
  std::vector<Complex> rem = dividend.coeffs();
  std::vector<Complex> quot(static_cast<std::size_t>(n - m) + 1, Complex{});
  const Complex lead = divisor.leading();
  for (int k = n - m; k >= 0; --k) {
    const Complex q = rem[static_cast<std::size_t>(k + m)] / lead;
    quot[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= m; ++j) rem[static_cast<std::size_t>(k + j)] -= q * divisor[static_cast<std::size_t>(j)];
    // The eliminated coefficient is zero by construction.
    rem[static_cast<std::size_t>(k + m)] = Complex{};
  }
  rem.resize(static_cast<std::size_t>(std::max(m, 1)));
  return {CPoly(std::move(quot)), CPoly(std::move(rem))};
}

CPoly chop(const CPoly& p, double tol) {
  std::vector<Complex> c = p.coeffs();
  while (c.size() > 1 && std::abs(c.back()) <= tol) c.pop_back();
  if (c.size() == 1 && std::abs(c[0]) <= tol) c[0] = Complex{};
  return CPoly(std::move(c));
}

}  // namespace corona
