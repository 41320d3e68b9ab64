#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace corona {

using Complex = std::complex<double>;

/// Dense complex polynomial in the disc variable z. Index j holds the
/// coefficient of z^j. The zero polynomial is stored as a single zero.
class CPoly {
 public:
  CPoly() : coeffs_{Complex{}} {}
  explicit CPoly(std::vector<Complex> coeffs);
  CPoly(std::initializer_list<Complex> coeffs) : CPoly(std::vector<Complex>(coeffs)) {}

  static CPoly constant(Complex c) { return CPoly(std::vector<Complex>{c}); }
  static CPoly monomial(int degree, Complex c);

  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  // Degree of a nonzero polynomial; the zero polynomial reports 0.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == Complex{}; }
  Complex leading() const noexcept { return coeffs_.back(); }

  // Coefficient of z^j, zero past the stored degree.
  Complex operator[](std::size_t j) const noexcept {
    return j < coeffs_.size() ? coeffs_[j] : Complex{};
  }

  Complex operator()(Complex z) const noexcept;

  CPoly& operator+=(const CPoly& other);
  CPoly& operator-=(const CPoly& other);
  CPoly& operator*=(Complex c);

  friend CPoly operator+(CPoly a, const CPoly& b) { return a += b; }
  friend CPoly operator-(CPoly a, const CPoly& b) { return a -= b; }
  friend CPoly operator*(CPoly a, Complex c) { return a *= c; }
  friend CPoly operator*(Complex c, CPoly a) { return a *= c; }
  friend CPoly operator/(CPoly a, Complex c) { return a *= (1.0 / c); }
  friend CPoly operator*(const CPoly& a, const CPoly& b);
  friend CPoly operator-(CPoly a) { return a *= -1.0; }
  friend bool operator==(const CPoly& a, const CPoly& b) = default;

 private:
  void normalize();

  std::vector<Complex> coeffs_;
};

// Horner evaluation.
Complex eval(const CPoly& p, Complex z) noexcept;

CPoly derivative_z(const CPoly& p);

// Sum of coefficient moduli.
double norm1(const CPoly& p) noexcept;
double norm_inf(const CPoly& p) noexcept;

struct DivMod {
  CPoly quotient;
  CPoly remainder;
};

// Long division; divisor must be nonzero.
DivMod divmod(const CPoly& dividend, const CPoly& divisor);

// Drops trailing coefficients whose modulus is at most `tol`.
CPoly chop(const CPoly& p, double tol);

}  // namespace corona
