#include "corona/bezout.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "corona/error.hpp"

namespace corona {

namespace {

// Remainder coefficients at or below this (relative) size are treated as zero.
constexpr double kZeroTol = 1e-11;
// A surviving remainder whose leading coefficient is below this is an
// unreliable pivot.
constexpr double kPivotTol = 1e-8;
// Relative rank threshold for the orthogonal factorization.
constexpr double kRankTol = 1e-12;

}  // namespace

const char* to_string(PointSolver solver) {
  return solver == PointSolver::gcd_chain ? "gcd_chain" : "least_norm";
}

XgcdResult xgcd(const CPoly& p, const CPoly& q) {
  if (p.is_zero() && q.is_zero()) throw CoronaError(ErrorKind::domain, "xgcd of two zero polynomials");
  if (p.is_zero()) return {q / q.leading(), CPoly{}, CPoly::constant(1.0 / q.leading())};
  if (q.is_zero()) return {p / p.leading(), CPoly::constant(1.0 / p.leading()), CPoly{}};
  if (p.degree() == 0) return {CPoly::constant(1.0), CPoly::constant(1.0 / p[0]), CPoly{}};
  if (q.degree() == 0) return {CPoly::constant(1.0), CPoly{}, CPoly::constant(1.0 / q[0])};

  // Invariant: s_i p + t_i q = r_i with every r_i monic.
  CPoly r0 = p / p.leading(), s0 = CPoly::constant(1.0 / p.leading()), t0;
  CPoly r1 = q / q.leading(), s1, t1 = CPoly::constant(1.0 / q.leading());
  for (;;) {
    auto [quot, rem] = divmod(r0, r1);
    const double scale = std::max({norm_inf(r0), norm_inf(r1), 1.0}) * std::max(1.0, norm_inf(quot));
    rem = chop(rem, kZeroTol * scale);
    if (rem.is_zero()) break;
    const Complex lead = rem.leading();
    if (std::abs(lead) < kPivotTol * scale)
      throw CoronaError(ErrorKind::ill_conditioned,
                        "ill-conditioned gcd: remainder pivot " + std::to_string(std::abs(lead)) +
                            " is numerically vanishing; use the least-norm solver");
    CPoly s2 = (s0 - quot * s1) / lead;
    CPoly t2 = (t0 - quot * t1) / lead;
    r0 = std::move(r1);
    s0 = std::move(s1);
    t0 = std::move(t1);
    r1 = rem / lead;
    s1 = std::move(s2);
    t1 = std::move(t2);
  }
  if (r1.degree() == 0) r1 = CPoly::constant(1.0);
  return {std::move(r1), std::move(s1), std::move(t1)};
}

BezoutCerts certify(std::span<const CPoly> f, std::span<const CPoly> g, int samples) {
  if (f.size() != g.size()) throw CoronaError(ErrorKind::domain, "certify needs tuples of equal length");
  BezoutCerts out;
  out.norm_cert = vec_sup_norm(g, samples);
  CPoly residual = CPoly::constant(-1.0);
  for (std::size_t k = 0; k < f.size(); ++k) residual += f[k] * g[k];
  out.residual_cert = sup_disc(residual, samples);
  out.residual_cert.quantity = "Bezout residual";
  return out;
}

ChainOutcome gcd_chain_bezout(std::span<const CPoly> f, const BezoutSettings& settings) {
  if (f.empty()) throw CoronaError(ErrorKind::domain, "Bezout tuple is empty");
  const std::size_t n = f.size();
  std::vector<CPoly> h(n);
  std::size_t first = n;
  for (std::size_t k = 0; k < n; ++k)
    if (!f[k].is_zero()) {
      first = k;
      break;
    }
  if (first == n)
    throw CoronaError(ErrorKind::corona_violated, "corona condition violated at this parameter: all components vanish");

  CPoly common = f[first] / f[first].leading();
  h[first] = CPoly::constant(1.0 / f[first].leading());
  for (std::size_t k = first + 1; k < n && common.degree() > 0; ++k) {
    if (f[k].is_zero()) continue;
    auto [next, a, b] = xgcd(common, f[k]);
    for (std::size_t j = first; j < k; ++j) h[j] = h[j] * a;
    h[k] = std::move(b);
    common = std::move(next);
  }

  ChainOutcome out;
  out.gcd = common;
  if (common.degree() == 0) {
    const Complex c = common[0];
    PointSolution sol;
    for (auto& x : h) sol.g.push_back(x / c);
    auto certs = certify(f, sol.g, settings.boundary_samples);
    sol.norm_cert = std::move(certs.norm_cert);
    sol.residual_cert = std::move(certs.residual_cert);
    sol.solver = PointSolver::gcd_chain;
    out.gcd_inf = NormCert{1.0, 1.0, "inf |gcd| on disc", 0, std::nullopt};
    out.solution = std::move(sol);
    return out;
  }
  out.gcd_inf = inf_disc(common, settings.radial, settings.angular);
  if (out.gcd_inf.lo <= 0.0)
    throw CoronaError(ErrorKind::corona_violated,
                      "corona condition violated at this parameter: common factor of degree " +
                          std::to_string(common.degree()) + " is not zero-free on the closed disc (inf |gcd| in [" +
                          std::to_string(out.gcd_inf.lo) + ", " + std::to_string(out.gcd_inf.hi) + "])");
  return out;
}

PointSolution least_norm_bezout(std::span<const CPoly> f, int degree, const BezoutSettings& settings) {
  if (degree < 0) throw CoronaError(ErrorKind::domain, "solution degree must be nonnegative");
  if (f.empty()) throw CoronaError(ErrorKind::domain, "Bezout tuple is empty");
  const int nf = static_cast<int>(f.size());
  int max_deg = 0;
  for (const auto& p : f) max_deg = std::max(max_deg, p.degree());
  const int rows = max_deg + degree + 1;
  const int block = degree + 1;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, nf * block);
  for (int k = 0; k < nf; ++k)
    for (int j = 0; j < block; ++j)
      for (int i = 0; i < static_cast<int>(f[k].size()); ++i) a(i + j, k * block + j) = f[k][i];
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(rows);
  rhs(0) = 1.0;

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
  cod.setThreshold(kRankTol);
  cod.compute(a);
  const Eigen::VectorXcd x = cod.solve(rhs);

  PointSolution sol;
  sol.solver = PointSolver::least_norm;
  for (int k = 0; k < nf; ++k) {
    std::vector<Complex> c(static_cast<std::size_t>(block));
    for (int j = 0; j < block; ++j) c[j] = x(k * block + j);
    sol.g.emplace_back(std::move(c));
  }
  auto certs = certify(f, sol.g, settings.boundary_samples);
  sol.norm_cert = std::move(certs.norm_cert);
  sol.residual_cert = std::move(certs.residual_cert);
  return sol;
}

PointSolution solve_point(std::span<const CPoly> f, const BezoutSettings& settings) {
  try {
    auto chain = gcd_chain_bezout(f, settings);
    if (chain.solution && chain.solution->residual_cert.hi <= kPointResidualGate) return std::move(*chain.solution);
  } catch (const CoronaError& e) {
    if (e.kind() != ErrorKind::ill_conditioned) throw;
  }
  int start = 0;
  for (const auto& p : f) start = std::max(start, p.degree());
  const int cap = settings.degree_cap_factor * std::max(start, 1);
  double last = 0.0;
  for (int d = start;; d = std::max(1, 2 * d)) {
    auto sol = least_norm_bezout(f, d, settings);
    if (sol.residual_cert.hi <= kPointResidualGate) return sol;
    last = sol.residual_cert.hi;
    if (d >= cap) break;
  }
  throw CoronaError(ErrorKind::solve_failed, "pointwise solve failed; increase degree or refine (residual " +
                                                 std::to_string(last) + " > 1/4 at degree cap " +
                                                 std::to_string(cap) + ")");
}

}  // namespace corona
