#include "corona/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "corona/error.hpp"
#include "corona/parallel.hpp"

namespace corona {

namespace fs = std::filesystem;

namespace {

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string bracket(const NormCert& c) { return "[" + num(c.lo, 10) + ", " + num(c.hi, 10) + "]"; }

std::string where(const Witness& w) {
  std::string out = "z=(" + num(w.z.real(), 10) + "," + num(w.z.imag(), 10) + ")";
  if (!w.s.empty()) {
    out += " s=(";
    for (std::size_t i = 0; i < w.s.size(); ++i) out += (i ? "," : "") + num(w.s[i], 10);
    out += ")";
  }
  return out;
}

Json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  Json s = Json::array();
  for (double x : w->s) s.push_back(x);
  return {{"z", Json::array({w->z.real(), w->z.imag()})}, {"s", s}};
}

int fail_with(const CoronaError& e, std::ostream& err) {
  err << "error [" << to_string(e.kind());
  if (!e.stage().empty()) err << " in " << e.stage();
  err << "]: " << e.what() << '\n';
  return e.kind() == ErrorKind::config ? kExitUsage : kExitGate;
}

bool same_cert(const NormCert& a, const NormCert& b) {
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(y)); };
  return close(a.lo, b.lo) && close(a.hi, b.hi);
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

Json cnorm_json(const CAlphaReport& r) {
  return {{"alpha", r.alpha},
          {"g_norm", r.g_norm_estimate},
          {"f_norm", r.f_norm_estimate},
          {"ratio", r.ratio},
          {"grid", r.grid}};
}

std::vector<SPoint> s_grid(const Box& box, int n) { return n > 0 ? box.grid(n) : std::vector<SPoint>{}; }

// A handful of z probes spread through the grid.
std::vector<Complex> z_probes(const std::vector<Complex>& zs, std::size_t count) {
  if (zs.size() <= count) return zs;
  std::vector<Complex> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(zs[i * (zs.size() - 1) / (count - 1)]);
  return out;
}

}  // namespace

std::vector<Complex> disc_grid(int n) {
  std::vector<Complex> out;
  if (n <= 0) return out;
  if (n == 1) return {Complex{0.0, 0.0}};
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int iy = 0; iy < n; ++iy) {
    const double y = -1.0 + 2.0 * iy / (n - 1);
    for (int ix = 0; ix < n; ++ix) {
      const double x = -1.0 + 2.0 * ix / (n - 1);
      out.emplace_back(x * std::sqrt(1.0 - y * y / 2.0), y * std::sqrt(1.0 - x * x / 2.0));
    }
  }
  return out;
}

bool VerifyReport::pass() const noexcept {
  for (const auto& g : gates)
    if (!g.pass) return false;
  return true;
}

Json VerifyReport::to_json() const {
  Json gj = Json::array();
  for (const auto& g : gates)
    gj.push_back({{"name", g.name}, {"pass", g.pass}, {"detail", g.detail}, {"witness", witness_json(g.witness)}});
  Json cj = Json::array();
  for (const auto& c : cnorms) cj.push_back(cnorm_json(c));
  return {{"verdict", pass() ? "pass" : "fail"}, {"gates", gj}, {"cnorm", cj}, {"warnings", warnings}};
}

VerifyReport verify_solution(const GluedSolution& glued, const GridOptions& grid) {
  VerifyReport report;
  const ParamFamily& family = glued.family();
  const SolverSettings& settings = glued.settings();
  const Cover& cover = glued.pou().cover();
  const auto& points = glued.points().solutions;

  {
    GateResult gate{"point_certificates", true, std::to_string(cover.size()) + " centre(s) recomputed", {}};
    if (points.size() != cover.size()) {
      gate.pass = false;
      gate.detail = "point solution count does not match the cover";
    }
    for (std::size_t k = 0; gate.pass && k < cover.size(); ++k) {
      const auto f = family.at(cover.centers[k]);
      const BezoutCerts fresh = certify(f, points[k].g, settings.boundary_samples);
      std::optional<Witness> w = fresh.residual_cert.witness;
      if (w) w->s = cover.centers[k];
      if (!same_cert(fresh.norm_cert, points[k].norm_cert) || !same_cert(fresh.residual_cert, points[k].residual_cert)) {
        gate = {"point_certificates", false,
                "centre " + std::to_string(k) + ": stored certificate is stale (residual recomputed " +
                    bracket(fresh.residual_cert) + ", stored " + bracket(points[k].residual_cert) + ")",
                w};
      } else if (fresh.residual_cert.hi > kPointResidualGate) {
        gate = {"point_certificates", false,
                "centre " + std::to_string(k) + ": residual " + bracket(fresh.residual_cert) + " exceeds 1/4", w};
      }
    }
    report.gates.push_back(std::move(gate));
  }

  bool usable = true;
  {
    const NormCert residual = residual_certify(glued);
    usable = residual.hi <= kGlueResidualGate;
    GateResult gate{"residual", residual.hi <= kGlueResidualGate,
                    "sup |1 - phi| in " + bracket(residual) + " (gate 1/2)", residual.witness};
    if (!same_cert(residual, glued.residual_cert()))
      report.warnings.push_back("stored residual certificate " + bracket(glued.residual_cert()) +
                                " differs from the recomputed one");
    report.gates.push_back(std::move(gate));
  }

  const std::vector<Complex> zs = disc_grid(grid.z_samples);
  const std::vector<SPoint> ss = s_grid(family.domain(), grid.s_samples);
  const bool vacuous = zs.empty() || ss.empty();
  if (vacuous) report.warnings.push_back("evaluation grid is empty; grid checks are vacuous");
  if (zs.size() * ss.size() == 1) report.warnings.push_back("evaluation grid has a single point; grid checks are nearly vacuous");

  {
    struct Slot {
      double identity = 0.0, norm = 0.0, pou = 0.0;
      std::optional<Witness> identity_at, norm_at, pou_at, small_phi;
    };
    std::vector<Slot> slots(ss.size());
    parallel_for(ss.size(), [&](std::size_t i) {
      Slot& slot = slots[i];
      const auto eta = glued.pou().eval(ss[i]);
      double sum = 0.0;
      for (double e : eta) sum += e;
      slot.pou = std::abs(sum - 1.0);
      slot.pou_at = Witness{Complex{}, ss[i]};
      for (const Complex z : zs) {
        if (std::abs(phi_eval(glued, z, ss[i])) < 0.5) {
          if (!slot.small_phi) slot.small_phi = Witness{z, ss[i]};
          continue;
        }
        const auto g = g_eval(glued, z, ss[i]);
        const auto f = eval_family(family, z, ss[i]);
        Complex acc{};
        for (std::size_t k = 0; k < f.size(); ++k) acc += g[k] * f[k];
        const double id = std::abs(acc - 1.0);
        const double nm = l2_norm(g);
        if (!slot.identity_at || id > slot.identity) {
          slot.identity = id;
          slot.identity_at = Witness{z, ss[i]};
        }
        if (!slot.norm_at || nm > slot.norm) {
          slot.norm = nm;
          slot.norm_at = Witness{z, ss[i]};
        }
      }
    });
    Slot worst;
    std::optional<Witness> small_phi;
    for (const auto& s : slots) {
      if (s.small_phi && !small_phi) small_phi = s.small_phi;
      if (s.identity_at && (!worst.identity_at || s.identity > worst.identity)) {
        worst.identity = s.identity;
        worst.identity_at = s.identity_at;
      }
      if (s.norm_at && (!worst.norm_at || s.norm > worst.norm)) {
        worst.norm = s.norm;
        worst.norm_at = s.norm_at;
      }
      if (!worst.pou_at || s.pou > worst.pou) {
        worst.pou = s.pou;
        worst.pou_at = s.pou_at;
      }
    }
    const std::string grid_note = " over " + std::to_string(zs.size() * ss.size()) + " grid points";
    if (small_phi) {
      report.gates.push_back({"bezout_identity", false, "|phi| < 1/2: g is undefined at the witness", small_phi});
    } else {
      report.gates.push_back({"bezout_identity", worst.identity <= 1e-12,
                              vacuous ? "vacuous" : "max |g^T f - 1| = " + num(worst.identity) + grid_note,
                              worst.identity_at});
    }
    const double bound = 2.0 * glued.C0() * (1.0 + 1e-9);
    report.gates.push_back({"norm_bound", worst.norm <= bound,
                            vacuous ? "vacuous"
                                    : "max |g|_2 = " + num(worst.norm, 10) + " vs 2 C0 = " + num(2.0 * glued.C0(), 10),
                            worst.norm_at});
    report.gates.push_back({"partition_of_unity", worst.pou <= 1e-12,
                            ss.empty() ? "vacuous" : "max |sum eta - 1| = " + num(worst.pou), worst.pou_at});
  }

  if (!usable) {
    report.warnings.push_back("residual gate failed; derivative and smoothness checks skipped");
    return report;
  }

  {
    GateResult gate{"derivatives", true, vacuous ? "vacuous" : "", {}};
    const int top = std::min(glued.order(), 2);
    const Box& box = family.domain();
    const auto probes = z_probes(zs, 5);
    double worst_rel[3] = {0.0, 0.0, 0.0};
    std::size_t checks = 0;
    for (int order = 1; !vacuous && order <= top && gate.pass; ++order) {
      const double h = order == 1 ? 1e-4 : 1e-3;
      const double tol = order == 1 ? 1e-6 : 1e-4;
      std::vector<MultiIndex> indices;
      Jet<double>::for_each_index(family.dim(), order, [&](const MultiIndex& a) {
        if (order_of(a) == order) indices.push_back(a);
      });
      for (const auto& s : ss) {
        bool inside = true;
        for (int i = 0; i < box.dim(); ++i)
          inside = inside && s[i] - box.lo(i) >= 2 * h && box.hi(i) - s[i] >= 2 * h;
        if (!inside) continue;
        for (const Complex z : probes)
          for (const auto& a : indices) {
            const double e = fd_check(glued, z, s, a, h);
            ++checks;
            worst_rel[order] = std::max(worst_rel[order], e);
            if (e > tol && gate.pass) {
              gate.pass = false;
              gate.witness = Witness{z, s};
              gate.detail = "order " + std::to_string(order) + " finite-difference mismatch " + num(e) + " > " +
                            num(tol);
            }
          }
      }
    }
    if (gate.pass && !vacuous) {
      gate.detail = std::to_string(checks) + " checks";
      for (int order = 1; order <= top; ++order)
        gate.detail += ", order " + std::to_string(order) + " max error " + num(worst_rel[order]);
      if (checks == 0) report.warnings.push_back("no interior grid points for finite-difference checks");
    }
    report.gates.push_back(std::move(gate));
  }

  if (!ss.empty() && grid.z_samples > 0) {
    int alpha = grid.alpha.value_or(glued.order());
    if (alpha > glued.order()) {
      report.warnings.push_back("alpha clamped to the solution order " + std::to_string(glued.order()));
      alpha = glued.order();
    }
    GateResult gate{"smoothness_norms", true, "", {}};
    for (int a = 0; a <= alpha; ++a) {
      report.cnorms.push_back(cnorm_report(glued, a, std::max(64, 4 * grid.z_samples), grid.s_samples));
      const auto& r = report.cnorms.back();
      if (!std::isfinite(r.g_norm_estimate) || !std::isfinite(r.ratio)) gate.pass = false;
      gate.detail += (a ? ", " : "") + std::string("|g|_C") + std::to_string(a) + " ~ " + num(r.g_norm_estimate);
    }
    if (report.cnorms.front().g_norm_estimate > 2.0 * glued.C0() * (1.0 + 1e-9)) gate.pass = false;
    report.gates.push_back(std::move(gate));
  }
  return report;
}

int run_check(const fs::path& config_path, bool strict, std::ostream& out, std::ostream& err) {
  try {
    const ProblemConfig config = load_config(config_path);
    const NormCert delta = delta_lower(config.family, config.solver.delta_grid);
    const NormCert sup =
        family_sup_norm(config.family, config.solver.boundary_samples, config.solver.delta_grid.k_per_axis);
    const bool corona = corona_certified(delta);
    const bool normalized = sup.hi <= 1.0;
    out << "inf |f|_2  in " << bracket(delta) << (corona ? "  corona condition certified" : "  NOT certified");
    if (!corona && delta.witness) out << " (minimum near " << where(*delta.witness) << ")";
    out << '\n';
    out << "sup |f|_2  in " << bracket(sup) << (normalized ? "  normalized" : "  exceeds 1");
    if (!normalized)
      out << "; try `corona rescale --config " << config_path.string() << " --factor " << num(1.0 / sup.hi, 3) << "`";
    out << '\n';
    const bool pass = corona && (normalized || !strict);
    out << "verdict: " << (pass ? "pass" : "fail") << '\n';
    return pass ? kExitPass : kExitGate;
  } catch (const CoronaError& e) {
    return fail_with(e, err);
  }
}

int run_rescale(const fs::path& config_path, std::optional<double> factor, const std::optional<fs::path>& out_path,
                std::ostream& out, std::ostream& err) {
  try {
    ProblemConfig config = load_config(config_path);
    const int samples = config.solver.boundary_samples;
    const int kn = config.solver.delta_grid.k_per_axis;
    const NormCert sup = family_sup_norm(config.family, samples, kn);
    double c;
    if (factor) {
      c = *factor;
      if (!(c > 0.0) || !std::isfinite(c)) {
        err << "error: --factor must be a positive number\n";
        return kExitUsage;
      }
    } else {
      if (!(sup.hi > 0.0)) {
        err << "error: the data vanishes identically and cannot be normalized\n";
        return kExitGate;
      }
      const double target = 1.0 / sup.hi;
      const double unit = std::pow(10.0, std::floor(std::log10(target)) - 2.0);
      double mantissa = std::floor(target / unit);
      c = mantissa * unit;
      while (mantissa > 1.0 && family_sup_norm(config.family.scaled(c), samples, kn).hi > 1.0) c = --mantissa * unit;
    }
    config.family = config.family.scaled(c);
    config.scale *= c;
    const NormCert scaled = family_sup_norm(config.family, samples, kn);
    fs::path target = out_path.value_or(config_path.parent_path() / (config_path.stem().string() + ".rescaled.json"));
    write_json(config_to_json(config), target);
    out << "factor " << num(c, 17) << " applied; sup |f|_2 now in " << bracket(scaled) << '\n';
    if (scaled.hi > 1.0) err << "warning: rescaled data is not certified to satisfy sup |f|_2 <= 1\n";
    out << "wrote " << target.string() << '\n';
    return kExitPass;
  } catch (const CoronaError& e) {
    return fail_with(e, err);
  }
}

int run_solve(const fs::path& config_path, const std::optional<fs::path>& out_path, std::ostream& out,
              std::ostream& err) {
  std::optional<ProblemConfig> loaded;
  try {
    loaded = load_config(config_path);
  } catch (const CoronaError& e) {
    return fail_with(e, err);
  }
  const ProblemConfig& config = *loaded;
  const fs::path target = out_path.value_or(fs::path(config.output_dir) / (config.name + ".solution.json"));
  fs::path report_path = target;
  report_path.replace_extension(".report.json");
  Json report = {{"name", config.name}, {"config", config_path.string()}};
  Json warnings = Json::array();
  int code = kExitPass;
  const auto start = std::chrono::steady_clock::now();
  try {
    const GluedSolution glued = solve(config.family, config.solver);
    const double solve_ms = elapsed_ms(start);
    const auto& d = glued.diagnostics();
    if (d.sup_cert.hi > 1.0) {
      warnings.push_back("sup |f|_2 may exceed 1 (upper bound " + num(d.sup_cert.hi) +
                         "); the constant bound assumes normalized data");
      err << "warning: " << warnings.back().get<std::string>() << '\n';
    }
    write_json(solution_to_json(glued, config.name, config.scale), target);
    const auto cn_start = std::chrono::steady_clock::now();
    Json cnorms = Json::array();
    for (int a = 0; a <= glued.order(); ++a) cnorms.push_back(cnorm_json(cnorm_report(glued, a, 64, 9)));
    const auto& cover = glued.pou().cover();
    report["verdict"] = "pass";
    report["solution"] = target.string();
    report["delta"] = cert_to_json(d.delta_cert);
    report["sup"] = cert_to_json(d.sup_cert);
    report["C0"] = glued.C0();
    report["centers"] = cover.size();
    report["radius"] = cover.infinite() ? Json(nullptr) : Json(cover.radius);
    report["residual"] = cert_to_json(glued.residual_cert());
    report["refinements"] = d.refinements;
    report["lipschitz_s"] = d.lipschitz_s;
    report["cnorm"] = cnorms;
    report["timings_ms"] = {{"solve", solve_ms}, {"cnorm", elapsed_ms(cn_start)}};
    out << "inf |f|_2 in " << bracket(d.delta_cert) << ", sup |f|_2 in " << bracket(d.sup_cert) << '\n';
    out << cover.size() << " centre(s), radius " << (cover.infinite() ? std::string("inf") : num(cover.radius))
        << ", C0 = " << num(glued.C0(), 10) << ", sup |1 - phi| in " << bracket(glued.residual_cert()) << '\n';
    out << "|g| <= " << num(2.0 * glued.C0(), 10) << " on disc x K\n";
    out << "wrote " << target.string() << '\n';
  } catch (const CoronaError& e) {
    code = fail_with(e, err);
    report["verdict"] = "fail";
    report["error"] = {{"kind", to_string(e.kind())}, {"stage", e.stage()}, {"message", e.what()}};
    report["timings_ms"] = {{"solve", elapsed_ms(start)}};
  }
  report["warnings"] = warnings;
  try {
    write_json(report, report_path);
  } catch (const CoronaError& e) {
    return fail_with(e, err);
  }
  return code;
}

int run_verify(const fs::path& solution_path, const GridOptions& grid, const std::optional<fs::path>& report_path,
               std::ostream& out, std::ostream& err) {
  try {
    const StoredSolution stored = load_solution(solution_path);
    const VerifyReport report = verify_solution(stored.solution, grid);
    for (const auto& g : report.gates) {
      out << (g.pass ? "PASS " : "FAIL ") << g.name << ": " << g.detail;
      if (!g.pass && g.witness) out << " at " << where(*g.witness);
      out << '\n';
    }
    for (const auto& r : report.cnorms)
      out << "C^" << r.alpha << " estimates: |g| ~ " << num(r.g_norm_estimate) << ", |f| ~ " << num(r.f_norm_estimate)
          << ", ratio " << num(r.ratio) << " (" << r.grid << ")\n";
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    out << "verdict: " << (report.pass() ? "pass" : "fail") << '\n';
    if (report_path) write_json(report.to_json(), *report_path);
    return report.pass() ? kExitPass : kExitGate;
  } catch (const CoronaError& e) {
    return fail_with(e, err);
  }
}

int run_eval_grid(const fs::path& solution_path, const GridOptions& grid, const fs::path& out_path,
                  std::ostream& out, std::ostream& err) {
  try {
    const StoredSolution stored = load_solution(solution_path);
    const GluedSolution& glued = stored.solution;
    const int dim = glued.family().dim();
    const std::vector<Complex> zs = disc_grid(grid.z_samples);
    const std::vector<SPoint> ss = s_grid(glued.family().domain(), grid.s_samples);
    std::vector<std::string> chunks(zs.size());
    std::vector<double> min_phi(zs.size(), std::numeric_limits<double>::infinity());
    std::vector<double> max_g(zs.size(), 0.0);
    parallel_for(zs.size(), [&](std::size_t i) {
      std::string& chunk = chunks[i];
      char buf[64];
      auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        chunk += buf;
        chunk += sep;
      };
      for (const auto& s : ss) {
        const auto gt = gtilde_eval(glued, zs[i], s);
        const Complex phi = phi_eval(glued, zs[i], s);
        std::vector<Complex> g(gt.size());
        for (std::size_t k = 0; k < gt.size(); ++k) g[k] = gt[k] / phi;
        min_phi[i] = std::min(min_phi[i], std::abs(phi));
        max_g[i] = std::max(max_g[i], l2_norm(g));
        for (std::size_t k = 0; k < g.size(); ++k) {
          put(zs[i].real(), ',');
          put(zs[i].imag(), ',');
          for (double x : s) put(x, ',');
          chunk += std::to_string(k + 1);
          chunk += ',';
          put(g[k].real(), ',');
          put(g[k].imag(), ',');
          put(std::abs(phi), '\n');
        }
      }
    });
    std::ofstream csv(out_path, std::ios::binary | std::ios::trunc);
    if (!csv) throw CoronaError(ErrorKind::config, out_path.string() + ": cannot write file");
    csv << "re_z,im_z,s1" << (dim == 2 ? ",s2" : "") << ",k,re_g,im_g,abs_phi\n";
    for (const auto& c : chunks) csv << c;
    csv.close();
    if (!csv) throw CoronaError(ErrorKind::config, out_path.string() + ": write failed");

    double lowest = std::numeric_limits<double>::infinity(), largest = 0.0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      lowest = std::min(lowest, min_phi[i]);
      largest = std::max(largest, max_g[i]);
    }
    const std::size_t rows = zs.size() * ss.size() * glued.family().size();
    fs::path summary_path = out_path;
    summary_path.replace_extension(".summary.json");
    Json summary = {{"csv", out_path.string()},
                    {"rows", rows},
                    {"z_samples", grid.z_samples},
                    {"s_samples", grid.s_samples},
                    {"min_abs_phi", rows ? Json(lowest) : Json(nullptr)},
                    {"max_abs_g", largest},
                    {"bound", 2.0 * glued.C0()},
                    {"C0", glued.C0()},
                    {"certificates",
                     {{"delta", cert_to_json(glued.diagnostics().delta_cert)},
                      {"sup", cert_to_json(glued.diagnostics().sup_cert)},
                      {"residual", cert_to_json(glued.residual_cert())}}}};
    write_json(summary, summary_path);
    out << "wrote " << rows << " row(s) to " << out_path.string() << '\n';
    if (rows == 0) err << "warning: evaluation grid is empty\n";
    if (rows && lowest < 0.5) {
      err << "warning: |phi| drops to " << num(lowest) << " < 1/2 on the grid\n";
      return kExitGate;
    }
    return kExitPass;
  } catch (const CoronaError& e) {
    return fail_with(e, err);
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified smooth solutions of parametrized Bezout equations on the disc", "corona"};
  app.require_subcommand(1);

  std::string config, solution, output, factor = "auto";
  bool strict = false;
  GridOptions grid;
  int alpha = -1;

  auto* check = app.add_subcommand("check", "Certify the corona condition and report sup |f|");
  check->add_option("--config", config, "Problem config (JSON)")->required();
  check->add_flag("--strict", strict, "Also fail when sup |f| is not certified <= 1");

  auto* rescale = app.add_subcommand("rescale", "Scale the data so that sup |f| <= 1");
  rescale->add_option("--config", config, "Problem config (JSON)")->required();
  rescale->add_option("--factor", factor, "Positive factor, or 'auto'");
  rescale->add_option("--out", output, "Output config path");

  auto* solve_cmd = app.add_subcommand("solve", "Build and certify a smooth Bezout solution");
  solve_cmd->add_option("--config", config, "Problem config (JSON)")->required();
  solve_cmd->add_option("--out", output, "Solution path (a .report.json is written alongside)");

  auto* verify = app.add_subcommand("verify", "Recheck every certificate of a stored solution");
  verify->add_option("--solution", solution, "Solution file (JSON)")->required();
  verify->add_option("--z-samples", grid.z_samples, "Grid points per side in z")->check(CLI::NonNegativeNumber);
  verify->add_option("--s-samples", grid.s_samples, "Grid points per parameter axis")->check(CLI::NonNegativeNumber);
  verify->add_option("--alpha", alpha, "Highest smoothness order to report")->check(CLI::NonNegativeNumber);
  verify->add_option("--out", output, "Verification report path (JSON)");

  auto* eval = app.add_subcommand("eval-grid", "Export g on a z x s grid as CSV");
  eval->add_option("--solution", solution, "Solution file (JSON)")->required();
  eval->add_option("--out", output, "CSV path")->required();
  eval->add_option("--z-samples", grid.z_samples, "Grid points per side in z")->check(CLI::NonNegativeNumber);
  eval->add_option("--s-samples", grid.s_samples, "Grid points per parameter axis")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << '\n';
      return kExitPass;
    }
    err << "error: " << e.what() << '\n' << "run `corona --help` for usage\n";
    return kExitUsage;
  }
  const auto out_opt = output.empty() ? std::optional<fs::path>{} : std::optional<fs::path>{output};
  if (alpha >= 0) grid.alpha = alpha;

  if (check->parsed()) return run_check(config, strict, out, err);
  if (rescale->parsed()) {
    std::optional<double> f;
    if (factor != "auto") {
      try {
        std::size_t used = 0;
        f = std::stod(factor, &used);
        if (used != factor.size()) throw std::invalid_argument(factor);
      } catch (const std::exception&) {
        err << "error: --factor expects a number or 'auto', got '" << factor << "'\n";
        return kExitUsage;
      }
    }
    return run_rescale(config, f, out_opt, out, err);
  }
  if (solve_cmd->parsed()) return run_solve(config, out_opt, out, err);
  if (verify->parsed()) return run_verify(solution, grid, out_opt, out, err);
  if (eval->parsed()) return run_eval_grid(solution, grid, output, out, err);
  return kExitUsage;
}

}  // namespace corona
