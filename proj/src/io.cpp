#include "corona/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "corona/error.hpp"

namespace corona {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw CoronaError(ErrorKind::config, where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

Json number_json(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(where, "expected a number or [re, im]");
}

std::vector<double> vector_from(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

CPoly cpoly_from(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a coefficient array");
  std::vector<Complex> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(complex_from(j[i], where + "[" + std::to_string(i) + "]"));
  if (c.empty()) c.push_back(Complex{});
  return CPoly(std::move(c));
}

Json cpoly_json(const CPoly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(complex_json(c));
  return out;
}

int positive(const Json& j, const char* key, int fallback, int minimum, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  const int v = integer(*it, where + "." + key);
  if (v < minimum) fail(where + "." + key, "must be at least " + std::to_string(minimum));
  return v;
}

}  // namespace

Json family_to_json(const ParamFamily& family) {
  Json out;
  const Box& k = family.domain();
  Json lo = Json::array(), hi = Json::array();
  for (int i = 0; i < k.dim(); ++i) {
    lo.push_back(k.lo(i));
    hi.push_back(k.hi(i));
  }
  out["domain"] = {{"lo", lo}, {"hi", hi}};
  Json comps = Json::array();
  for (const auto& comp : family.components()) {
    Json terms = Json::array();
    for (std::size_t j = 0; j < comp.size(); ++j) {
      comp[j].for_each_term([&](const MultiIndex& e, Complex c) {
        Json s = Json::array();
        for (int i = 0; i < family.dim(); ++i) s.push_back(e[i]);
        Json coeff = c.imag() == 0.0 ? Json(c.real()) : complex_json(c);
        terms.push_back({{"z", j}, {"s", s}, {"c", coeff}});
      });
    }
    comps.push_back(terms);
  }
  out["components"] = comps;
  return out;
}

ParamFamily family_from_json(const Json& j) {
  const std::string where = "family";
  const Json& dom = field(j, "domain", where);
  Box box(vector_from(field(dom, "lo", where + ".domain"), where + ".domain.lo"),
          vector_from(field(dom, "hi", where + ".domain"), where + ".domain.hi"));
  const Json& comps = field(j, "components", where);
  if (!comps.is_array() || comps.empty()) fail(where + ".components", "expected a nonempty array");
  std::vector<ZPoly> out;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const std::string cw = where + ".components[" + std::to_string(k) + "]";
    if (!comps[k].is_array()) fail(cw, "expected an array of terms");
    ZPoly zp;
    for (std::size_t t = 0; t < comps[k].size(); ++t) {
      const std::string tw = cw + "[" + std::to_string(t) + "]";
      const Json& term = comps[k][t];
      const int zexp = integer(field(term, "z", tw), tw + ".z");
      if (zexp < 0 || zexp > 64) fail(tw + ".z", "z exponent must lie in [0, 64]");
      const Json& sj = field(term, "s", tw);
      if (!sj.is_array() || static_cast<int>(sj.size()) != box.dim())
        fail(tw + ".s", "expected " + std::to_string(box.dim()) + " exponent(s)");
      MultiIndex e{0, 0};
      for (int i = 0; i < box.dim(); ++i) {
        e[i] = integer(sj[i], tw + ".s[" + std::to_string(i) + "]");
        if (e[i] < 0 || e[i] > 8) fail(tw + ".s", "s exponents must lie in [0, 8]");
      }
      const Complex c = complex_from(field(term, "c", tw), tw + ".c");
      while (static_cast<int>(zp.size()) <= zexp) zp.push_back(SPoly(box.dim()));
      zp[zexp].add_term(e, c);
    }
    out.push_back(std::move(zp));
  }
  return ParamFamily(std::move(box), std::move(out));
}

Json settings_to_json(const SolverSettings& s) {
  return {{"boundary_samples", s.boundary_samples},
          {"radial_samples", s.delta_grid.radial},
          {"angular_samples", s.delta_grid.angular},
          {"k_samples", s.delta_grid.k_per_axis},
          {"residual_k_samples", s.residual_k_samples},
          {"order", s.order},
          {"max_refinements", s.max_refinements},
          {"degree_cap_factor", s.degree_cap_factor}};
}

SolverSettings settings_from_json(const Json& j) {
  const std::string where = "solver";
  if (!j.is_object()) fail(where, "expected an object");
  SolverSettings s;
  s.boundary_samples = positive(j, "boundary_samples", s.boundary_samples, 8, where);
  s.delta_grid.radial = positive(j, "radial_samples", s.delta_grid.radial, 2, where);
  s.delta_grid.angular = positive(j, "angular_samples", s.delta_grid.angular, 3, where);
  s.delta_grid.k_per_axis = positive(j, "k_samples", s.delta_grid.k_per_axis, 1, where);
  s.residual_k_samples = positive(j, "residual_k_samples", s.residual_k_samples, 1, where);
  s.order = positive(j, "order", s.order, 0, where);
  if (s.order > kMaxJetOrder) fail(where + ".order", "order r must not exceed 6");
  s.max_refinements = positive(j, "max_refinements", s.max_refinements, 0, where);
  s.degree_cap_factor = positive(j, "degree_cap_factor", s.degree_cap_factor, 1, where);
  return s;
}

Json cert_to_json(const NormCert& c) {
  Json out = {{"quantity", c.quantity}, {"lo", number_json(c.lo)}, {"hi", number_json(c.hi)},
              {"samples_used", c.samples_used}};
  if (c.witness) {
    Json s = Json::array();
    for (double x : c.witness->s) s.push_back(x);
    out["witness"] = {{"z", complex_json(c.witness->z)}, {"s", s}};
  }
  return out;
}

NormCert cert_from_json(const Json& j) {
  const std::string where = "certificate";
  NormCert c;
  c.quantity = field(j, "quantity", where).get<std::string>();
  c.lo = number(field(j, "lo", where), where + ".lo");
  c.hi = number(field(j, "hi", where), where + ".hi");
  c.samples_used = field(j, "samples_used", where).get<std::int64_t>();
  if (auto it = j.find("witness"); it != j.end())
    c.witness = Witness{complex_from(field(*it, "z", where), where + ".witness.z"),
                        vector_from(field(*it, "s", where), where + ".witness.s")};
  return c;
}

Json config_to_json(const ProblemConfig& config) {
  return {{"name", config.name},
          {"scale", config.scale},
          {"family", family_to_json(config.family)},
          {"solver", settings_to_json(config.solver)},
          {"output", {{"directory", config.output_dir}}}};
}

ProblemConfig config_from_json(const Json& j) {
  if (!j.is_object()) fail("config", "expected a JSON object");
  ProblemConfig config{.family = family_from_json(field(j, "family", "config")), .solver = {}};
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) fail("name", "expected a string");
    config.name = it->get<std::string>();
  }
  if (auto it = j.find("scale"); it != j.end()) {
    config.scale = number(*it, "scale");
    if (!(config.scale > 0.0) || !std::isfinite(config.scale)) fail("scale", "must be a positive number");
  }
  if (auto it = j.find("solver"); it != j.end()) config.solver = settings_from_json(*it);
  if (auto it = j.find("output"); it != j.end()) {
    if (auto d = it->find("directory"); d != it->end()) {
      if (!d->is_string()) fail("output.directory", "expected a string");
      config.output_dir = d->get<std::string>();
    }
  }
  return config;
}

Json solution_to_json(const GluedSolution& solution, const std::string& name, double scale) {
  const auto& cover = solution.pou().cover();
  Json centres = Json::array();
  for (const auto& c : cover.centers) centres.push_back(c);
  Json points = Json::array();
  for (std::size_t k = 0; k < cover.size(); ++k) {
    const auto& p = solution.points().solutions[k];
    Json g = Json::array();
    for (const auto& gk : p.g) g.push_back(cpoly_json(gk));
    points.push_back({{"center", cover.centers[k]},
                      {"solver", to_string(p.solver)},
                      {"g", g},
                      {"norm_cert", cert_to_json(p.norm_cert)},
                      {"residual_cert", cert_to_json(p.residual_cert)}});
  }
  const auto& d = solution.diagnostics();
  return {{"format", kSolutionFormat},
          {"name", name},
          {"scale", scale},
          {"family", family_to_json(solution.family())},
          {"solver", settings_to_json(solution.settings())},
          {"cover", {{"radius", number_json(cover.radius)}, {"centers", centres}}},
          {"points", points},
          {"C0", solution.C0()},
          {"certificates",
           {{"delta", cert_to_json(d.delta_cert)},
            {"sup", cert_to_json(d.sup_cert)},
            {"residual", cert_to_json(solution.residual_cert())}}},
          {"diagnostics",
           {{"lipschitz_s", d.lipschitz_s},
            {"pilot_C0", d.pilot_C0},
            {"refinements", d.refinements},
            {"radius_check",
             {{"pass", d.radius.pass},
              {"budget", d.radius.budget},
              {"perturbation", d.radius.perturbation},
              {"margin", number_json(d.radius.margin)}}}}}};
}

StoredSolution solution_from_json(const Json& j) {
  const std::string where = "solution";
  if (!j.is_object() || j.value("format", std::string{}) != kSolutionFormat)
    fail(where, std::string("expected format '") + kSolutionFormat + "'");
  ParamFamily family = family_from_json(field(j, "family", where));
  SolverSettings settings = settings_from_json(field(j, "solver", where));
  const Json& cj = field(j, "cover", where);
  Cover cover;
  cover.radius = number(field(cj, "radius", where + ".cover"), where + ".cover.radius");
  const Json& centres = field(cj, "centers", where + ".cover");
  for (std::size_t k = 0; k < centres.size(); ++k)
    cover.centers.push_back(vector_from(centres[k], where + ".cover.centers[" + std::to_string(k) + "]"));
  const Json& pj = field(j, "points", where);
  std::vector<PointSolution> points;
  for (std::size_t k = 0; k < pj.size(); ++k) {
    const std::string pw = where + ".points[" + std::to_string(k) + "]";
    PointSolution p;
    const std::string solver = field(pj[k], "solver", pw).get<std::string>();
    p.solver = solver == "least_norm" ? PointSolver::least_norm : PointSolver::gcd_chain;
    const Json& g = field(pj[k], "g", pw);
    for (std::size_t i = 0; i < g.size(); ++i) p.g.push_back(cpoly_from(g[i], pw + ".g[" + std::to_string(i) + "]"));
    p.norm_cert = cert_from_json(field(pj[k], "norm_cert", pw));
    p.residual_cert = cert_from_json(field(pj[k], "residual_cert", pw));
    points.push_back(std::move(p));
  }
  const Json& certs = field(j, "certificates", where);
  SolveDiagnostics diag;
  diag.delta_cert = cert_from_json(field(certs, "delta", where + ".certificates"));
  diag.sup_cert = cert_from_json(field(certs, "sup", where + ".certificates"));
  NormCert residual = cert_from_json(field(certs, "residual", where + ".certificates"));
  if (auto it = j.find("diagnostics"); it != j.end()) {
    diag.lipschitz_s = it->value("lipschitz_s", 0.0);
    diag.pilot_C0 = it->value("pilot_C0", 0.0);
    diag.refinements = it->value("refinements", 0);
    if (auto rc = it->find("radius_check"); rc != it->end()) {
      diag.radius.pass = rc->value("pass", false);
      diag.radius.budget = rc->value("budget", 0.0);
      diag.radius.perturbation = rc->value("perturbation", 0.0);
      diag.radius.margin = number((*rc)["margin"], "radius_check.margin");
    }
  }
  double scale = 1.0;
  if (auto it = j.find("scale"); it != j.end()) scale = number(*it, "scale");
  return StoredSolution{j.value("name", std::string{"problem"}), scale,
                        GluedSolution(std::move(family), std::move(cover), std::move(points), std::move(residual),
                                      settings, std::move(diag))};
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CoronaError(ErrorKind::config, path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw CoronaError(ErrorKind::config, path.string() + ": " + e.what());
  }
}

void write_json(const Json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CoronaError(ErrorKind::config, path.string() + ": cannot write file");
  out << j.dump(2) << '\n';
  if (!out) throw CoronaError(ErrorKind::config, path.string() + ": write failed");
}

ProblemConfig load_config(const std::filesystem::path& path) {
  try {
    return config_from_json(read_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw CoronaError(ErrorKind::config, path.string() + ": " + e.what());
  } catch (const CoronaError& e) {
    if (e.kind() == ErrorKind::config) throw;
    // Box / family validation failures are schema problems in a config file.
    throw CoronaError(ErrorKind::config, path.string() + ": " + e.what());
  }
}

StoredSolution load_solution(const std::filesystem::path& path) {
  try {
    return solution_from_json(read_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw CoronaError(ErrorKind::config, path.string() + ": " + e.what());
  } catch (const CoronaError& e) {
    if (e.kind() == ErrorKind::config) throw;
    throw CoronaError(ErrorKind::config, path.string() + ": " + e.what());
  }
}

}  // namespace corona
