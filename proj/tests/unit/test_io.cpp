#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "corona/cli.hpp"
#include "corona/error.hpp"
#include "corona/io.hpp"
#include "corona/parallel.hpp"
#include "support.hpp"

using namespace corona;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = CORONA_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "corona-unit";
  fs::create_directories(dir);
  return dir / name;
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "corona");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("family round trip") {
    const auto f = testing::plane();
    CHECK(family_from_json(family_to_json(f)) == f);
    const auto j = family_to_json(testing::worked());
    CHECK(family_to_json(family_from_json(j)) == j);
  }

  TEST_CASE("shipped configs are a parse-serialize fixpoint") {
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(kConfigs)) {
      const auto name = entry.path().filename().string();
      if (entry.path().extension() != ".json" || name.find(".solution") != std::string::npos) continue;
      ++seen;
      const ProblemConfig once = load_config(entry.path());
      const Json j = config_to_json(once);
      const ProblemConfig twice = config_from_json(j);
      CHECK(twice.family == once.family);
      CHECK(twice.solver == once.solver);
      CHECK(config_to_json(twice) == j);
    }
    CHECK(seen >= 5);
  }

  TEST_CASE("complex coefficients are accepted as pairs") {
    const Json j = Json::parse(R"({"domain": {"lo": [0], "hi": [1]},
      "components": [[{"z": 0, "s": [0], "c": [0, 2]}]]})");
    const auto f = family_from_json(j);
    CHECK(eval_family(f, 0.0, SPoint{0.5})[0] == Complex(0, 2));
  }

  TEST_CASE("schema errors name the offending field") {
    const Json j = Json::parse(R"({"family": {"domain": {"lo": [0], "hi": [1]},
      "components": [[{"z": 1, "s": [0, 1], "c": 1}]]}})");
    try {
      config_from_json(j);
      FAIL("expected a config error");
    } catch (const CoronaError& e) {
      CHECK(e.kind() == ErrorKind::config);
      CHECK(std::string(e.what()).find("family.components[0][0].s") != std::string::npos);
    }
    CHECK_THROWS_AS(settings_from_json(Json::parse(R"({"order": 9})")), CoronaError);
    CHECK_THROWS_AS(settings_from_json(Json::parse(R"({"boundary_samples": 4})")), CoronaError);
  }

  TEST_CASE("malformed files are config errors") {
    const auto p = scratch("broken.json");
    std::ofstream(p) << "{ \"family\": ";
    try {
      load_config(p);
      FAIL("expected a config error");
    } catch (const CoronaError& e) {
      CHECK(e.kind() == ErrorKind::config);
    }
    CHECK_THROWS_AS(load_config(scratch("missing.json")), CoronaError);
  }

  TEST_CASE("solutions survive a round trip") {
    const GluedSolution g = solve(testing::steep());
    const Json j = solution_to_json(g, "steep", 0.5);
    const StoredSolution back = solution_from_json(j);
    CHECK(back.name == "steep");
    CHECK(back.scale == 0.5);
    CHECK(solution_to_json(back.solution, "steep", 0.5) == j);
    for (int i = 0; i < 50; ++i) {
      const Complex z = testing::random_disc_point();
      const SPoint s{testing::uniform(0, 1)};
      CHECK(g_eval(g, z, s) == g_eval(back.solution, z, s));
    }
  }

  TEST_CASE("disc grid") {
    CHECK(disc_grid(0).empty());
    CHECK(disc_grid(1) == std::vector<Complex>{Complex{}});
    const auto g = disc_grid(9);
    CHECK(g.size() == 81);
    for (const auto& z : g) CHECK(std::abs(z) <= 1.0 + 1e-15);
    CHECK(std::abs(std::abs(g.front()) - 1.0) < 1e-15);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with 2") {
    CHECK(cli({}) == kExitUsage);
    CHECK(cli({"solve"}) == kExitUsage);
    CHECK(cli({"verify", "--solution", "x.json", "--z-samples", "-3"}) == kExitUsage);
    CHECK(cli({"check", "--config", (kConfigs / "nope.json").string()}) == kExitUsage);
    CHECK(cli({"rescale", "--config", (kConfigs / "worked.json").string(), "--factor", "abc"}) == kExitUsage);
    CHECK(cli({"--help"}) == kExitPass);
  }

  TEST_CASE("check passes on the worked data and fails on a common zero") {
    std::string out;
    CHECK(cli({"check", "--config", (kConfigs / "worked.json").string()}, &out) == kExitPass);
    CHECK(out.find("rescale") != std::string::npos);
    CHECK(cli({"check", "--config", (kConfigs / "worked.json").string(), "--strict"}) == kExitGate);
    CHECK(cli({"check", "--config", (kConfigs / "common_zero.json").string()}) == kExitGate);
  }

  TEST_CASE("auto rescale certifies normalization") {
    const auto target = scratch("worked.rescaled.json");
    CHECK(cli({"rescale", "--config", (kConfigs / "worked.json").string(), "--out", target.string()}) == kExitPass);
    const auto cfg = load_config(target);
    CHECK(family_sup_norm(cfg.family).hi <= 1.0);
    CHECK(cfg.scale < 1.0 / std::sqrt(17.0));
    CHECK(cli({"check", "--config", target.string(), "--strict"}) == kExitPass);
  }

  TEST_CASE("solve, verify and export") {
    const auto sol = scratch("third.solution.json");
    CHECK(cli({"solve", "--config", (kConfigs / "worked_third.json").string(), "--out", sol.string()}) == kExitPass);
    CHECK(fs::exists(scratch("third.solution.report.json")));
    std::string out;
    CHECK(cli({"verify", "--solution", sol.string(), "--z-samples", "8", "--s-samples", "5"}, &out) == kExitPass);
    CHECK(out.find("verdict: pass") != std::string::npos);

    const auto csv = scratch("third.csv");
    CHECK(cli({"eval-grid", "--solution", sol.string(), "--out", csv.string(), "--z-samples", "2", "--s-samples", "2"}) ==
          kExitPass);
    const std::string text = slurp(csv);
    CHECK(text.rfind("re_z,im_z,s1,k,re_g,im_g,abs_phi\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 4 * 2 * 2);
    CHECK(fs::exists(scratch("third.summary.json")));
  }

  TEST_CASE("empty grids") {
    const auto sol = kConfigs / "worked_third.solution.json";
    const auto csv = scratch("empty.csv");
    CHECK(cli({"eval-grid", "--solution", sol.string(), "--out", csv.string(), "--z-samples", "0"}) == kExitPass);
    CHECK(slurp(csv) == "re_z,im_z,s1,k,re_g,im_g,abs_phi\n");
    std::string err;
    CHECK(cli({"verify", "--solution", sol.string(), "--s-samples", "0"}, nullptr, &err) == kExitPass);
    CHECK(err.find("vacuous") != std::string::npos);
    err.clear();
    CHECK(cli({"verify", "--solution", sol.string(), "--z-samples", "1", "--s-samples", "1"}, nullptr, &err) ==
          kExitPass);
    CHECK(err.find("single point") != std::string::npos);
  }

  TEST_CASE("a corrupted solution fails verification with a witness") {
    std::string out;
    CHECK(cli({"verify", "--solution", (kConfigs / "corrupted.solution.json").string()}, &out) == kExitGate);
    CHECK(out.find("FAIL residual") != std::string::npos);
    CHECK(out.find("stale") != std::string::npos);
    CHECK(out.find(" at z=") != std::string::npos);
  }

  TEST_CASE("solve reports corona violations as gate failures") {
    CHECK(cli({"solve", "--config", (kConfigs / "common_zero.json").string(), "--out",
               scratch("cz.solution.json").string()}) == kExitGate);
    const Json report = read_json(scratch("cz.solution.report.json"));
    CHECK(report["verdict"] == "fail");
    CHECK(report["error"]["kind"] == "corona-violated");
  }
}

TEST_SUITE("parallel") {
  TEST_CASE("every index runs exactly once") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    parallel_for(0, [](std::size_t) { FAIL("no work expected"); });
  }

  TEST_CASE("worker exceptions reach the caller") {
    CHECK_THROWS_AS(parallel_for(64,
                                 [](std::size_t i) {
                                   if (i == 37) throw CoronaError(ErrorKind::internal, "boom");
                                 }),
                    CoronaError);
  }

  TEST_CASE("thread cap from the environment") {
    ::setenv("CORONA_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    ::setenv("CORONA_THREADS", "junk", 1);
    CHECK(worker_count() >= 1);
    ::unsetenv("CORONA_THREADS");
  }
}
