#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "corona/io.hpp"
#include "corona/smoothness.hpp"

namespace corona {

enum ExitCode : int { kExitPass = 0, kExitGate = 1, kExitUsage = 2 };

struct GridOptions {
  int z_samples = 20;  // per side of the square mapped onto the disc
  int s_samples = 20;  // per parameter axis
  std::optional<int> alpha;
};

/// n x n points of [-1, 1]^2 pushed onto the closed disc by the elliptical
/// map (x, y) -> (x sqrt(1 - y^2/2), y sqrt(1 - x^2/2)); row-major in y, x.
std::vector<Complex> disc_grid(int n);

struct GateResult {
  std::string name;
  bool pass = false;
  std::string detail;
  std::optional<Witness> witness;
};

struct VerifyReport {
  std::vector<GateResult> gates;
  std::vector<CAlphaReport> cnorms;
  std::vector<std::string> warnings;
  bool pass() const noexcept;
  Json to_json() const;
};

/// Recomputes every certificate and checks the glued solution on a grid.
VerifyReport verify_solution(const GluedSolution& glued, const GridOptions& grid);

int run_check(const std::filesystem::path& config, bool strict, std::ostream& out, std::ostream& err);
// factor == nullopt picks the largest 3-digit factor that certifies |f| <= 1.
int run_rescale(const std::filesystem::path& config, std::optional<double> factor,
                const std::optional<std::filesystem::path>& out_path, std::ostream& out, std::ostream& err);
int run_solve(const std::filesystem::path& config, const std::optional<std::filesystem::path>& out_path,
              std::ostream& out, std::ostream& err);
int run_verify(const std::filesystem::path& solution, const GridOptions& grid,
               const std::optional<std::filesystem::path>& report_path, std::ostream& out, std::ostream& err);
int run_eval_grid(const std::filesystem::path& solution, const GridOptions& grid,
                  const std::filesystem::path& out_path, std::ostream& out, std::ostream& err);

/// Argument parsing and dispatch for the `corona` executable.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace corona
