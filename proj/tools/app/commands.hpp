#pragma once

// The quadax command line: axes, verify, constructible, figure.
//
// Exit codes: 0 success, 1 geometric degeneracy (or a failed verify
// invariant), 2 input error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace quadax::app {

enum ExitCode { kOk = 0, kDegenerate = 1, kInputError = 2 };

struct RunConfig {
  std::string command;
  std::string input;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  std::string report_path;  // empty: stdout
  std::string svg_path;     // empty: stdout
};

/// Default 1e-8, overridden by QUADRIC_AXES_TOL; throws InvalidInput when
/// the variable is set but not a positive number.
double pipeline_tolerance();

/// Each command returns the report it prints.
nlohmann::json cmd_axes(const RunConfig& cfg, std::optional<std::size_t> role = std::nullopt);

struct VerifyOptions {
  std::optional<std::size_t> random;   // number of random systems
  std::vector<double> ellipsoid;       // semi-axes
};
/// Sets pass to false when an invariant fails.
nlohmann::json cmd_verify(const RunConfig& cfg, const VerifyOptions& opt, bool& pass);

struct ExactArgs {
  std::optional<std::string> a, b, x, y, zsq;
  std::optional<std::string> quartic;  // "c4,c3,c2,c1,c0"
};
nlohmann::json cmd_constructible(const RunConfig& cfg, const ExactArgs& args);

/// Returns the SVG text.
std::string cmd_figure(const RunConfig& cfg, const std::string& which, std::optional<std::size_t> role = std::nullopt);

/// Full front end; argv as given to main.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace quadax::app
