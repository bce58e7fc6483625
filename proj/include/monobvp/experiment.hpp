#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "monobvp/error.hpp"
#include "monobvp/problems.hpp"
#include "monobvp/reference.hpp"
#include "monobvp/solver.hpp"

namespace monobvp {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNonConvergence = 2, kExitOracleFailure = 3 };

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ProblemSpec {
  std::string f_id = "linear";
  Coefficients coefficients;
  /// Registered forcing id; mutually exclusive with `manufactured`.
  std::string h_id;
  /// Exact-solution id whose forcing is derived from f.
  std::string manufactured;
};

struct ReferenceSpec {
  /// manufactured | shooting | fine-grid | linear-direct
  std::string kind = "manufactured";
  int n_ref = 8192;
  int steps = 100000;
  double root_tol = 1e-12;
};

struct DependenceSpec {
  double amplitude = 1.0;
  std::vector<int> m_list{1, 2, 4, 8, 16, 32, 64};
  int n_ref = 2048;
};

struct ProbeSpec {
  int trials = 10000;
  double r = 1.0;
  int n = 32;
  ProbeRanges ranges;
};

struct OutputSpec {
  /// csv | json
  std::string format = "csv";
  /// Empty means standard output.
  std::string path;
};

struct ExperimentConfig {
  ProblemSpec problem;
  std::vector<int> n_list{16, 32, 64, 128, 256, 512};
  SolverOptions solver;
  ReferenceSpec reference;
  DependenceSpec dependence;
  ProbeSpec probe;
  OutputSpec output;
  std::uint64_t seed = 0;
};

/// Parses the JSON layout documented in `config_help()`; missing fields keep
/// their defaults. Throws ConfigError on malformed input.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
std::string config_help();

/// f, h and (when manufactured) the exact solution named by a ProblemSpec.
struct ResolvedProblem {
  Nonlinearity f;
  RhsFunction h;
  std::optional<ReferenceSolution> exact;
};

ResolvedProblem resolve_problem(const ProblemSpec& spec);

/// Shortest-exact formatting used in every CSV cell (17 significant digits).
std::string format_number(double value);

/// Each command writes its report to `out` and diagnostics to `err`, and
/// returns one of the ExitCode values.
int cmd_list(std::ostream& out);
int cmd_solve(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_converge(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bounds(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_probe(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_depend(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace monobvp
