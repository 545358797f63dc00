#pragma once

// Command implementations behind the cohrank CLI. Each returns the text to
// emit and the process exit code so the commands are testable in-process.
//
// Exit codes: 0 success, 1 internal error, 2 infeasible-but-valid query,
// 3 invalid input.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "cohrank/matrix_kernel.hpp"

namespace cohrank {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitInvalid = 3;

struct SweepConfig {
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  int steps = 1;
  int n_max = 1;
  std::int64_t seed = 0;
  Tolerances tol{};
  std::size_t dim_cap = kDefaultDimensionCap;
  /// Worker threads for grid points; 0 picks hardware concurrency.
  unsigned threads = 0;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;
};

/// Runs body and maps library exceptions to exit codes; the message goes to
/// output on failure.
CommandResult run_guarded(const std::function<CommandResult()>& body);

/// Alpha values of the sweep grid, ascending.
std::vector<double> sweep_alphas(const SweepConfig& cfg);

/// CSV table with one row per (alpha, n), alpha ascending then n.
CommandResult cmd_nonadd(const SweepConfig& cfg);

struct DecomposeParams {
  std::string family;
  double alpha = 0.0;
  int n = 1;
  int d = 1;
  std::size_t dim_cap = kDefaultDimensionCap;
};

/// JSON witness ensemble with an embedded report, for family omega-power or rho-d.
CommandResult cmd_decompose(const DecomposeParams& p, const Tolerances& tol = {});

/// Feasibility, robustness and, when feasible, the synthesized channel.
CommandResult cmd_dio(const std::string& state_json, int d, const Tolerances& tol = {});

CommandResult cmd_cost(double alpha, int n, std::size_t dim_cap = kDefaultDimensionCap,
                       const Tolerances& tol = {});

struct StateParams {
  std::string family;  // omega, omega-power, rho-d, max-coherent
  double alpha = 0.0;
  int n = 1;
  int d = 1;
  bool lift = false;
  std::size_t dim_cap = kDefaultDimensionCap;
};

/// Emits a named state in the matrix JSON schema, optionally MC-lifted.
CommandResult cmd_state(const StateParams& p);

/// Dimension cap from COHRANK_DIM_CAP, or the default.
std::size_t dimension_cap_from_env();

}  // namespace cohrank
