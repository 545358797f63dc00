// cohrank: sweeps, ensemble witnesses, DIO channel synthesis and cost reports.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cohrank/commands.hpp"

namespace {

int emit(const cohrank::CommandResult& r, const std::string& out_path) {
  if (r.exit_code != cohrank::kExitOk && r.exit_code != cohrank::kExitInfeasible) {
    std::cerr << r.output;
    return r.exit_code;
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << r.output;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot open " << out_path << " for writing\n";
      return cohrank::kExitInternal;
    }
    f << r.output;
    if (!f) {
      std::cerr << "write to " << out_path << " failed\n";
      return cohrank::kExitInternal;
    }
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence-rank and Schmidt-number certification toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  double tol_psd = cohrank::Tolerances{}.psd_rel;
  app.add_option("--out", out_path, "Output file (default stdout)");
  app.add_option("--tol-psd", tol_psd, "Relative PSD tolerance")->check(CLI::PositiveNumber);

  cohrank::SweepConfig sweep;
  auto* nonadd = app.add_subcommand("nonadd", "CSV sweep of omega(alpha)^n rank and cost bounds");
  nonadd->add_option("--alpha-min", sweep.alpha_min)->required();
  nonadd->add_option("--alpha-max", sweep.alpha_max)->required();
  nonadd->add_option("--steps", sweep.steps, "Grid points in alpha")->default_val(1);
  nonadd->add_option("--n-max", sweep.n_max, "Largest copy count")->default_val(1);
  nonadd->add_option("--seed", sweep.seed)->default_val(0);
  nonadd->add_option("--threads", sweep.threads, "Worker threads (0 = all cores)")->default_val(0);

  cohrank::DecomposeParams dec;
  auto* decompose = app.add_subcommand("decompose", "JSON witness ensemble for a state family");
  decompose->add_option("--family", dec.family, "omega-power | rho-d")->required();
  decompose->add_option("--alpha", dec.alpha);
  decompose->add_option("--n", dec.n)->default_val(1);
  decompose->add_option("--d", dec.d)->default_val(1);

  std::string state_path;
  int dio_d = 2;
  auto* dio = app.add_subcommand("dio", "Synthesize the phi_d -> rho DIO channel");
  dio->add_option("--state", state_path, "Target density matrix JSON")->required();
  dio->add_option("--d", dio_d)->default_val(2);

  double cost_alpha = 0.0;
  int cost_n = 1;
  auto* cost = app.add_subcommand("cost", "Cost report for the lifted omega(alpha) family");
  cost->add_option("--alpha", cost_alpha)->required();
  cost->add_option("--n", cost_n)->default_val(1);

  cohrank::StateParams st;
  auto* state = app.add_subcommand("state", "Emit a named state as matrix JSON");
  state->add_option("--family", st.family, "omega | omega-power | rho-d | max-coherent")
      ->required();
  state->add_option("--alpha", st.alpha);
  state->add_option("--n", st.n)->default_val(1);
  state->add_option("--d", st.d)->default_val(1);
  state->add_flag("--lift", st.lift, "Emit the maximally correlated lift");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cohrank::kExitOk : cohrank::kExitInvalid;
  }

  std::size_t cap = cohrank::kDefaultDimensionCap;
  try {
    cap = cohrank::dimension_cap_from_env();
  } catch (const std::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return cohrank::kExitInvalid;
  }
  cohrank::Tolerances tol;
  tol.psd_rel = tol_psd;

  if (*nonadd) {
    sweep.tol = tol;
    sweep.dim_cap = cap;
    return emit(cohrank::cmd_nonadd(sweep), out_path);
  }
  if (*decompose) {
    dec.dim_cap = cap;
    return emit(cohrank::cmd_decompose(dec, tol), out_path);
  }
  if (*dio) {
    std::ifstream f(state_path, std::ios::binary);
    if (!f) {
      std::cerr << "invalid input: cannot read " << state_path << "\n";
      return cohrank::kExitInvalid;
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return emit(cohrank::cmd_dio(buf.str(), dio_d, tol), out_path);
  }
  if (*cost) return emit(cohrank::cmd_cost(cost_alpha, cost_n, cap, tol), out_path);
  if (*state) {
    st.dim_cap = cap;
    return emit(cohrank::cmd_state(st), out_path);
  }
  return cohrank::kExitInternal;
}
