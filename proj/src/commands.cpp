#include "cohrank/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <sstream>
#include <thread>
#include <vector>

#include "cohrank/bounds.hpp"
#include "cohrank/channels.hpp"
#include "cohrank/decompositions.hpp"
#include "cohrank/serialization.hpp"
#include "cohrank/states.hpp"

namespace cohrank {

namespace {

std::string csv_number(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(12) << x;
  return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string nonadd_row(double alpha, int n, const SweepConfig& cfg) {
  const DensityMatrix state = omega_power(alpha, n, cfg.dim_cap);
  const int l1_lower = l1_rank_lower_bound(state);
  const bool feasible = omega_power_feasible(alpha, n);
  const CostReport cost = cost_report(alpha, n, cfg.dim_cap, cfg.tol);

  std::ostringstream row;
  row << csv_number(alpha) << ',' << n << ',' << l1_lower << ','
      << (feasible ? "true" : "false") << ',';
  if (cost.certified_rank) row << *cost.certified_rank;
  row << ',';
  if (cost.zero_error_certified) row << csv_number(cost.zero_error_upper);
  row << ',' << csv_number(cost.regularized_lower) << ',' << csv_number(cost.regularized_upper)
      << ',' << csv_number(*cost.asymptotic_ec) << '\n';
  return row.str();
}

void validate(const SweepConfig& cfg) {
  if (!(cfg.alpha_min >= 0.0 && cfg.alpha_max <= 1.0 && cfg.alpha_min <= cfg.alpha_max)) {
    throw DomainError("sweep requires 0 <= alpha-min <= alpha-max <= 1");
  }
  if (cfg.steps < 1) throw DomainError("steps must be >= 1");
  if (cfg.n_max < 1) throw DomainError("n-max must be >= 1");
  if (std::exp2(cfg.n_max) > static_cast<double>(cfg.dim_cap)) {
    throw DimensionError("2^n-max exceeds the dimension cap " + std::to_string(cfg.dim_cap));
  }
}

}  // namespace

CommandResult run_guarded(const std::function<CommandResult()>& body) {
  try {
    return body();
  } catch (const InfeasibleError& e) {
    return {kExitInfeasible, std::string("infeasible: ") + e.what() + "\n"};
  } catch (const DomainError& e) {
    return {kExitInvalid, std::string("invalid input: ") + e.what() + "\n"};
  } catch (const DimensionError& e) {
    return {kExitInvalid, std::string("invalid input: ") + e.what() + "\n"};
  } catch (const InvalidStateError& e) {
    return {kExitInvalid, std::string("invalid input: ") + e.what() + "\n"};
  } catch (const ParseError& e) {
    return {kExitInvalid, std::string("invalid input: ") + e.what() + "\n"};
  } catch (const NotMaximallyCorrelatedError& e) {
    return {kExitInvalid, std::string("invalid input: ") + e.what() + "\n"};
  } catch (const Json::exception& e) {
    return {kExitInvalid, std::string("invalid input: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kExitInternal, std::string("internal error: ") + e.what() + "\n"};
  }
}

std::vector<double> sweep_alphas(const SweepConfig& cfg) {
  std::vector<double> out;
  out.reserve(cfg.steps);
  for (int k = 0; k < cfg.steps; ++k) {
    if (cfg.steps == 1) {
      out.push_back(cfg.alpha_min);
    } else {
      const double t = static_cast<double>(k) / (cfg.steps - 1);
      out.push_back(k == cfg.steps - 1 ? cfg.alpha_max
                                       : cfg.alpha_min + t * (cfg.alpha_max - cfg.alpha_min));
    }
  }
  return out;
}

CommandResult cmd_nonadd(const SweepConfig& cfg) {
  return run_guarded([&] {
    validate(cfg);
    const std::vector<double> alphas = sweep_alphas(cfg);
    const std::size_t total = alphas.size() * static_cast<std::size_t>(cfg.n_max);
    std::vector<std::string> rows(total);
    std::vector<std::exception_ptr> errors(total);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
      for (std::size_t k = next++; k < total; k = next++) {
        try {
          rows[k] = nonadd_row(alphas[k / cfg.n_max], static_cast<int>(k % cfg.n_max) + 1, cfg);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();

    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);

    std::string csv =
        "alpha,n,l1_lower,construction_feasible,certified_rank,zero_error_per_copy,"
        "reg_lower,reg_upper,ec_asymptotic\n";
    for (const auto& r : rows) csv += r;
    return CommandResult{kExitOk, std::move(csv)};
  });
}

CommandResult cmd_decompose(const DecomposeParams& p, const Tolerances& tol) {
  return run_guarded([&] {
    Json doc;
    doc["family"] = p.family;
    if (p.family == "omega-power") {
      doc["alpha"] = p.alpha;
      doc["n"] = p.n;
      if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
      if (!omega_power_feasible(p.alpha, p.n)) {
        doc["feasible"] = false;
        doc["boundary_alpha"] = omega_power_boundary(p.n);
        return CommandResult{kExitInfeasible, dump(doc)};
      }
      const WeightedEnsemble ens = decompose_omega_power(p.alpha, p.n, p.dim_cap);
      const EnsembleReport rep = verify_ensemble(ens, omega_power(p.alpha, p.n, p.dim_cap), tol.amp);
      doc["feasible"] = true;
      doc["boundary_alpha"] = omega_power_boundary(p.n);
      doc["ensemble"] = ensemble_to_json(ens);
      doc["report"] = report_to_json(rep);
    } else if (p.family == "rho-d") {
      doc["d"] = p.d;
      if (static_cast<std::size_t>(2 * std::max(p.d, 0)) > p.dim_cap) {
        throw DimensionError("rho-d dimension exceeds the dimension cap");
      }
      const WeightedEnsemble ens = decompose_rho_d(p.d);
      const EnsembleReport rep = verify_ensemble(ens, rho_d(p.d, p.dim_cap), tol.amp);
      doc["feasible"] = true;
      doc["ensemble"] = ensemble_to_json(ens);
      doc["report"] = report_to_json(rep);
    } else {
      throw DomainError("unknown family '" + p.family + "' (expected omega-power or rho-d)");
    }
    return CommandResult{kExitOk, dump(doc)};
  });
}

CommandResult cmd_dio(const std::string& state_json, int d, const Tolerances& tol) {
  return run_guarded([&] {
    const DensityMatrix target = density_from_json(parse_json(state_json), tol);
    if (d < 2) throw DomainError("d must be >= 2");
    Json doc;
    doc["d"] = d;
    doc["delta_robustness"] = delta_robustness(target, tol);
    doc["dilution_dimension"] = dilution_dimension(target, tol);
    const bool feasible = dio_feasible(target, d, tol);
    doc["feasible"] = feasible;
    if (!feasible) return CommandResult{kExitInfeasible, dump(doc)};

    const DioChannel ch = dio_synthesize(target, d, tol);
    doc["channel"] = channel_to_json(ch);
    doc["cptp"] = report_to_json(check_cptp(ch.channel(), tol));
    doc["covariance"] = report_to_json(check_dephasing_covariance(ch, tol));
    doc["dio_constraint_residual"] = dio_constraint_residual(ch);
    return CommandResult{kExitOk, dump(doc)};
  });
}

CommandResult cmd_cost(double alpha, int n, std::size_t dim_cap, const Tolerances& tol) {
  return run_guarded([&] {
    return CommandResult{kExitOk, dump(cost_report_to_json(cost_report(alpha, n, dim_cap, tol)))};
  });
}

CommandResult cmd_state(const StateParams& p) {
  return run_guarded([&] {
    std::optional<DensityMatrix> rho;
    if (p.family == "omega") {
      rho = omega(p.alpha);
    } else if (p.family == "omega-power") {
      rho = omega_power(p.alpha, p.n, p.dim_cap);
    } else if (p.family == "rho-d") {
      rho = rho_d(p.d, p.dim_cap);
    } else if (p.family == "max-coherent") {
      rho = max_coherent(p.d).density();
    } else {
      throw DomainError("unknown family '" + p.family +
                        "' (expected omega, omega-power, rho-d or max-coherent)");
    }
    if (!p.lift) return CommandResult{kExitOk, dump(matrix_to_json(rho->matrix()))};
    const Index d = rho->dim();
    if (static_cast<std::size_t>(d * d) > p.dim_cap) {
      throw DimensionError("lifted dimension exceeds the dimension cap");
    }
    return CommandResult{kExitOk,
                         dump(matrix_to_json(mc_lift(*rho).matrix(), std::array<Index, 2>{d, d}))};
  });
}

std::size_t dimension_cap_from_env() {
  const char* v = std::getenv("COHRANK_DIM_CAP");
  if (v == nullptr || *v == '\0') return kDefaultDimensionCap;
  char* end = nullptr;
  const unsigned long long cap = std::strtoull(v, &end, 10);
  if (end == v || *end != '\0' || cap == 0) {
    throw DomainError(std::string("COHRANK_DIM_CAP must be a positive integer, got '") + v + "'");
  }
  return static_cast<std::size_t>(cap);
}

}  // namespace cohrank
