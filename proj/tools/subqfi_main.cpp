// Command-line front end: single-shot computations, bound reports, optimal
// state construction, variational maximization, shot-based estimation and the
// property-verification suite. All outputs are deterministic for a fixed
// argv + seed.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "subqfi/fidelity.hpp"
#include "subqfi/fisher.hpp"
#include "subqfi/io.hpp"
#include "subqfi/optimal.hpp"
#include "subqfi/optimize.hpp"
#include "subqfi/sampling.hpp"
#include "subqfi/verify.hpp"

namespace {

using nlohmann::json;
using namespace subqfi;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPropertyViolation = 2;
constexpr int kExitIo = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SUBQFI_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(Errc::bad_input, std::string("SUBQFI_SEED is not an integer: ") + env);
    }
  }
  return 1;
}

void emit(const std::string& output_path, const std::string& text) {
  if (output_path.empty() || output_path == "-") {
    std::cout << text;
    return;
  }
  write_text_file(output_path, text);
}

RealVector parse_real_list(const std::string& csv) {
  std::vector<double> values;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(Errc::bad_input, "cannot parse list entry '" + item + "'");
    }
  }
  if (values.empty()) throw Error(Errc::bad_input, "empty list");
  RealVector out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) out(static_cast<Eigen::Index>(i)) = values[i];
  return out;
}

std::string csv_number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

struct CommonArgs {
  std::string state_path;
  std::string generator_path;
  std::string output;
  bool quiet = false;
};

void add_state_generator(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--state", args.state_path, "state JSON file")->required();
  cmd->add_option("--generator", args.generator_path, "generator JSON file")->required();
}

int run_compute(const CommonArgs& args, const std::string& method, double delta, bool richardson) {
  const DensityMatrix rho = read_density(args.state_path);
  const HermitianGenerator gen = read_generator(args.generator_path);

  double value = 0.0;
  if (method == "closed") value = subqfi_closed(rho, gen);
  else if (method == "spectral") value = subqfi_spectral(rho, gen);
  else if (method == "nsld") value = subqfi_nsld(rho, gen).value;
  else if (method == "fd") value = subqfi_fd(rho, gen, delta, richardson);
  else if (method == "hs") value = hs_curvature(rho, gen, delta);
  else throw Error(Errc::bad_input, "unknown method '" + method + "'");

  FisherReport report = bound_report(rho, gen);
  report.sub_qfi = value;
  report.method_values.clear();
  report.method_values[method] = value;

  json out{{"command", "compute"},
           {"params", json{{"method", method},
                           {"delta", delta},
                           {"richardson", richardson},
                           {"state", args.state_path},
                           {"generator", args.generator_path}}},
           {"value", value},
           {"report", to_json(report)}};
  emit(args.output, out.dump(2) + "\n");
  return kExitOk;
}

int run_bounds(const CommonArgs& args, double delta) {
  const DensityMatrix rho = read_density(args.state_path);
  const HermitianGenerator gen = read_generator(args.generator_path);
  const FisherReport report = bound_report(rho, gen, true, delta);
  json out{{"command", "bounds"},
           {"params", json{{"delta", delta},
                           {"state", args.state_path},
                           {"generator", args.generator_path}}},
           {"report", to_json(report)}};
  emit(args.output, out.dump(2) + "\n");
  return kExitOk;
}

int run_optimal(const std::string& spectrum_csv, const std::string& generator_path, double chi,
                const std::string& output) {
  const HermitianGenerator gen = read_generator(generator_path);
  const RealVector spectrum = parse_real_list(spectrum_csv);
  const OptimalStateResult result = optimal_state(spectrum, gen, chi);
  json out{{"command", "optimal"},
           {"params", json{{"spectrum", spectrum_csv}, {"chi", chi}, {"generator", generator_path}}},
           {"max_subqfi", result.max_subqfi},
           {"rho_star", matrix_to_json(result.rho_star.matrix())}};
  emit(output, out.dump(2) + "\n");
  return kExitOk;
}

int run_optimize(const CommonArgs& args, int restarts, int max_iters, double grad_tol,
                 std::uint64_t seed, const std::string& trace_path, const std::string& format) {
  const DensityMatrix rho = read_density(args.state_path);
  const HermitianGenerator gen = read_generator(args.generator_path);
  MaximizeConfig config;
  config.restarts = restarts;
  config.max_iters = max_iters;
  config.grad_tol = grad_tol;
  const OptimizationTrace trace = maximize_subqfi(rho, gen, config, Rng(seed));
  if (!args.quiet)
    std::cerr << "optimize: best value " << trace.best_value << " from restart "
              << trace.best_restart << (trace.converged ? " (converged)" : " (not converged)")
              << "\n";

  if (!trace_path.empty()) write_text_file(trace_path, trace_to_csv(trace));
  if (format == "csv") {
    emit(args.output, trace_to_csv(trace));
    return kExitOk;
  }
  json out{{"command", "optimize"},
           {"params", json{{"restarts", restarts},
                           {"max_iters", max_iters},
                           {"grad_tol", grad_tol},
                           {"seed", seed},
                           {"state", args.state_path},
                           {"generator", args.generator_path}}},
           {"summary", to_json(trace)}};
  emit(args.output, out.dump(2) + "\n");
  return kExitOk;
}

int run_estimate(const CommonArgs& args, double theta, const std::string& delta_csv,
                 const std::string& shots_csv, std::uint64_t seed, const std::string& format) {
  const DensityMatrix rho = read_density(args.state_path);
  const HermitianGenerator gen = read_generator(args.generator_path);

  const RealVector delta_list = parse_real_list(delta_csv);
  std::vector<double> deltas(delta_list.data(), delta_list.data() + delta_list.size());
  std::vector<std::int64_t> shot_counts;
  {
    std::stringstream stream(shots_csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
      try {
        shot_counts.push_back(static_cast<std::int64_t>(std::stoll(item)));
      } catch (const std::exception&) {
        throw Error(Errc::bad_input, "cannot parse shot count '" + item + "'");
      }
    }
  }
  if (deltas.empty() || shot_counts.empty())
    throw Error(Errc::bad_input, "need at least one delta and one shot count");

  const bool sweep = format == "csv" || deltas.size() > 1 || shot_counts.size() > 1;
  if (!sweep) {
    Rng rng(seed);
    const EstimateWithError estimate =
        estimate_subqfi(rho, gen, theta, deltas[0], shot_counts[0], rng);
    json out{{"command", "estimate"},
             {"params", json{{"theta", theta},
                             {"delta", deltas[0]},
                             {"shots", shot_counts[0]},
                             {"seed", seed},
                             {"state", args.state_path},
                             {"generator", args.generator_path}}},
             {"estimate", to_json(estimate)},
             {"exact_value", subqfi_closed(rho, gen)}};
    emit(args.output, out.dump(2) + "\n");
    return kExitOk;
  }

  const double exact = subqfi_closed(rho, gen);
  std::ostringstream csv;
  csv << "delta,shots,estimate,std_error,bias_note,exact_value,seed\n";
  std::uint64_t row = 0;
  for (double delta : deltas)
    for (std::int64_t shots : shot_counts) {
      const std::uint64_t row_seed = seed + row;
      Rng rng(row_seed);
      const EstimateWithError estimate = estimate_subqfi(rho, gen, theta, delta, shots, rng);
      csv << csv_number(delta) << ',' << shots << ',' << csv_number(estimate.value) << ','
          << csv_number(estimate.std_error) << ',' << csv_number(estimate.bias_note.value_or(0.0))
          << ',' << csv_number(exact) << ',' << row_seed << '\n';
      ++row;
    }
  emit(args.output, csv.str());
  return kExitOk;
}

int run_purity_loss(const CommonArgs& args, double delta_x, int nodes) {
  const DensityMatrix rho = read_density(args.state_path);
  const HermitianGenerator gen = read_generator(args.generator_path);
  const PurityLossResult result = purity_loss(rho, gen, delta_x, nodes);
  json out{{"command", "purity-loss"},
           {"params", json{{"delta_x", delta_x},
                           {"nodes", nodes},
                           {"state", args.state_path},
                           {"generator", args.generator_path}}},
           {"result", to_json(result)}};
  emit(args.output, out.dump(2) + "\n");
  return kExitOk;
}

int run_verify(int dim, int trials, std::uint64_t seed, const std::string& output, bool quiet) {
  const auto results = verify::run_property_suite(dim, trials, seed);
  std::ostringstream text;
  int failures = 0;
  for (const auto& r : results) {
    text << (r.passed ? "PASS" : "FAIL") << ' ' << r.name << ": " << r.detail << '\n';
    if (!r.passed) ++failures;
  }
  text << (failures == 0 ? "OK" : "FAILED") << " (" << results.size() - failures << "/"
       << results.size() << " properties, dim=" << dim << ", trials=" << trials
       << ", seed=" << seed << ")\n";
  emit(output, text.str());
  if (!quiet && failures > 0) std::cerr << "verify: " << failures << " properties violated\n";
  return failures == 0 ? kExitOk : kExitPropertyViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sub-quantum-Fisher-information toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // --quiet may appear after the subcommand

  CommonArgs compute_args, bounds_args, optimize_args, estimate_args, purity_args;
  std::string method = "closed";
  double compute_delta = 1e-3;
  bool no_richardson = false;

  CLI::App* compute = app.add_subcommand("compute", "single sub-QFI value by a chosen method");
  add_state_generator(compute, compute_args);
  compute->add_option("--method", method, "closed|spectral|nsld|fd|hs")->default_val("closed");
  compute->add_option("--delta", compute_delta, "finite-difference shift")->default_val(1e-3);
  compute->add_flag("--no-richardson", no_richardson, "disable Richardson extrapolation for fd");
  compute->add_option("--output", compute_args.output, "output path (default stdout)");

  double bounds_delta = 1e-3;
  CLI::App* bounds = app.add_subcommand("bounds", "QFI / skew information / sub-QFI bound chain");
  add_state_generator(bounds, bounds_args);
  bounds->add_option("--delta", bounds_delta, "shift for the fd/hs routes")->default_val(1e-3);
  bounds->add_option("--output", bounds_args.output, "output path (default stdout)");

  std::string spectrum_csv;
  std::string optimal_generator;
  std::string optimal_output;
  double chi = 0.0;
  CLI::App* optimal = app.add_subcommand("optimal", "closed-form optimal probe state");
  optimal->add_option("--spectrum", spectrum_csv, "descending probabilities, comma separated")
      ->required();
  optimal->add_option("--generator", optimal_generator, "generator JSON file")->required();
  optimal->add_option("--chi", chi, "free phase")->default_val(0.0);
  optimal->add_option("--output", optimal_output, "output path (default stdout)");

  int restarts = 8;
  int max_iters = 2000;
  double grad_tol = 1e-6;
  std::uint64_t optimize_seed = 0;
  std::string trace_path;
  std::string optimize_format = "json";
  CLI::App* optimize = app.add_subcommand("optimize", "variational sub-QFI maximization");
  add_state_generator(optimize, optimize_args);
  optimize->add_option("--restarts", restarts)->default_val(8);
  optimize->add_option("--max-iters", max_iters)->default_val(2000);
  optimize->add_option("--tol", grad_tol, "gradient norm tolerance")->default_val(1e-6);
  auto* optimize_seed_opt = optimize->add_option("--seed", optimize_seed);
  optimize->add_option("--trace", trace_path, "write per-iteration CSV to this path");
  optimize->add_option("--format", optimize_format, "json|csv (csv prints the trace)")
      ->default_val("json");
  optimize->add_option("--output", optimize_args.output, "output path (default stdout)");

  double theta = 0.0;
  std::string delta_csv = "0.05";
  std::string shots_csv = "1000000";
  std::uint64_t estimate_seed = 0;
  std::string estimate_format = "json";
  CLI::App* estimate = app.add_subcommand("estimate", "shot-based sub-QFI estimate");
  add_state_generator(estimate, estimate_args);
  estimate->add_option("--theta", theta)->default_val(0.0);
  estimate->add_option("--delta", delta_csv, "shift(s), comma separated")->default_val("0.05");
  estimate->add_option("--shots", shots_csv, "shots per term, comma separated")
      ->default_val("1000000");
  auto* estimate_seed_opt = estimate->add_option("--seed", estimate_seed);
  estimate->add_option("--format", estimate_format, "json|csv (csv sweeps all combinations)")
      ->default_val("json");
  estimate->add_option("--output", estimate_args.output, "output path (default stdout)");

  double delta_x = 0.01;
  int nodes = 41;
  CLI::App* purity_cmd = app.add_subcommand("purity-loss", "purity loss under Gaussian phase noise");
  add_state_generator(purity_cmd, purity_args);
  purity_cmd->add_option("--delta-x", delta_x, "std dev of the phase fluctuation")->default_val(0.01);
  purity_cmd->add_option("--nodes", nodes, "Gauss-Hermite nodes")->default_val(41);
  purity_cmd->add_option("--output", purity_args.output, "output path (default stdout)");

  int verify_dim = 4;
  int verify_trials = 1000;
  std::uint64_t verify_seed = 0;
  std::string verify_output;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the property suite");
  verify_cmd->add_option("--dim", verify_dim)->default_val(4);
  verify_cmd->add_option("--trials", verify_trials)->default_val(1000);
  auto* verify_seed_opt = verify_cmd->add_option("--seed", verify_seed);
  verify_cmd->add_option("--output", verify_output, "output path (default stdout)");

  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress progress logging on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (compute->parsed()) {
      compute_args.quiet = quiet;
      return run_compute(compute_args, method, compute_delta, !no_richardson);
    }
    if (bounds->parsed()) {
      bounds_args.quiet = quiet;
      return run_bounds(bounds_args, bounds_delta);
    }
    if (optimal->parsed()) return run_optimal(spectrum_csv, optimal_generator, chi, optimal_output);
    if (optimize->parsed()) {
      optimize_args.quiet = quiet;
      if (optimize_seed_opt->count() == 0) optimize_seed = default_seed();
      return run_optimize(optimize_args, restarts, max_iters, grad_tol, optimize_seed, trace_path,
                          optimize_format);
    }
    if (estimate->parsed()) {
      estimate_args.quiet = quiet;
      if (estimate_seed_opt->count() == 0) estimate_seed = default_seed();
      return run_estimate(estimate_args, theta, delta_csv, shots_csv, estimate_seed,
                          estimate_format);
    }
    if (purity_cmd->parsed()) {
      purity_args.quiet = quiet;
      return run_purity_loss(purity_args, delta_x, nodes);
    }
    if (verify_cmd->parsed()) {
      if (verify_seed_opt->count() == 0) verify_seed = default_seed();
      return run_verify(verify_dim, verify_trials, verify_seed, verify_output, quiet);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::io_failure ? kExitIo : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
