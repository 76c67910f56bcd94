// qlasso command-line front end: path solving, certification, estimator
// probes, random-design experiments, and noisy-regime rate checks.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qlasso/ensemble.hpp"
#include "qlasso/estimators.hpp"
#include "qlasso/io.hpp"
#include "qlasso/lars.hpp"
#include "qlasso/minfind.hpp"
#include "qlasso/verify.hpp"

namespace {

using nlohmann::json;

int log_level() {
  const char* env = std::getenv("LARS_PATH_LOG");
  if (!env) return 0;
  const std::string v(env);
  if (v == "debug") return 2;
  if (v == "info") return 1;
  return 0;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[qlasso] " << msg << "\n";
}

void attach_meta(json& j, bool no_meta) {
  if (no_meta) return;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  j["meta"] = {
      {"generated_unix_ms",
       std::chrono::duration_cast<std::chrono::milliseconds>(now).count()}};
}

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    qlasso::write_file(out, text);
  }
}

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitStall = 3;

struct CommonOpts {
  std::string algo = "exact";
  double epsilon = 0.05;
  double delta = 0.01;
  int max_kinks = 1000;
  std::uint64_t seed = 0;
  std::string noise_mode = "stochastic";
  int threads = 1;
  bool no_meta = false;
  std::string out;
};

int run_solve_path(const std::string& input, const CommonOpts& opts,
                   const std::string& ledger_out) {
  const qlasso::LassoProblem problem = qlasso::load_problem(input);
  log_info("loaded problem n=" + std::to_string(problem.n()) +
           " d=" + std::to_string(problem.d()));

  qlasso::QueryLedger ledger;
  qlasso::RegularisationPath path;
  try {
    if (opts.algo == "exact") {
      path = qlasso::lars_exact(problem, opts.max_kinks);
    } else if (opts.algo == "quantum-simple") {
      qlasso::Rng rng(opts.seed);
      path = qlasso::lars_quantum_simple(problem, opts.max_kinks, opts.delta,
                                         ledger, rng);
    } else if (opts.algo == "approx-quantum" || opts.algo == "approx-classical") {
      qlasso::ApproxConfig cfg;
      cfg.epsilon = opts.epsilon;
      cfg.delta = opts.delta;
      cfg.T = opts.max_kinks;
      cfg.seed = opts.seed;
      cfg.mode = opts.algo == "approx-quantum"
                     ? qlasso::ApproxMode::QuantumSim
                     : qlasso::ApproxMode::ClassicalSampling;
      cfg.noise = qlasso::noise_mode_from_string(opts.noise_mode);
      path = qlasso::lars_approx(problem, cfg, ledger);
    } else {
      std::cerr << "unknown algorithm: " << opts.algo << "\n";
      return kExitInput;
    }
  } catch (const qlasso::StationaryStall& e) {
    std::cerr << "stall: " << e.what() << "\n";
    return kExitStall;
  } catch (const qlasso::RankDeficient& e) {
    std::cerr << "degenerate problem: " << e.what() << "\n";
    return kExitDegenerate;
  }

  json jpath = qlasso::path_to_json(path);
  attach_meta(jpath, opts.no_meta);
  emit(jpath, opts.out);
  json jledger = ledger.report();
  attach_meta(jledger, opts.no_meta);
  if (!ledger_out.empty()) {
    emit(jledger, ledger_out);
  } else if (!opts.out.empty() && opts.out != "-") {
    emit(jledger, opts.out + ".ledger.json");
  }
  return kExitOk;
}

int run_verify(const std::string& path_file, const std::string& problem_file,
               double epsilon, int grid, bool no_meta, const std::string& out) {
  const qlasso::LassoProblem problem = qlasso::load_problem(problem_file);
  json jp;
  try {
    jp = json::parse(qlasso::read_file(path_file));
  } catch (const json::exception& e) {
    throw qlasso::ParseError(path_file + ": " + e.what());
  }
  const qlasso::RegularisationPath path = qlasso::path_from_json(jp);
  const qlasso::PathCertificate cert =
      qlasso::certify_path(path, problem, epsilon, grid);
  json jc = cert.to_json();
  attach_meta(jc, no_meta);
  emit(jc, out);
  return cert.pass ? kExitOk : kExitDegenerate;
}

int run_estimate(const std::string& input, const std::string& kind, int column,
                 const CommonOpts& opts) {
  const qlasso::LassoProblem problem = qlasso::load_problem(input);
  if (column < 0 || column >= problem.d()) {
    std::cerr << "column out of range\n";
    return kExitInput;
  }
  qlasso::QueryLedger ledger;
  qlasso::Rng rng(opts.seed);
  qlasso::EstimateContract contract;
  contract.epsilon = opts.epsilon;
  contract.delta = opts.delta;
  contract.mode = qlasso::noise_mode_from_string(opts.noise_mode);

  const Eigen::VectorXd a_col = problem.X().col(column);
  const double exact = a_col.dot(problem.y());
  double estimate = 0.0;
  if (kind == "inner-classical") {
    qlasso::SamplableVector sv(a_col);
    estimate = qlasso::inner_product_classical(sv, problem.y(), contract, rng, ledger);
  } else if (kind == "inner-quantum") {
    qlasso::SamplableVector sv(problem.y());
    estimate = qlasso::inner_product_quantum_sim(a_col, sv, contract, rng, ledger);
  } else if (kind == "min-exact") {
    auto [idx, value] = qlasso::min_exact_sim(
        [&](std::uint64_t k) {
          return -std::abs(problem.X().col(static_cast<Eigen::Index>(k)).dot(problem.y()));
        },
        static_cast<std::uint64_t>(problem.d()), opts.delta, ledger, rng);
    estimate = -value;
    column = static_cast<int>(idx);
  } else {
    std::cerr << "unknown estimator kind: " << kind << "\n";
    return kExitInput;
  }
  json j = {{"kind", kind},
            {"column", column},
            {"estimate", estimate},
            {"exact", exact},
            {"abs_error", std::abs(estimate - exact)},
            {"ledger", ledger.report()}};
  attach_meta(j, opts.no_meta);
  emit(j, opts.out);
  return kExitOk;
}

int run_ensemble(const std::string& experiment, Eigen::Index n, Eigen::Index d,
                 int A_size, int trials, double delta, const CommonOpts& opts,
                 const std::string& csv_out) {
  if (trials < 1) {
    std::cerr << "trials must be positive\n";
    return kExitInput;
  }
  qlasso::GaussianSpec spec;
  spec.n = n;
  spec.d = d;
  spec.seed = opts.seed;

  qlasso::FrequencyResult result;
  if (experiment == "conditioning") {
    result = qlasso::conditioning_experiment(spec, A_size, trials, delta);
  } else if (experiment == "incoherence") {
    const int budget = qlasso::incoherence_budget(spec, 0.0, delta);
    if (A_size < 0) A_size = budget;
    result = qlasso::incoherence_experiment(spec, A_size, trials, delta);
  } else if (experiment == "overlap") {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    y[0] = 1.0;  // sparse observation vector maximizes the bound
    result = qlasso::overlap_experiment(spec, y, A_size, trials, delta);
  } else {
    std::cerr << "unknown experiment: " << experiment << "\n";
    return kExitInput;
  }

  json j = {{"experiment", experiment},
            {"n", n},
            {"d", d},
            {"A_size", A_size},
            {"trials", result.trials},
            {"successes", result.successes},
            {"frequency", result.frequency},
            {"bound", result.bound},
            {"delta", delta},
            {"seed", opts.seed}};
  attach_meta(j, opts.no_meta);
  emit(j, opts.out);
  if (!csv_out.empty()) {
    std::string csv = "trial,value\n";
    for (std::size_t t = 0; t < result.values.size(); ++t) {
      csv += std::to_string(t) + "," + std::to_string(result.values[t]) + "\n";
    }
    qlasso::write_file(csv_out, csv);
  }
  return kExitOk;
}

int run_rates(const std::string& rate, Eigen::Index n, Eigen::Index d,
              int sparsity, double sigma, int trials, double delta,
              const CommonOpts& opts) {
  if (trials < 1) {
    std::cerr << "trials must be positive\n";
    return kExitInput;
  }
  const double eps = opts.epsilon;
  qlasso::Rng master(opts.seed);
  int passed = 0, applicable = 0;
  json trial_records = json::array();
  for (int t = 0; t < trials; ++t) {
    qlasso::Rng trial_rng = master.split(static_cast<std::uint64_t>(t));
    qlasso::GaussianSpec gspec;
    gspec.n = n;
    gspec.d = d;
    gspec.seed = trial_rng.next_u64();
    const qlasso::Matrix X = qlasso::gaussian_design(gspec);

    qlasso::Vector beta_star = qlasso::Vector::Zero(d);
    for (int s = 0; s < sparsity && s < d; ++s) {
      beta_star[s] = trial_rng.bernoulli(0.5) ? 1.0 : -1.0;
    }
    qlasso::NoisyModelSpec nspec;
    nspec.beta_star = beta_star;
    nspec.noise_sigma = sigma;
    nspec.seed = trial_rng.next_u64();
    const qlasso::Vector y = qlasso::noisy_model(X, nspec);
    qlasso::LassoProblem problem(X, y);
    const qlasso::Vector w = y - X * beta_star;
    const double noise_level = (X.transpose() * w).lpNorm<Eigen::Infinity>();

    try {
      qlasso::RateCheck check;
      double lambda;
      if (rate == "slow") {
        // Column norms are ~sqrt(n) for the standard ensemble (C = 1).
        lambda = std::sqrt(2.0 * sigma * sigma * static_cast<double>(n) *
                           std::log(2.0 * static_cast<double>(d) / delta)) /
                 (1.0 - eps);
        lambda = std::max(lambda, noise_level / (1.0 - eps));
        const qlasso::Vector beta =
            qlasso::lasso_oracle(problem, lambda,
                                 std::max(lambda * eps * 1e-3, 1e-10));
        check = qlasso::slow_rate_check(problem, beta_star, beta, lambda, eps);
      } else if (rate == "fast") {
        lambda = 4.0 * noise_level;
        const qlasso::Vector beta =
            qlasso::lasso_oracle(problem, lambda,
                                 std::max(lambda * eps * 1e-3, 1e-10));
        check = qlasso::fast_rate_check(problem, beta_star, beta, lambda, eps);
      } else {
        std::cerr << "unknown rate: " << rate << "\n";
        return kExitInput;
      }
      ++applicable;
      if (check.pass) ++passed;
      trial_records.push_back({{"trial", t},
                               {"lambda", lambda},
                               {"lhs", check.lhs},
                               {"rhs", check.rhs},
                               {"pass", check.pass}});
    } catch (const qlasso::NotApplicable& e) {
      trial_records.push_back({{"trial", t}, {"applicable", false}, {"reason", e.what()}});
    }
  }
  json j = {{"rate", rate},       {"n", n},
            {"d", d},             {"sparsity", sparsity},
            {"sigma", sigma},     {"epsilon", eps},
            {"delta", delta},     {"trials", trials},
            {"applicable", applicable},
            {"passed", passed},   {"trial_results", std::move(trial_records)}};
  attach_meta(j, opts.no_meta);
  emit(j, opts.out);
  return passed == applicable && applicable > 0 ? kExitOk : kExitDegenerate;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pathwise Lasso solver and experiment harness"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string input, path_file, ledger_out, kind = "inner-classical";
  std::string experiment = "conditioning", rate = "slow", csv_out;
  int grid = 50, column = 0, A_size = -1, trials = 200, sparsity = 5;
  long long n = 100, d = 200;
  double sigma = 0.5;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--epsilon", opts.epsilon, "approximation parameter");
    cmd->add_option("--delta", opts.delta, "failure probability budget");
    cmd->add_option("--seed", opts.seed, "RNG seed");
    cmd->add_option("--noise-mode", opts.noise_mode,
                    "stochastic | adversarial | exact");
    cmd->add_option("--threads", opts.threads, "worker threads (default 1)");
    cmd->add_flag("--no-meta", opts.no_meta, "omit timestamps for byte-stable output");
    cmd->add_option("--out", opts.out, "output file ('-' or empty = stdout)");
  };

  CLI::App* solve = app.add_subcommand("solve-path", "compute a regularisation path");
  solve->add_option("input", input, "problem file (CSV or JSON)")->required();
  solve->add_option("--algo", opts.algo,
                    "exact | quantum-simple | approx-quantum | approx-classical");
  solve->add_option("--max-kinks", opts.max_kinks, "kink budget T");
  solve->add_option("--ledger-out", ledger_out, "ledger output file");
  add_common(solve);

  CLI::App* verify = app.add_subcommand("verify", "certify a stored path");
  verify->add_option("path", path_file, "path JSON file")->required();
  verify->add_option("problem", input, "problem file")->required();
  verify->add_option("--grid", grid, "grid points per segment");
  add_common(verify);

  CLI::App* estimate = app.add_subcommand("estimate", "run one estimator directly");
  estimate->add_option("input", input, "problem file")->required();
  estimate->add_option("--kind", kind, "inner-classical | inner-quantum | min-exact");
  estimate->add_option("--column", column, "feature column to estimate against");
  add_common(estimate);

  CLI::App* ensemble = app.add_subcommand("ensemble", "random-design experiments");
  ensemble->add_option("--experiment", experiment, "conditioning | incoherence | overlap");
  ensemble->add_option("--n", n, "observations");
  ensemble->add_option("--d", d, "features");
  ensemble->add_option("--A-size", A_size, "active set size (-1 = experiment default)");
  ensemble->add_option("--trials", trials, "Monte Carlo trials");
  ensemble->add_option("--csv", csv_out, "per-trial CSV dump");
  add_common(ensemble);

  CLI::App* rates = app.add_subcommand("rates", "noisy-regime rate experiments");
  rates->add_option("--rate", rate, "slow | fast");
  rates->add_option("--n", n, "observations");
  rates->add_option("--d", d, "features");
  rates->add_option("--sparsity", sparsity, "true support size");
  rates->add_option("--sigma", sigma, "noise scale");
  rates->add_option("--trials", trials, "Monte Carlo trials");
  add_common(rates);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve_path(input, opts, ledger_out);
    if (verify->parsed())
      return run_verify(path_file, input, opts.epsilon, grid, opts.no_meta, opts.out);
    if (estimate->parsed()) return run_estimate(input, kind, column, opts);
    if (ensemble->parsed())
      return run_ensemble(experiment, static_cast<Eigen::Index>(n),
                          static_cast<Eigen::Index>(d), A_size, trials,
                          opts.delta, opts, csv_out);
    if (rates->parsed())
      return run_rates(rate, static_cast<Eigen::Index>(n),
                       static_cast<Eigen::Index>(d), sparsity, sigma, trials,
                       opts.delta, opts);
  } catch (const qlasso::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const qlasso::StationaryStall& e) {
    std::cerr << "stall: " << e.what() << "\n";
    return kExitStall;
  } catch (const qlasso::RankDeficient& e) {
    std::cerr << "degenerate problem: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const qlasso::EmptyPath& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const qlasso::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
