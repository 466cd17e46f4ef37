// Command-line front end: mean computation, stochastic walk traces, the
// randomized property suites, and trace-metric distance queries over
// SPDLIST files.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <spdmean/spdmean.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitPropertyFailure = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw spdmean::InvalidInput("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Human-facing matrix rows at 12 significant digits.
void print_matrix_rows(const spdmean::Matrix& a) {
  char buf[48];
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), c ? " %.12g" : "%.12g", a(r, c));
      std::cout << buf;
    }
    std::cout << "\n";
  }
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(item, &pos);
      if (pos != item.size() || v < 1) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw spdmean::InvalidParameter(std::string(what) + ": expected a comma-separated list " +
                                      "of positive integers, got '" + text + "'");
    }
  }
  if (values.empty())
    throw spdmean::InvalidParameter(std::string(what) + ": empty list");
  return values;
}

struct MeanOptions {
  std::string file;
  std::string method = "karcher";
  double tol = 1e-10;
  int max_iter = 200;
  std::uint64_t seed = 0;
};

int run_mean(const MeanOptions& opt) {
  const auto file = spdmean::parse_matrix_list(read_file(opt.file));
  const spdmean::Weight w = file.effective_weights();

  spdmean::Matrix mean;
  bool converged = true;
  std::cout << "SPDLIST 1 " << file.m << "\n";
  if (opt.method == "karcher") {
    spdmean::SolverConfig cfg;
    cfg.tolerance = opt.tol;
    cfg.max_iterations = opt.max_iter;
    const auto result = spdmean::solve_fixed_point(w, file.matrices, cfg);
    mean = result.mean;
    converged = result.converged;
    char diag[128];
    std::snprintf(diag, sizeof(diag), "# method=karcher converged=%s iterations=%d residual=%.12g",
                  result.converged ? "true" : "false", result.iterations, result.residual_norm);
    std::cout << diag << "\n";
  } else if (opt.method == "inductive") {
    mean = spdmean::inductive_mean(spdmean::SpdSpace{}, file.matrices);
  } else if (opt.method == "arithmetic") {
    mean = spdmean::arithmetic_mean(w, file.matrices);
  } else {
    mean = spdmean::harmonic_mean(w, file.matrices);
  }
  print_matrix_rows(mean);
  return converged ? kExitOk : kExitNoConvergence;
}

struct WalkOptions {
  std::string file;
  long steps = 10000;
  std::uint64_t seed = 0;
  long stride = 100;
  std::string reference = "auto";
};

int run_walk(const WalkOptions& opt) {
  const auto file = spdmean::parse_matrix_list(read_file(opt.file));
  const spdmean::Weight w = file.effective_weights();
  const spdmean::SpdSpace space;

  spdmean::Matrix reference;
  const bool with_reference = opt.reference == "auto";
  if (with_reference) reference = spdmean::solve_fixed_point(w, file.matrices).mean;

  spdmean::WalkConfig cfg;
  cfg.seed = opt.seed;
  cfg.steps = opt.steps;
  cfg.record_every = opt.stride;
  const auto trace = spdmean::sturm_walk(space, w, file.matrices, cfg,
                                         with_reference ? &reference : nullptr);

  std::cout << "k,index_sampled,distance_to_reference\n";
  char buf[32];
  for (std::size_t i = 0; i < trace.recorded_ks.size(); ++i) {
    const long k = trace.recorded_ks[i];
    std::cout << k << "," << trace.sampled_indices[static_cast<std::size_t>(k - 1)] + 1 << ",";
    if (with_reference) {
      std::snprintf(buf, sizeof(buf), "%.12g", trace.distances_to_reference[i]);
      std::cout << buf;
    }
    std::cout << "\n";
  }
  return kExitOk;
}

struct VerifyOptions {
  std::string suite = "all";
  int trials = 200;
  std::uint64_t seed = 42;
  std::string dims = "2,3";
  std::string n_range = "3,4,5";
};

int run_verify(const VerifyOptions& opt) {
  const auto dims = parse_int_list(opt.dims, "--dims");
  const auto n_range = parse_int_list(opt.n_range, "--n");

  std::vector<spdmean::TrialReport> reports;
  const bool all = opt.suite == "all";
  if (all || opt.suite == "axioms") {
    auto axioms = spdmean::check_axioms(opt.trials, dims, n_range, opt.seed);
    reports.insert(reports.end(), axioms.begin(), axioms.end());
  }
  if (all || opt.suite == "monotone")
    reports.push_back(spdmean::check_monotonicity(opt.trials, dims, n_range, opt.seed));
  if (all || opt.suite == "concave")
    reports.push_back(spdmean::check_concavity(opt.trials, dims, n_range, opt.seed));
  if (all || opt.suite == "agh")
    reports.push_back(spdmean::check_agh(opt.trials, dims, n_range, opt.seed));
  if (all || opt.suite == "nonexpansive")
    reports.push_back(spdmean::check_nonexpansive(opt.trials, dims, n_range, opt.seed));
  if (opt.suite == "walk") {
    // Seeded random instances; --trials is the number of repeated walks each.
    const spdmean::SpdSpace space;
    std::vector<spdmean::WalkInstance<spdmean::SpdSpace>> instances;
    for (int i = 0; i < 2; ++i) {
      spdmean::SplitMix64 rng = spdmean::stream(opt.seed, 1000000u + static_cast<unsigned>(i));
      spdmean::WalkInstance<spdmean::SpdSpace> inst{
          spdmean::detail::random_weight(3, rng), {}, spdmean::Matrix()};
      for (int j = 0; j < 3; ++j) inst.points.push_back(spdmean::random_spd(2, 16.0, rng));
      inst.reference = spdmean::solve_fixed_point(inst.w, inst.points).mean;
      instances.push_back(std::move(inst));
    }
    reports.push_back(
        spdmean::check_walk_convergence(space, instances, 10000, opt.trials, opt.seed));
  }

  bool all_pass = true;
  for (const auto& r : reports) {
    std::cout << r.to_line() << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitOk : kExitPropertyFailure;
}

int run_distance(const std::string& path_a, const std::string& path_b) {
  const auto file_a = spdmean::parse_matrix_list(read_file(path_a));
  const auto file_b = spdmean::parse_matrix_list(read_file(path_b));
  if (file_a.n != 1 || file_b.n != 1)
    throw spdmean::InvalidInput("distance: each file must contain exactly one matrix");
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g",
                spdmean::spd_distance(file_a.matrices[0], file_b.matrices[0]));
  std::cout << buf << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted least-squares means of positive definite matrices"};
  app.require_subcommand(1);

  MeanOptions mean_opt;
  auto* mean = app.add_subcommand("mean", "Compute a mean of the matrices in a SPDLIST file");
  mean->add_option("file", mean_opt.file, "input SPDLIST file")->required();
  mean->add_option("--method", mean_opt.method, "mean to compute")
      ->check(CLI::IsMember({"karcher", "inductive", "arithmetic", "harmonic"}))
      ->capture_default_str();
  mean->add_option("--tol", mean_opt.tol, "residual norm tolerance (karcher)")
      ->capture_default_str();
  mean->add_option("--max-iter", mean_opt.max_iter, "iteration cap (karcher)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mean->add_option("--seed", mean_opt.seed,
                   "random seed (reserved; the available methods are deterministic)");

  WalkOptions walk_opt;
  auto* walk = app.add_subcommand("walk", "Trace a stochastic inductive-mean walk as CSV");
  walk->add_option("file", walk_opt.file, "input SPDLIST file")->required();
  walk->add_option("--steps", walk_opt.steps, "number of walk steps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  walk->add_option("--seed", walk_opt.seed, "PRNG seed")->capture_default_str();
  walk->add_option("--stride", walk_opt.stride, "record every this many steps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  walk->add_option("--reference", walk_opt.reference,
                   "distance reference: auto = deterministic mean, none = blank column")
      ->check(CLI::IsMember({"auto", "none"}))
      ->capture_default_str();

  VerifyOptions verify_opt;
  auto* verify = app.add_subcommand("verify", "Run randomized property suites");
  verify->add_option("--suite", verify_opt.suite, "which property suite to run")
      ->check(CLI::IsMember({"axioms", "monotone", "concave", "agh", "nonexpansive", "walk",
                             "all"}))
      ->capture_default_str();
  verify->add_option("--trials", verify_opt.trials, "trials per property")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--seed", verify_opt.seed, "suite seed")->capture_default_str();
  verify->add_option("--dims", verify_opt.dims, "matrix dimensions, comma separated")
      ->capture_default_str();
  verify->add_option("--n", verify_opt.n_range, "tuple sizes, comma separated")
      ->capture_default_str();

  std::string dist_a, dist_b;
  auto* distance = app.add_subcommand("distance", "Trace-metric distance between two matrices");
  distance->add_option("fileA", dist_a, "first SPDLIST file (one matrix)")->required();
  distance->add_option("fileB", dist_b, "second SPDLIST file (one matrix)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (mean->parsed()) return run_mean(mean_opt);
    if (walk->parsed()) return run_walk(walk_opt);
    if (verify->parsed()) return run_verify(verify_opt);
    return run_distance(dist_a, dist_b);
  } catch (const spdmean::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
