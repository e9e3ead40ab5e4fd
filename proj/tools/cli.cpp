#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "exittime/exit_time.hpp"
#include "exittime/harness.hpp"
#include "exittime/model_io.hpp"

namespace exittime::cli {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string model_path;
  std::string method;
  std::optional<double> epsilon;
  std::vector<double> epsilons;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t bins = 200;
  std::string out_dir;
  unsigned workers = 0;
  bool timing = false;
  std::string reference;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(std::uint64_t v) { return std::to_string(v); }

const std::string kNA = "NA";

std::ofstream open_csv(const fs::path& path) {
  std::ofstream f(path);
  if (!f) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  return f;
}

const std::string kSummaryHeader =
    "epsilon,l1,l2,rho,n_exited,n_censored,gamma_draws,exp_draws,wall_seconds";

std::string wall(const RunConfig& cfg, double seconds) {
  return cfg.timing ? num(seconds) : kNA;
}

void write_histogram(const fs::path& path, const EnsembleHistogram& h) {
  auto f = open_csv(path);
  f << "t_lo,t_hi,t_mid,density\n";
  for (std::size_t b = 0; b < h.grid.bins; ++b) {
    const double lo = h.grid.edge(b);
    const double hi = h.grid.edge(b + 1);
    f << num(lo) << ',' << num(hi) << ',' << num(0.5 * (lo + hi)) << ',' << num(h.densities[b])
      << '\n';
  }
}

EnsembleHistogram read_histogram(const fs::path& path) {
  std::ifstream f(path);
  if (!f) {
    throw std::runtime_error("cannot read reference '" + path.string() + "'");
  }
  std::string line;
  std::getline(f, line);
  if (line != "t_lo,t_hi,t_mid,density") {
    throw std::runtime_error("reference '" + path.string() + "' is not a histogram CSV");
  }
  EnsembleHistogram h;
  double first_lo = 0.0;
  double last_hi = 0.0;
  while (std::getline(f, line)) {
    if (line.empty()) {
      continue;
    }
    std::istringstream row(line);
    std::string field;
    std::vector<double> v;
    while (std::getline(row, field, ',')) {
      v.push_back(std::stod(field));
    }
    if (v.size() != 4) {
      throw std::runtime_error("malformed reference row: " + line);
    }
    if (h.densities.empty()) {
      first_lo = v[0];
    }
    last_hi = v[1];
    h.densities.push_back(v[3]);
  }
  if (h.densities.empty()) {
    throw std::runtime_error("reference histogram has no bins");
  }
  h.grid = BinGrid{first_lo, last_hi, h.densities.size()};
  return h;
}

void write_errors(const fs::path& path, const EnsembleHistogram& ssa,
                  const EnsembleHistogram& method, const ErrorNorms& err) {
  auto f = open_csv(path);
  f << "t_mid,density_ssa,density_method,abs_error\n";
  for (std::size_t b = 0; b < ssa.grid.bins; ++b) {
    const double mid = 0.5 * (ssa.grid.edge(b) + ssa.grid.edge(b + 1));
    f << num(mid) << ',' << num(ssa.densities[b]) << ',' << num(method.densities[b]) << ','
      << num(err.per_bin[b]) << '\n';
  }
}

ModelDefinition load(const RunConfig& cfg) { return load_model(cfg.model_path); }

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const bool exit_method = cfg.method == "exit";
  if (exit_method && !cfg.epsilon) {
    throw CLI::ValidationError("--epsilon", "required with --method exit");
  }
  if (!exit_method && cfg.epsilon) {
    throw CLI::ValidationError("--epsilon", "only valid with --method exit");
  }
  const ModelDefinition model = load(cfg);
  const Method method = exit_method ? Method::exit_time(*cfg.epsilon) : Method::ssa();
  const EnsembleSamples samples = run_ensemble(model.system, model.initial, model.exit, method,
                                               cfg.samples, cfg.seed, cfg.workers);
  if (samples.exit_times.empty()) {
    throw AllCensored("all " + std::to_string(cfg.samples) + " trajectories were censored");
  }
  const EnsembleSamples* one[] = {&samples};
  const EnsembleHistogram h = make_histogram(samples, pooled_grid(one, cfg.bins));

  fs::create_directories(cfg.out_dir);
  write_histogram(fs::path(cfg.out_dir) / "histogram.csv", h);
  auto f = open_csv(fs::path(cfg.out_dir) / "summary.csv");
  f << kSummaryHeader << ",method,seed\n";
  f << (exit_method ? num(*cfg.epsilon) : kNA) << ',' << kNA << ',' << kNA << ',' << kNA << ','
    << num(samples.n_exited()) << ',' << num(samples.n_censored()) << ','
    << num(samples.counters.gamma) << ',' << num(samples.counters.exponential) << ','
    << wall(cfg, samples.wall_seconds) << ',' << cfg.method << ',' << cfg.seed << '\n';

  out << "simulate: " << samples.n_exited() << " exited, " << samples.n_censored()
      << " censored -> " << cfg.out_dir << '\n';
  return kSuccess;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const ModelDefinition model = load(cfg);
  const double eps = *cfg.epsilon;
  fs::create_directories(cfg.out_dir);

  if (!cfg.reference.empty()) {
    const EnsembleHistogram ref = read_histogram(cfg.reference);
    if (ref.grid.bins != cfg.bins) {
      throw GridMismatch("--bins " + std::to_string(cfg.bins) + " does not match the " +
                         std::to_string(ref.grid.bins) + "-bin grid of the stored reference");
    }
    const EnsembleSamples method =
        run_ensemble(model.system, model.initial, model.exit, Method::exit_time(eps),
                     cfg.samples, cfg.seed + 1, cfg.workers);
    const EnsembleHistogram mh = make_histogram(method, ref.grid);
    const ErrorNorms err = pointwise_error(ref, mh);
    write_errors(fs::path(cfg.out_dir) / "errors.csv", ref, mh, err);
    auto f = open_csv(fs::path(cfg.out_dir) / "summary.csv");
    f << kSummaryHeader << ",n_outside,method_seed\n";
    f << num(eps) << ',' << num(err.l1) << ',' << num(err.l2) << ',' << kNA << ','
      << num(method.n_exited()) << ',' << num(method.n_censored()) << ','
      << num(method.counters.gamma) << ',' << kNA << ',' << wall(cfg, method.wall_seconds) << ','
      << mh.n_outside << ',' << cfg.seed + 1 << '\n';
    out << "compare: l1=" << num(err.l1) << " l2=" << num(err.l2) << " (stored reference)\n";
    return kSuccess;
  }

  const Comparison c = compare_methods(model.system, model.initial, model.exit, eps, cfg.samples,
                                       cfg.seed, cfg.bins, cfg.workers);
  write_errors(fs::path(cfg.out_dir) / "errors.csv", c.ssa_histogram, c.method_histogram, c.error);
  auto f = open_csv(fs::path(cfg.out_dir) / "summary.csv");
  f << kSummaryHeader
    << ",ssa_n_exited,ssa_n_censored,ks_statistic,ks_critical,ks_equivalent,ssa_seed,method_seed\n";
  f << num(eps) << ',' << num(c.error.l1) << ',' << num(c.error.l2) << ',' << num(c.rho) << ','
    << num(c.method.n_exited()) << ',' << num(c.method.n_censored()) << ','
    << num(c.method.counters.gamma) << ',' << num(c.ssa.counters.exponential) << ','
    << wall(cfg, c.method.wall_seconds) << ',' << num(c.ssa.n_exited()) << ','
    << num(c.ssa.n_censored()) << ',' << num(c.ks.statistic) << ',' << num(c.ks.critical) << ','
    << (c.ks.equivalent ? "true" : "false") << ',' << cfg.seed << ',' << cfg.seed + 1 << '\n';
  out << "compare: l1=" << num(c.error.l1) << " l2=" << num(c.error.l2) << " rho=" << num(c.rho)
      << " ks=" << num(c.ks.statistic) << (c.ks.equivalent ? " (equivalent)" : " (differs)")
      << '\n';
  return kSuccess;
}

int cmd_converge(const RunConfig& cfg, std::ostream& out) {
  const ModelDefinition model = load(cfg);
  const ConvergenceStudy study = convergence_study(model.system, model.initial, model.exit,
                                                   cfg.epsilons, cfg.samples, cfg.seed, cfg.bins,
                                                   cfg.workers);
  fs::create_directories(cfg.out_dir);
  auto f = open_csv(fs::path(cfg.out_dir) / "convergence.csv");
  f << kSummaryHeader << ",order\n";
  for (const auto& r : study.records) {
    f << num(r.epsilon) << ',' << num(r.l1) << ',' << num(r.l2) << ',' << num(r.rho) << ','
      << num(r.n_exited) << ',' << num(r.n_censored) << ',' << num(r.gamma_draws) << ','
      << num(r.exp_draws) << ',' << wall(cfg, r.wall_seconds) << ','
      << (r.order ? num(*r.order) : kNA) << '\n';
    out << "eps=" << num(r.epsilon) << " l1=" << num(r.l1) << " rho=" << num(r.rho) << '\n';
  }
  return kSuccess;
}

void add_common(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--model", cfg.model_path, "Model definition JSON")->required();
  sub.add_option("--samples", cfg.samples, "Trajectories per ensemble")
      ->required()
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
  sub.add_option("--seed", cfg.seed, "Master seed")->required();
  sub.add_option("--bins", cfg.bins, "Histogram bins")
      ->check(CLI::Range(std::size_t{10}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  sub.add_option("--out", cfg.out_dir, "Output directory")->required();
  sub.add_option("--workers", cfg.workers, "Worker threads (0 = all cores)")->capture_default_str();
  sub.add_flag("--timing", cfg.timing, "Record wall_seconds in summaries");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exit-time stochastic simulation: SSA vs grouped-Gamma exit times"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* simulate = app.add_subcommand("simulate", "Run one ensemble and write its histogram");
  add_common(*simulate, cfg);
  simulate->add_option("--method", cfg.method, "ssa or exit")
      ->required()
      ->check(CLI::IsMember({"ssa", "exit"}));
  simulate->add_option("--epsilon", cfg.epsilon, "Grouping tolerance for --method exit")
      ->check(CLI::NonNegativeNumber);

  auto* compare = app.add_subcommand("compare", "Paired SSA vs exit-time ensembles");
  add_common(*compare, cfg);
  compare->add_option("--epsilon", cfg.epsilon, "Grouping tolerance")
      ->required()
      ->check(CLI::NonNegativeNumber);
  compare->add_option("--reference", cfg.reference, "Stored SSA histogram CSV")
      ->check(CLI::ExistingFile);

  auto* converge = app.add_subcommand("converge", "Error against one SSA reference per epsilon");
  add_common(*converge, cfg);
  converge->add_option("--epsilons", cfg.epsilons, "Comma-separated, strictly descending")
      ->required()
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
    if (converge->parsed()) {
      for (std::size_t i = 1; i < cfg.epsilons.size(); ++i) {
        if (!(cfg.epsilons[i] < cfg.epsilons[i - 1])) {
          throw CLI::ValidationError("--epsilons", "must be strictly descending");
        }
      }
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(cfg, out);
    if (compare->parsed()) return cmd_compare(cfg, out);
    return cmd_converge(cfg, out);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << '\n';
    return kModelError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace exittime::cli
