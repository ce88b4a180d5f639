// advplan: command-line front end for trials, batches, sweeps, proximity
// tables and GP data dumps. Every subcommand writes CSV files into --out.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "advplan/error.h"
#include "advplan/harness.h"

namespace fs = std::filesystem;
using namespace advplan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerical = 3;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kNotSupported:
      return kExitConfig;
    case ErrorCode::kIo:
      return kExitIo;
    case ErrorCode::kGenerationFailure:
    case ErrorCode::kNonSymmetricInput:
    case ErrorCode::kNotPositiveDefinite:
    case ErrorCode::kNumerical:
      return kExitNumerical;
  }
  return kExitNumerical;
}

struct Options {
  std::string config_path;
  uint64_t seed = 0;
  bool seed_given = false;
  int trials = 100;
  int proximity_trials = 10;
  int grid = 40;
  int threads = 1;
  std::string radii = "2,4,6";
  std::string out = ".";
};

TrialConfig LoadOrDefault(const Options& opt) {
  TrialConfig config;
  if (!opt.config_path.empty()) config = LoadConfig(opt.config_path);
  if (opt.seed_given) config.seed = opt.seed;
  return config;
}

fs::path OutDir(const Options& opt) {
  const fs::path dir(opt.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "cannot create output directory '" +
                                    dir.string() + "'");
  }
  return dir;
}

std::vector<double> ParseRadii(const std::string& text) {
  std::vector<double> radii;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t used = 0;
      radii.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfig, "bad radius '" + item + "'");
    }
  }
  if (radii.empty()) throw Error(ErrorCode::kConfig, "no radii given");
  return radii;
}

void RunTrialCommand(const Options& opt) {
  const TrialConfig config = LoadOrDefault(opt);
  const fs::path dir = OutDir(opt);
  const TrialRecord record = RunTrial(config);
  WriteFile(dir / "steps.csv",
            [&](std::ostream& out) { WriteStepCsv(out, record); });
  std::printf("seed %llu: %s after %d steps\n",
              static_cast<unsigned long long>(record.seed),
              ToString(record.outcome), record.steps);
}

void RunBatchCommand(const Options& opt) {
  const TrialConfig config = LoadOrDefault(opt);
  const fs::path dir = OutDir(opt);
  const BatchResult result =
      RunBatch(config, opt.trials, config.seed, opt.threads);
  WriteFile(dir / "batch.csv",
            [&](std::ostream& out) { WriteBatchCsv(out, {result.summary}); });
  WriteFile(dir / "trials.csv",
            [&](std::ostream& out) { WriteTrialsCsv(out, result.records); });
  const BatchSummary& s = result.summary;
  std::printf(
      "%d trials: success %.2f coll-m %.2f coll-a %.2f timeout %.2f, "
      "mean max iterations %.1f\n",
      s.n_trials, s.success_rate, s.collm_rate, s.colla_rate, s.timeout_rate,
      s.mean_max_iters);
}

void RunSweepCommand(const Options& opt) {
  const TrialConfig config = LoadOrDefault(opt);
  const fs::path dir = OutDir(opt);
  const std::vector<SweepCell> cells =
      ObstacleSweep(MakeSweepSetup(config), opt.grid);
  WriteFile(dir / "sweep.csv",
            [&](std::ostream& out) { WriteSweepCsv(out, cells); });
  int failures = 0;
  for (const SweepCell& c : cells) {
    failures += c.outcome == SweepOutcome::kFailure;
  }
  std::printf("%zu cells, %d failures\n", cells.size(), failures);
}

void RunProximityCommand(const Options& opt) {
  const TrialConfig config = LoadOrDefault(opt);
  const std::vector<double> radii = ParseRadii(opt.radii);
  const fs::path dir = OutDir(opt);
  const ProximityTable table =
      ProximityExperiment(config, radii, opt.proximity_trials, config.seed,
                          opt.threads);
  WriteFile(dir / "proximity.csv",
            [&](std::ostream& out) { WriteProximityCsv(out, table); });
  std::printf("baseline mean max iterations %.1f\n",
              table.baseline.mean_max_iters);
  for (const ProximityRow& row : table.rows) {
    std::printf("radius %g: %.1f\n", row.radius, row.summary.mean_max_iters);
  }
}

void RunGpDumpCommand(const Options& opt) {
  TrialConfig config = LoadOrDefault(opt);
  // The GP only exists under the Bayesian-optimisation policy.
  config.policy.kind = PolicyKind::kBayesOpt;
  const fs::path dir = OutDir(opt);
  const TrialRecord record = RunTrial(config);
  WriteFile(dir / "gp_data.csv",
            [&](std::ostream& out) { WriteGpDataCsv(out, record.gp_data); });
  WriteFile(dir / "steps.csv",
            [&](std::ostream& out) { WriteStepCsv(out, record); });
  std::printf("%zu observations over %d steps (%s)\n", record.gp_data.size(),
              record.steps, ToString(record.outcome));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial attacks on optimisation-based trajectory planners"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "key = value config file")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output directory")->capture_default_str();
  };
  const auto add_seed = [&](CLI::App* sub) {
    sub->add_option_function<uint64_t>(
        "--seed",
        [&](uint64_t s) {
          opt.seed = s;
          opt.seed_given = true;
        },
        "trial seed (first seed for batches); overrides the config");
  };
  const auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", opt.threads,
                    "worker threads, 0 = all cores; output does not depend "
                    "on it")
        ->capture_default_str();
  };

  CLI::App* trial = app.add_subcommand("trial", "one trial, per-step CSV");
  add_common(trial);
  add_seed(trial);

  CLI::App* batch = app.add_subcommand("batch", "summary and per-trial CSVs");
  add_common(batch);
  add_seed(batch);
  batch->add_option("--trials", opt.trials)->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_threads(batch);

  CLI::App* sweep = app.add_subcommand("sweep", "single-obstacle grid sweep");
  add_common(sweep);
  sweep->add_option("--grid", opt.grid)->check(CLI::Range(2, 1000))
      ->capture_default_str();

  CLI::App* proximity =
      app.add_subcommand("proximity", "iterations vs pinned attack radius");
  add_common(proximity);
  add_seed(proximity);
  proximity->add_option("--radii", opt.radii, "comma-separated meters")
      ->capture_default_str();
  proximity->add_option("--trials", opt.proximity_trials, "trials per radius")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_threads(proximity);

  CLI::App* gp = app.add_subcommand(
      "gp-dump", "Bayesian-optimisation trial, GP training data CSV");
  add_common(gp);
  add_seed(gp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  try {
    if (trial->parsed()) RunTrialCommand(opt);
    if (batch->parsed()) RunBatchCommand(opt);
    if (sweep->parsed()) RunSweepCommand(opt);
    if (proximity->parsed()) RunProximityCommand(opt);
    if (gp->parsed()) RunGpDumpCommand(opt);
  } catch (const Error& e) {
    std::fprintf(stderr, "advplan: %s\n", e.what());
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "advplan: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitOk;
}
