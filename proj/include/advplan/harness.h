#ifndef ADVPLAN_HARNESS_H_
#define ADVPLAN_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "advplan/adversary.h"
#include "advplan/diagnostics.h"
#include "advplan/env.h"
#include "advplan/planner.h"
#include "advplan/solver.h"

namespace advplan {

enum class WeightsConfig { kDefault, kConservative };

const char* ToString(WeightsConfig config);
WeightsConfig ParseWeightsConfig(const std::string& text);

struct TrialConfig {
  // Map kind, obstacle count and radii; seed and endpoints are drawn per
  // trial.
  MapSpec map_spec = DefaultMapSpec(MapKind::kDense);
  WeightsConfig weights_config = WeightsConfig::kDefault;
  CostWeights default_weights = CostWeights::Default();
  CostWeights conservative_weights = CostWeights::Conservative();
  SolverConfig solver;
  AttackPolicy policy;

  double target_speed = 1.0;    // m/s
  double adversary_vmax = 1.0;  // m/s
  double safety_radius = 0.6;   // m, measured from the adversary surface
  bool ignore_safety_radius = false;
  int max_steps = 120;
  uint64_t seed = 0;

  double step_dt = 0.5;  // simulation step, s
  int num_waypoints = 20;
  double segment_dt = 1.0;  // trajectory time per segment, s
  double adversary_radius = 0.3;
  double goal_radius = 0.5;
  // Clearance the adversary keeps from static obstacles.
  double repulsion_margin = 0.5;
  double spawn_min_distance = 4.0;
  // Replans start from the previous plan instead of the straight line.
  bool warm_start = true;
  // Obstacle radius used by the sweep subcommand.
  double sweep_obstacle_radius = 2.0;

  const CostWeights& weights() const {
    return weights_config == WeightsConfig::kDefault ? default_weights
                                                     : conservative_weights;
  }
  void Validate() const;
};

enum class Outcome { kSuccess, kCollM, kCollA, kTimeout };

const char* ToString(Outcome outcome);
Outcome ParseOutcome(const std::string& text);

struct StepRecord {
  int iterations = 0;
  // Condition number of the planner Hessian at this replan's solution.
  double kappa_max = 1.0;
  bool replan_failed = false;
  Vec2 target_pos = Vec2::Zero();
  Vec2 adversary_pos = Vec2::Zero();
  // World-frame point the adversary steered toward, and what the heuristic
  // would have chosen in the same state.
  Vec2 attack_point = Vec2::Zero();
  Vec2 heuristic_point = Vec2::Zero();
};

struct TrialRecord {
  Outcome outcome = Outcome::kTimeout;
  int steps = 0;
  std::vector<StepRecord> per_step;
  uint64_t seed = 0;
  // Every probe made by the Bayesian-optimisation policy, in order.
  std::vector<Observation> gp_data;

  double AverageIterations() const;
  int MaxIterations() const;
  double MaxKappa() const;
};

// The corridor sweep built from a trial config: empty map with the config's
// bounds, start and goal at the middle of the left and right edges, the
// config's weights, solver, waypoint count and sweep_obstacle_radius.
SweepSetup MakeSweepSetup(const TrialConfig& config);

// One adversarial trial. Each step: the target replans with the adversary as
// an extra obstacle, advances target_speed * step_dt along the plan, the
// adversary picks an attack point and moves, then the state is classified.
TrialRecord RunTrial(const TrialConfig& config);

struct BatchSummary {
  std::string policy;
  std::string weights;
  int n_trials = 0;
  double success_rate = 0.0;
  double collm_rate = 0.0;
  double colla_rate = 0.0;
  double timeout_rate = 0.0;
  double se_success = 0.0;
  double se_collm = 0.0;
  double se_colla = 0.0;
  double se_timeout = 0.0;
  double mean_avg_iters = 0.0;
  double se_avg_iters = 0.0;
  double mean_max_iters = 0.0;
  double se_max_iters = 0.0;
};

BatchSummary Summarize(const TrialConfig& config,
                       std::vector<TrialRecord> records);

struct BatchResult {
  BatchSummary summary;
  // Sorted by seed.
  std::vector<TrialRecord> records;
};

// Trials with seeds first_seed, first_seed + 1, ... first_seed + n - 1.
// `threads` <= 0 uses the hardware concurrency.
BatchResult RunBatch(const TrialConfig& config, int n, uint64_t first_seed,
                     int threads = 1);

struct ProximityRow {
  double radius = 0.0;
  BatchSummary summary;
};

struct ProximityTable {
  BatchSummary baseline;  // policy none
  std::vector<ProximityRow> rows;
};

// One batch per radius with r_bounds pinned to (radius, radius), plus a
// no-adversary baseline on the same seeds.
ProximityTable ProximityExperiment(const TrialConfig& config,
                                   const std::vector<double>& radii, int n,
                                   uint64_t first_seed, int threads = 1);

// CSV writers. Numbers use 17 significant digits so identical inputs give
// identical bytes.
// step,iterations,kappa_max,replan_failed,tx,ty,ax,ay
void WriteStepCsv(std::ostream& out, const TrialRecord& record);
// seed,outcome,steps,avg_iters,max_iters,kappa_max
void WriteTrialsCsv(std::ostream& out, const std::vector<TrialRecord>& records);
// policy,weights,n,success,collm,colla,timeout,mean_avg_iters,se_avg_iters,
// mean_max_iters,se_max_iters
void WriteBatchCsv(std::ostream& out, const std::vector<BatchSummary>& rows);
std::vector<BatchSummary> ReadBatchCsv(std::istream& in);
// radius,policy,n,mean_avg_iters,se_avg_iters,mean_max_iters,se_max_iters;
// the baseline row has radius 0 and policy none.
void WriteProximityCsv(std::ostream& out, const ProximityTable& table);

// Opens `path` for writing and hands the stream to `writer`. Throws
// Error(kIo) naming the path on failure.
void WriteFile(const std::filesystem::path& path,
               const std::function<void(std::ostream&)>& writer);

// Loads "key = value" config text. Unknown keys and malformed values throw
// Error(kConfig).
TrialConfig ParseConfig(std::istream& in);
TrialConfig LoadConfig(const std::filesystem::path& path);

}  // namespace advplan

#endif  // ADVPLAN_HARNESS_H_
