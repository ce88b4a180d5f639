#include "advplan/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "advplan/error.h"

namespace advplan {
namespace {

constexpr double kCollisionSampleSpacing = 0.05;  // m
constexpr double kStandoffMargin = 0.1;           // m
// Adversary spawn band: fraction of the way from start to goal, and maximum
// sideways offset in meters.
constexpr std::pair<double, double> kSpawnAlong = {0.35, 0.65};
constexpr double kSpawnLateral = 2.0;

double PathLength(const std::vector<Vec2>& points) {
  double length = 0.0;
  for (size_t i = 1; i < points.size(); ++i) {
    length += (points[i] - points[i - 1]).norm();
  }
  return length;
}

struct Advance {
  Vec2 position;
  // Starts at `position`.
  std::vector<Vec2> remaining;
  // Points along the travelled stretch, for collision checks.
  std::vector<Vec2> swept;
  bool reached_end = false;
};

Advance AdvanceAlong(const std::vector<Vec2>& path, double distance) {
  Advance out;
  out.swept.push_back(path.front());
  double left = distance;
  size_t i = 1;
  Vec2 cursor = path.front();
  for (; i < path.size(); ++i) {
    const Vec2 seg = path[i] - cursor;
    const double len = seg.norm();
    const double take = std::min(len, left);
    const int samples = static_cast<int>(std::ceil(take / kCollisionSampleSpacing));
    for (int k = 1; k <= samples; ++k) {
      out.swept.push_back(cursor + seg * (take / len) * (double(k) / samples));
    }
    if (len > left) {
      cursor = cursor + seg * (left / len);
      left = 0.0;
      break;
    }
    left -= len;
    cursor = path[i];
  }
  out.position = cursor;
  out.remaining.push_back(cursor);
  for (; i < path.size(); ++i) out.remaining.push_back(path[i]);
  out.reached_end = out.remaining.size() == 1;
  if (out.reached_end) out.position = path.back();
  return out;
}

// K points evenly spaced in arc length strictly inside the polyline.
std::vector<Vec2> ResampleInterior(const std::vector<Vec2>& path, int K) {
  const double total = PathLength(path);
  std::vector<Vec2> out;
  out.reserve(K);
  if (total <= 0.0) {
    out.assign(K, path.front());
    return out;
  }
  size_t seg = 1;
  double seg_start = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double s = total * k / (K + 1);
    while (seg + 1 < path.size() &&
           seg_start + (path[seg] - path[seg - 1]).norm() < s) {
      seg_start += (path[seg] - path[seg - 1]).norm();
      ++seg;
    }
    const double len = (path[seg] - path[seg - 1]).norm();
    const double t = len > 0.0 ? std::clamp((s - seg_start) / len, 0.0, 1.0) : 0.0;
    out.push_back(path[seg - 1] + t * (path[seg] - path[seg - 1]));
  }
  return out;
}

Vec2 Polar(const Vec2& origin, double angle, double r) {
  return origin + r * Vec2(std::cos(angle), std::sin(angle));
}

struct Replan {
  Trajectory plan;
  SolverReport report;
  CostModel model;
};

class TrialRunner {
 public:
  explicit TrialRunner(const TrialConfig& config) : config_(config) {}

  TrialRecord Run();

 private:
  Trajectory Initial(const Vec2& from) const;
  Replan Solve(const Vec2& from, const std::optional<Vec2>& adversary) const;
  Vec2 FirstDisplacement(const Trajectory& plan) const;
  Vec2 AttackPoint(const Vec2& target, double heading, double heading_rate,
                   Vec2* heuristic_point);

  const TrialConfig& config_;
  EnvironmentMap static_map_;
  Vec2 goal_;
  std::vector<Vec2> remaining_;  // current plan from the target onwards
  Vec2 adversary_ = Vec2::Zero();
  double random_heading_ = 0.0;
  std::mt19937_64 bo_rng_;
  std::vector<Observation> gp_window_;
  std::vector<Observation> gp_log_;
};

Trajectory TrialRunner::Initial(const Vec2& from) const {
  if (config_.warm_start && remaining_.size() >= 2) {
    return Trajectory(from, goal_,
                      ResampleInterior(remaining_, config_.num_waypoints),
                      config_.segment_dt);
  }
  return StraightLineInit(from, goal_, config_.num_waypoints,
                          config_.segment_dt);
}

Replan TrialRunner::Solve(const Vec2& from,
                          const std::optional<Vec2>& adversary) const {
  EnvironmentMap map =
      adversary ? static_map_.WithAdversary({*adversary, config_.adversary_radius})
                : static_map_;
  CostModel model(config_.weights(), std::move(map));
  MinimizeResult result = Minimize(model, Initial(from), config_.solver);
  return {std::move(result.trajectory), std::move(result.report),
          std::move(model)};
}

Vec2 TrialRunner::FirstDisplacement(const Trajectory& plan) const {
  const std::vector<Vec2> path = plan.Polyline();
  return AdvanceAlong(path, config_.target_speed * config_.step_dt).position -
         path.front();
}

Vec2 TrialRunner::AttackPoint(const Vec2& target, double heading,
                              double heading_rate, Vec2* heuristic_point) {
  const AttackPolicy& policy = config_.policy;
  const AttackConfig h =
      HeuristicAttack(heading, heading_rate, config_.step_dt, policy);
  *heuristic_point = Polar(target, h.theta, h.r);
  switch (policy.kind) {
    case PolicyKind::kNone:
      return adversary_;
    case PolicyKind::kRandomLine:
      return Polar(adversary_, random_heading_,
                   config_.adversary_vmax * config_.step_dt);
    case PolicyKind::kHeuristic:
      if (config_.ignore_safety_radius) {
        // Without a safety radius to respect the adversary aims at where the
        // target will be after one more step along the attack bearing.
        return Polar(target, h.theta, config_.target_speed * config_.step_dt);
      }
      return *heuristic_point;
    case PolicyKind::kBayesOpt: {
      const Vec2 nominal = FirstDisplacement(Solve(target, std::nullopt).plan);
      const Bounds& bounds = static_map_.bounds();
      const DeviationProbe probe = [&](const AttackConfig& c) {
        const Vec2 placed = bounds.Clamp(Polar(target, heading + c.theta, c.r));
        return DeviationAngle(FirstDisplacement(Solve(target, placed).plan),
                              nominal);
      };
      BayesOptResult bo =
          BayesOptAttack(std::move(gp_window_), policy, probe, bo_rng_);
      gp_log_.insert(gp_log_.end(), bo.probes.begin(), bo.probes.end());
      gp_window_ = std::move(bo.observations);
      return Polar(target, heading + bo.best.theta, bo.best.r);
    }
  }
  return adversary_;
}

TrialRecord TrialRunner::Run() {
  config_.Validate();
  TrialRecord record;
  record.seed = config_.seed;

  std::mt19937_64 rng(config_.seed);
  const Bounds& b = config_.map_spec.bounds;
  std::uniform_real_distribution<double> edge_y(b.min.y() + 2.0,
                                                b.max.y() - 2.0);
  MapSpec spec = config_.map_spec;
  spec.start = Vec2(b.min.x() + 1.0, edge_y(rng));
  spec.goal = Vec2(b.max.x() - 1.0, edge_y(rng));
  spec.seed = rng();
  static_map_ = GenerateMap(spec);
  goal_ = spec.goal;

  // The adversary starts in a band across the middle of the start-goal line.
  const Vec2 line = spec.goal - spec.start;
  const Vec2 normal = Vec2(-line.y(), line.x()).normalized();
  std::uniform_real_distribution<double> along(kSpawnAlong.first,
                                               kSpawnAlong.second);
  std::uniform_real_distribution<double> lateral(-kSpawnLateral, kSpawnLateral);
  bool spawned = false;
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    adversary_ = b.Clamp(spec.start + along(rng) * line + lateral(rng) * normal);
    if (MinSeparation(static_map_, adversary_) >= config_.repulsion_margin &&
        (adversary_ - spec.start).norm() >= config_.spawn_min_distance) {
      spawned = true;
      break;
    }
  }
  if (!spawned) {
    throw Error(ErrorCode::kGenerationFailure, "could not spawn the adversary");
  }
  random_heading_ = std::uniform_real_distribution<double>(
      -std::numbers::pi, std::numbers::pi)(rng);
  bo_rng_.seed(rng());

  const bool has_adversary = config_.policy.kind != PolicyKind::kNone;
  Vec2 target = spec.start;
  std::vector<Vec2> history = {target};
  Trajectory previous = StraightLineInit(target, goal_, config_.num_waypoints,
                                         config_.segment_dt);

  for (int step = 0; step < config_.max_steps; ++step) {
    StepRecord rec;
    Replan replan = Solve(target, has_adversary ? std::optional<Vec2>(adversary_)
                                                : std::nullopt);
    rec.iterations = replan.report.iterations;
    Trajectory plan = replan.plan;
    if (replan.report.status == SolverStatus::kNonfiniteObjective) {
      rec.replan_failed = true;
      plan = remaining_.size() >= 2
                 ? Trajectory(target, goal_,
                              ResampleInterior(remaining_, config_.num_waypoints),
                              config_.segment_dt)
                 : previous;
    }
    rec.kappa_max = HessianCondition(replan.model, plan);
    previous = plan;

    const Advance moved =
        AdvanceAlong(plan.Polyline(), config_.target_speed * config_.step_dt);
    target = moved.position;
    remaining_ = moved.remaining;
    history.push_back(target);

    // Observed heading and its rate from the last two displacements.
    const Vec2 v = history[history.size() - 1] - history[history.size() - 2];
    const double heading = v.norm() > 1e-9
                               ? std::atan2(v.y(), v.x())
                               : std::atan2(goal_.y() - target.y(),
                                            goal_.x() - target.x());
    double heading_rate = 0.0;
    if (history.size() >= 3) {
      const Vec2 u = history[history.size() - 2] - history[history.size() - 3];
      if (u.norm() > 1e-9 && v.norm() > 1e-9) {
        heading_rate =
            WrapAngle(heading - std::atan2(u.y(), u.x())) / config_.step_dt;
      }
    }

    // A zero speed limit pins the adversary where it spawned.
    if (has_adversary && config_.adversary_vmax > 0.0) {
      rec.attack_point = AttackPoint(target, heading, heading_rate,
                                     &rec.heuristic_point);
      adversary_ = AdversaryStep(adversary_, rec.attack_point,
                                 config_.adversary_vmax, config_.step_dt,
                                 static_map_, config_.repulsion_margin);
      if (!config_.ignore_safety_radius) {
        const double keep = config_.adversary_radius + config_.safety_radius +
                            kStandoffMargin;
        const Vec2 away = adversary_ - target;
        if (away.norm() < keep) {
          const Vec2 dir = away.norm() > 1e-9
                               ? Vec2(away.normalized())
                               : Vec2(-std::sin(heading), std::cos(heading));
          adversary_ = b.Clamp(target + keep * dir);
        }
      }
    } else if (has_adversary) {
      rec.attack_point = rec.heuristic_point = adversary_;
    }
    rec.target_pos = target;
    rec.adversary_pos = adversary_;
    record.per_step.push_back(rec);
    record.steps = step + 1;

    std::optional<Outcome> outcome;
    if (has_adversary) {
      const double surface =
          (target - adversary_).norm() - config_.adversary_radius;
      const double limit =
          config_.ignore_safety_radius ? 0.0 : config_.safety_radius;
      if (surface < limit) outcome = Outcome::kCollA;
    }
    if (!outcome) {
      for (const Vec2& p : moved.swept) {
        if (MinSeparation(static_map_, p) < 0.0) {
          outcome = Outcome::kCollM;
          break;
        }
      }
    }
    if (!outcome && (target - goal_).norm() <= config_.goal_radius) {
      outcome = Outcome::kSuccess;
    }
    if (outcome) {
      record.outcome = *outcome;
      break;
    }
    record.outcome = Outcome::kTimeout;
  }
  record.gp_data = std::move(gp_log_);
  return record;
}

double Mean(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return xs.empty() ? 0.0 : sum / xs.size();
}

double StandardError(const std::vector<double>& xs) {
  const size_t n = xs.size();
  if (n < 2) return 0.0;
  const double mean = Mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
}

std::string FormatDouble(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

const char* ToString(WeightsConfig config) {
  return config == WeightsConfig::kDefault ? "default" : "conservative";
}

WeightsConfig ParseWeightsConfig(const std::string& text) {
  if (text == "default") return WeightsConfig::kDefault;
  if (text == "conservative") return WeightsConfig::kConservative;
  throw Error(ErrorCode::kConfig, "unknown weights config '" + text + "'");
}

const char* ToString(Outcome outcome) {
  switch (outcome) {
    case Outcome::kSuccess:
      return "success";
    case Outcome::kCollM:
      return "coll-m";
    case Outcome::kCollA:
      return "coll-a";
    case Outcome::kTimeout:
      return "timeout";
  }
  return "unknown";
}

Outcome ParseOutcome(const std::string& text) {
  for (Outcome o : {Outcome::kSuccess, Outcome::kCollM, Outcome::kCollA,
                    Outcome::kTimeout}) {
    if (text == ToString(o)) return o;
  }
  throw Error(ErrorCode::kIo, "unknown outcome '" + text + "'");
}

void TrialConfig::Validate() const {
  try {
    solver.Validate();
    policy.Validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  const auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kConfig, what);
  };
  if (!(target_speed > 0.0)) fail("target_speed must be positive");
  if (!(adversary_vmax >= 0.0) || adversary_vmax > target_speed) {
    fail("adversary_vmax must be non-negative and not exceed target_speed");
  }
  if (safety_radius < 0.0) fail("safety_radius must be non-negative");
  if (max_steps < 1) fail("max_steps must be at least 1");
  if (!(step_dt > 0.0) || !(segment_dt > 0.0)) fail("time steps must be positive");
  if (num_waypoints < 1) fail("num_waypoints must be at least 1");
  if (!(adversary_radius > 0.0) || !(goal_radius > 0.0)) {
    fail("radii must be positive");
  }
  const CostWeights& w = weights();
  if (!(w.w_d >= 0.0) || !(w.w_c >= 0.0) || !(w.epsilon > 0.0)) {
    fail("cost weights must be non-negative and epsilon positive");
  }
  if (repulsion_margin < 0.0 || spawn_min_distance < 0.0) {
    fail("repulsion_margin and spawn_min_distance must be non-negative");
  }
  if (!(sweep_obstacle_radius > 0.0)) fail("sweep_obstacle_radius must be positive");
  if (map_spec.obstacle_count < 0 || !(map_spec.radius_range.first > 0.0) ||
      map_spec.radius_range.first > map_spec.radius_range.second) {
    fail("invalid map spec");
  }
}

double TrialRecord::AverageIterations() const {
  if (per_step.empty()) return 0.0;
  double sum = 0.0;
  for (const StepRecord& s : per_step) sum += s.iterations;
  return sum / per_step.size();
}

int TrialRecord::MaxIterations() const {
  int best = 0;
  for (const StepRecord& s : per_step) best = std::max(best, s.iterations);
  return best;
}

double TrialRecord::MaxKappa() const {
  double best = 0.0;
  for (const StepRecord& s : per_step) best = std::max(best, s.kappa_max);
  return best;
}

SweepSetup MakeSweepSetup(const TrialConfig& config) {
  config.Validate();
  const Bounds& b = config.map_spec.bounds;
  const double mid_y = 0.5 * (b.min.y() + b.max.y());
  return SweepSetup{CostModel(config.weights(), EnvironmentMap(b)),
                    Vec2(b.min.x(), mid_y),
                    Vec2(b.max.x(), mid_y),
                    config.num_waypoints,
                    config.sweep_obstacle_radius,
                    config.solver};
}

TrialRecord RunTrial(const TrialConfig& config) {
  return TrialRunner(config).Run();
}

BatchSummary Summarize(const TrialConfig& config,
                       std::vector<TrialRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) {
              return a.seed < b.seed;
            });
  BatchSummary s;
  s.policy = ToString(config.policy.kind);
  if (config.ignore_safety_radius) s.policy += "-nosafety";
  s.weights = ToString(config.weights_config);
  s.n_trials = static_cast<int>(records.size());
  std::vector<double> success, collm, colla, timeout, avg, max;
  for (const TrialRecord& r : records) {
    success.push_back(r.outcome == Outcome::kSuccess);
    collm.push_back(r.outcome == Outcome::kCollM);
    colla.push_back(r.outcome == Outcome::kCollA);
    timeout.push_back(r.outcome == Outcome::kTimeout);
    avg.push_back(r.AverageIterations());
    max.push_back(r.MaxIterations());
  }
  s.success_rate = Mean(success);
  s.collm_rate = Mean(collm);
  s.colla_rate = Mean(colla);
  s.timeout_rate = Mean(timeout);
  s.se_success = StandardError(success);
  s.se_collm = StandardError(collm);
  s.se_colla = StandardError(colla);
  s.se_timeout = StandardError(timeout);
  s.mean_avg_iters = Mean(avg);
  s.se_avg_iters = StandardError(avg);
  s.mean_max_iters = Mean(max);
  s.se_max_iters = StandardError(max);
  return s;
}

BatchResult RunBatch(const TrialConfig& config, int n, uint64_t first_seed,
                     int threads) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "batch needs n >= 1");
  config.Validate();
  if (threads <= 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min(threads, n);

  std::vector<TrialRecord> records(n);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&]() {
    TrialConfig local = config;
    for (int i = next++; i < n; i = next++) {
      try {
        local.seed = first_seed + static_cast<uint64_t>(i);
        records[i] = RunTrial(local);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  BatchResult result;
  result.summary = Summarize(config, records);
  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) {
              return a.seed < b.seed;
            });
  result.records = std::move(records);
  return result;
}

ProximityTable ProximityExperiment(const TrialConfig& config,
                                   const std::vector<double>& radii, int n,
                                   uint64_t first_seed, int threads) {
  if (radii.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "proximity needs radii");
  }
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && radii[i] < radii[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "radii must be positive and ascending");
    }
  }
  ProximityTable table;
  TrialConfig baseline = config;
  baseline.policy.kind = PolicyKind::kNone;
  table.baseline = RunBatch(baseline, n, first_seed, threads).summary;
  for (double radius : radii) {
    TrialConfig pinned = config;
    pinned.policy.r_bounds = {radius, radius};
    table.rows.push_back(
        {radius, RunBatch(pinned, n, first_seed, threads).summary});
  }
  return table;
}

void WriteStepCsv(std::ostream& out, const TrialRecord& record) {
  out << "step,iterations,kappa_max,replan_failed,tx,ty,ax,ay\n";
  for (size_t i = 0; i < record.per_step.size(); ++i) {
    const StepRecord& s = record.per_step[i];
    out << i << ',' << s.iterations << ',' << FormatDouble(s.kappa_max) << ','
        << (s.replan_failed ? 1 : 0) << ',' << FormatDouble(s.target_pos.x())
        << ',' << FormatDouble(s.target_pos.y()) << ','
        << FormatDouble(s.adversary_pos.x()) << ','
        << FormatDouble(s.adversary_pos.y()) << '\n';
  }
}

void WriteTrialsCsv(std::ostream& out,
                    const std::vector<TrialRecord>& records) {
  out << "seed,outcome,steps,avg_iters,max_iters,kappa_max\n";
  for (const TrialRecord& r : records) {
    out << r.seed << ',' << ToString(r.outcome) << ',' << r.steps << ','
        << FormatDouble(r.AverageIterations()) << ',' << r.MaxIterations()
        << ',' << FormatDouble(r.MaxKappa()) << '\n';
  }
}

void WriteBatchCsv(std::ostream& out, const std::vector<BatchSummary>& rows) {
  out << "policy,weights,n,success,collm,colla,timeout,mean_avg_iters,"
         "se_avg_iters,mean_max_iters,se_max_iters\n";
  for (const BatchSummary& s : rows) {
    out << s.policy << ',' << s.weights << ',' << s.n_trials << ','
        << FormatDouble(s.success_rate) << ',' << FormatDouble(s.collm_rate)
        << ',' << FormatDouble(s.colla_rate) << ','
        << FormatDouble(s.timeout_rate) << ','
        << FormatDouble(s.mean_avg_iters) << ','
        << FormatDouble(s.se_avg_iters) << ','
        << FormatDouble(s.mean_max_iters) << ','
        << FormatDouble(s.se_max_iters) << '\n';
  }
}

std::vector<BatchSummary> ReadBatchCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("policy,weights,n,", 0) != 0) {
    throw Error(ErrorCode::kIo, "missing batch CSV header");
  }
  std::vector<BatchSummary> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 11) {
      throw Error(ErrorCode::kIo, "batch CSV row has " +
                                      std::to_string(f.size()) + " fields");
    }
    BatchSummary s;
    try {
      s.policy = f[0];
      s.weights = f[1];
      s.n_trials = std::stoi(f[2]);
      s.success_rate = std::stod(f[3]);
      s.collm_rate = std::stod(f[4]);
      s.colla_rate = std::stod(f[5]);
      s.timeout_rate = std::stod(f[6]);
      s.mean_avg_iters = std::stod(f[7]);
      s.se_avg_iters = std::stod(f[8]);
      s.mean_max_iters = std::stod(f[9]);
      s.se_max_iters = std::stod(f[10]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kIo, "malformed batch CSV row '" + line + "'");
    }
    rows.push_back(s);
  }
  return rows;
}

void WriteProximityCsv(std::ostream& out, const ProximityTable& table) {
  out << "radius,policy,n,mean_avg_iters,se_avg_iters,mean_max_iters,"
         "se_max_iters\n";
  const auto row = [&out](double radius, const BatchSummary& s) {
    out << FormatDouble(radius) << ',' << s.policy << ',' << s.n_trials << ','
        << FormatDouble(s.mean_avg_iters) << ','
        << FormatDouble(s.se_avg_iters) << ','
        << FormatDouble(s.mean_max_iters) << ','
        << FormatDouble(s.se_max_iters) << '\n';
  };
  row(0.0, table.baseline);
  for (const ProximityRow& r : table.rows) row(r.radius, r.summary);
}

void WriteFile(const std::filesystem::path& path,
               const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  }
  writer(out);
  out.flush();
  if (!out) {
    throw Error(ErrorCode::kIo, "write to '" + path.string() + "' failed");
  }
}

}  // namespace advplan
