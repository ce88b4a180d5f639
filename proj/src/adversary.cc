#include "advplan/adversary.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "advplan/error.h"

namespace advplan {

double DeviationAngle(const Vec2& v, const Vec2& v0) {
  const double nv = v.norm();
  const double nv0 = v0.norm();
  if (nv <= 1e-9 || nv0 <= 1e-9) return 0.0;
  const double cosine = std::clamp(v.dot(v0) / (nv * nv0), -1.0, 1.0);
  return std::acos(cosine);
}

double WrapAngle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(angle + std::numbers::pi, kTwoPi);
  if (wrapped <= 0.0) wrapped += kTwoPi;
  return wrapped - std::numbers::pi;
}

GpModel::GpModel(GpHyperparameters hyper) : hyper_(hyper) {}

GpModel GpModel::Fit(std::vector<Observation> observations,
                     const GpHyperparameters& hyper) {
  if (!(hyper.length_theta > 0.0) || !(hyper.length_r > 0.0) ||
      !(hyper.signal_variance > 0.0) || hyper.noise_variance < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid GP hyperparameters");
  }
  GpModel model(hyper);
  model.obs_ = std::move(observations);
  const int n = static_cast<int>(model.obs_.size());
  if (n == 0) return model;

  Eigen::MatrixXd k(n, n);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = model.obs_[i].deviation;
    for (int j = 0; j <= i; ++j) {
      k(i, j) = k(j, i) = model.Kernel(model.obs_[i].config,
                                       model.obs_[j].config);
    }
    k(i, i) += hyper.noise_variance;
  }
  model.llt_.compute(k);
  // A pivot that collapses to rounding level means the matrix is singular.
  const double floor = 1e-12 * hyper.signal_variance;
  bool degenerate = model.llt_.info() != Eigen::Success;
  if (!degenerate) {
    const Eigen::MatrixXd l = model.llt_.matrixL();
    for (int i = 0; i < n; ++i) {
      if (!(l(i, i) * l(i, i) > floor)) degenerate = true;
    }
  }
  if (degenerate) {
    throw Error(ErrorCode::kNotPositiveDefinite,
                "kernel matrix is not positive definite; duplicate configs "
                "need a positive noise variance");
  }
  model.alpha_ = model.llt_.solve(y);
  return model;
}

double GpModel::Kernel(const AttackConfig& a, const AttackConfig& b) const {
  const double dt = (a.theta - b.theta) / hyper_.length_theta;
  const double dr = (a.r - b.r) / hyper_.length_r;
  return hyper_.signal_variance * std::exp(-0.5 * (dt * dt + dr * dr));
}

GpPrediction GpModel::Predict(const AttackConfig& config) const {
  GpPrediction p;
  p.variance = hyper_.signal_variance;
  const int n = static_cast<int>(obs_.size());
  if (n == 0) return p;
  Eigen::VectorXd ks(n);
  for (int i = 0; i < n; ++i) ks[i] = Kernel(obs_[i].config, config);
  p.mean = ks.dot(alpha_);
  const Eigen::VectorXd v = llt_.matrixL().solve(ks);
  p.variance = std::max(0.0, hyper_.signal_variance - v.squaredNorm());
  return p;
}

std::vector<GpPrediction> GpModel::PredictBatch(
    const std::vector<AttackConfig>& configs) const {
  std::vector<GpPrediction> out;
  out.reserve(configs.size());
  for (const AttackConfig& c : configs) out.push_back(Predict(c));
  return out;
}

double GpModel::LogMarginalLikelihood() const {
  const int n = static_cast<int>(obs_.size());
  if (n == 0) return 0.0;
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = obs_[i].deviation;
  const Eigen::MatrixXd l = llt_.matrixL();
  const double log_det = 2.0 * l.diagonal().array().log().sum();
  return -0.5 * y.dot(alpha_) - 0.5 * log_det -
         0.5 * n * std::log(2.0 * std::numbers::pi);
}

GpHyperparameters TuneHyperparameters(const std::vector<Observation>& obs,
                                      const GpHyperparameters& base) {
  GpHyperparameters best = base;
  double best_lml = -std::numeric_limits<double>::infinity();
  for (double ft : {0.5, 1.0, 2.0}) {
    for (double fr : {0.5, 1.0, 2.0}) {
      for (double fs : {0.25, 1.0, 4.0}) {
        GpHyperparameters h = base;
        h.length_theta *= ft;
        h.length_r *= fr;
        h.signal_variance *= fs;
        try {
          const double lml = GpModel::Fit(obs, h).LogMarginalLikelihood();
          if (lml > best_lml) {
            best_lml = lml;
            best = h;
          }
        } catch (const Error&) {
          // Unfactorisable candidate; skip it.
        }
      }
    }
  }
  return best;
}

double NormalPdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double ExpectedImprovement(double mean, double variance, double best_so_far,
                           double xi) {
  const double improvement = mean - best_so_far - xi;
  const double sigma = std::sqrt(std::max(0.0, variance));
  if (sigma <= 0.0) return std::max(0.0, improvement);
  const double z = improvement / sigma;
  return std::max(0.0, improvement * NormalCdf(z) + sigma * NormalPdf(z));
}

const char* ToString(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kBayesOpt:
      return "bayesopt";
    case PolicyKind::kHeuristic:
      return "heuristic";
    case PolicyKind::kRandomLine:
      return "random";
    case PolicyKind::kNone:
      return "none";
  }
  return "unknown";
}

PolicyKind ParsePolicyKind(const std::string& text) {
  if (text == "bayesopt") return PolicyKind::kBayesOpt;
  if (text == "heuristic") return PolicyKind::kHeuristic;
  if (text == "random") return PolicyKind::kRandomLine;
  if (text == "none") return PolicyKind::kNone;
  throw Error(ErrorCode::kConfig, "unknown attack policy '" + text + "'");
}

void AttackPolicy::Validate() const {
  if (!(r_bounds.first > 0.0) || r_bounds.first > r_bounds.second) {
    throw Error(ErrorCode::kInvalidArgument, "r_bounds must satisfy 0 < min <= max");
  }
  if (bo_iters < 1 || bo_candidates < 1 || max_gp_points < 1) {
    throw Error(ErrorCode::kInvalidArgument, "invalid Bayesian optimisation budget");
  }
}

BayesOptResult BayesOptAttack(std::vector<Observation> prior,
                              const AttackPolicy& policy,
                              const DeviationProbe& probe,
                              std::mt19937_64& rng) {
  policy.Validate();
  const auto [r_min, r_max] = policy.r_bounds;
  std::uniform_real_distribution<double> u_theta(-std::numbers::pi,
                                                 std::numbers::pi);
  std::uniform_real_distribution<double> u_r(r_min, r_max);

  BayesOptResult result;
  result.observations = std::move(prior);
  bool have_best = false;
  std::vector<AttackConfig> candidates;
  candidates.reserve(policy.bo_candidates + 1);

  for (int iter = 0; iter < policy.bo_iters; ++iter) {
    auto& data = result.observations;
    if (static_cast<int>(data.size()) > policy.max_gp_points) {
      data.erase(data.begin(), data.end() - policy.max_gp_points);
    }
    const GpHyperparameters hyper =
        policy.tune_hyperparameters && data.size() >= 3
            ? TuneHyperparameters(data, policy.hyper)
            : policy.hyper;
    const GpModel gp = GpModel::Fit(data, hyper);

    double incumbent_value = 0.0;
    const Observation* incumbent = nullptr;
    for (const Observation& o : data) {
      if (incumbent == nullptr || o.deviation > incumbent_value) {
        incumbent = &o;
        incumbent_value = o.deviation;
      }
    }

    candidates.clear();
    for (int c = 0; c < policy.bo_candidates; ++c) {
      const double theta = u_theta(rng);
      const double r = r_min == r_max ? r_min : u_r(rng);
      candidates.push_back({theta, r});
    }
    if (incumbent != nullptr) candidates.push_back(incumbent->config);

    AttackConfig chosen = candidates.front();
    double best_ei = -1.0;
    for (const AttackConfig& c : candidates) {
      const GpPrediction p = gp.Predict(c);
      const double ei =
          ExpectedImprovement(p.mean, p.variance, incumbent_value, policy.ei_xi);
      if (ei > best_ei) {
        best_ei = ei;
        chosen = c;
      }
    }

    const double deviation = probe(chosen);
    result.observations.push_back({chosen, deviation});
    result.probes.push_back({chosen, deviation});
    if (!have_best || deviation > result.best_deviation) {
      have_best = true;
      result.best = chosen;
      result.best_deviation = deviation;
    }
  }
  auto& data = result.observations;
  if (static_cast<int>(data.size()) > policy.max_gp_points) {
    data.erase(data.begin(), data.end() - policy.max_gp_points);
  }
  return result;
}

AttackConfig HeuristicAttack(double theta_r, double dtheta_dt, double delta_t,
                             const AttackPolicy& policy) {
  constexpr double kHalfPi = 0.5 * std::numbers::pi;
  const double rate = std::clamp(dtheta_dt, -kHalfPi, kHalfPi);
  AttackConfig config;
  config.theta = theta_r + 0.5 * delta_t * rate;
  config.r = 0.5 * (policy.r_bounds.first + policy.r_bounds.second);
  return config;
}

Vec2 AdversaryStep(const Vec2& current, const Vec2& attack_target,
                   double v_max, double dt, const EnvironmentMap& map,
                   double repulsion_margin) {
  if (!(v_max > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "v_max must be positive");
  }
  const Vec2 delta = attack_target - current;
  const double reach = v_max * dt;
  const double dist = delta.norm();
  Vec2 next = dist <= reach ? attack_target : Vec2(current + delta * (reach / dist));

  Vec2 push = Vec2::Zero();
  for (const Obstacle& o : map.obstacles()) {
    const Vec2 away = next - o.center;
    const double rho = away.norm();
    const double d = rho - o.radius;
    if (d >= repulsion_margin) continue;
    const Vec2 normal = rho > 0.0 ? Vec2(away / rho) : Vec2(1.0, 0.0);
    push += (repulsion_margin - d) * normal;
  }
  return map.bounds().Clamp(next + push);
}

void WriteGpDataCsv(std::ostream& out, const std::vector<Observation>& obs) {
  out << "theta,r,deviation\n";
  char line[128];
  for (const Observation& o : obs) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", o.config.theta,
                  o.config.r, o.deviation);
    out << line;
  }
}

}  // namespace advplan
