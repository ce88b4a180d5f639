#ifndef ADVPLAN_ADVERSARY_H_
#define ADVPLAN_ADVERSARY_H_

#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "advplan/env.h"

namespace advplan {

// Attack placement in target-relative polar coordinates.
struct AttackConfig {
  double theta = 0.0;  // radians
  double r = 1.0;      // meters
};

struct Observation {
  AttackConfig config;
  double deviation = 0.0;  // radians, in [0, pi]
};

// Angle between two velocity vectors in [0, pi]; 0 if either is shorter than
// 1e-9.
double DeviationAngle(const Vec2& v, const Vec2& v0);

// Wraps to (-pi, pi].
double WrapAngle(double angle);

struct GpHyperparameters {
  double length_theta = 0.5;  // radians
  double length_r = 1.0;      // meters
  double signal_variance = 1.0;
  double noise_variance = 1e-4;
};

struct GpPrediction {
  double mean = 0.0;
  double variance = 0.0;
};

// Zero-mean GP with an anisotropic squared-exponential kernel over
// (theta, r). Immutable once fitted.
class GpModel {
 public:
  // Empty model: predictions are the prior.
  explicit GpModel(GpHyperparameters hyper = {});

  // Throws Error(kNotPositiveDefinite) when the kernel matrix cannot be
  // factorised (duplicate configs with zero noise).
  static GpModel Fit(std::vector<Observation> observations,
                     const GpHyperparameters& hyper);

  double Kernel(const AttackConfig& a, const AttackConfig& b) const;
  GpPrediction Predict(const AttackConfig& config) const;
  std::vector<GpPrediction> PredictBatch(
      const std::vector<AttackConfig>& configs) const;

  // log p(y | X, hyper).
  double LogMarginalLikelihood() const;

  const std::vector<Observation>& observations() const { return obs_; }
  const GpHyperparameters& hyperparameters() const { return hyper_; }

 private:
  GpHyperparameters hyper_;
  std::vector<Observation> obs_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
};

// Picks the hyperparameters with the highest marginal likelihood from a
// small fixed grid around `base`.
GpHyperparameters TuneHyperparameters(const std::vector<Observation>& obs,
                                      const GpHyperparameters& base);

double NormalPdf(double z);
double NormalCdf(double z);

// EI for maximisation. Zero-variance inputs reduce to max(0, mean - best - xi).
double ExpectedImprovement(double mean, double variance, double best_so_far,
                           double xi);

enum class PolicyKind { kBayesOpt, kHeuristic, kRandomLine, kNone };

const char* ToString(PolicyKind kind);
PolicyKind ParsePolicyKind(const std::string& text);

struct AttackPolicy {
  PolicyKind kind = PolicyKind::kHeuristic;
  std::pair<double, double> r_bounds = {1.0, 3.0};
  int bo_iters = 10;
  double ei_xi = 0.01;
  int bo_candidates = 512;
  // Oldest observations are dropped beyond this many.
  int max_gp_points = 200;
  bool tune_hyperparameters = false;
  GpHyperparameters hyper;

  void Validate() const;
};

struct BayesOptResult {
  AttackConfig best;
  double best_deviation = 0.0;
  // Prior data plus every probe made by this call, oldest dropped beyond
  // max_gp_points.
  std::vector<Observation> observations;
  // The probes of this call alone.
  std::vector<Observation> probes;
};

using DeviationProbe = std::function<double(const AttackConfig&)>;

// Bayesian optimisation of the probe over theta in [-pi, pi] and r in
// policy.r_bounds. Each iteration fits the GP to the data, maximises EI over
// policy.bo_candidates uniform candidates plus the incumbent, and probes the
// winner. Returns the best probe of this call.
BayesOptResult BayesOptAttack(std::vector<Observation> prior,
                              const AttackPolicy& policy,
                              const DeviationProbe& probe,
                              std::mt19937_64& rng);

// theta_a = theta_r + 0.5 * delta_t * dtheta_dt, with dtheta_dt clamped to
// [-pi/2, pi/2]; r is the midpoint of policy.r_bounds.
AttackConfig HeuristicAttack(double theta_r, double dtheta_dt, double delta_t,
                             const AttackPolicy& policy);

// Moves at most v_max * dt toward `attack_target`, then pushes away from every
// obstacle closer than `repulsion_margin` by (margin - d) along its outward
// normal, then clamps to the map bounds.
Vec2 AdversaryStep(const Vec2& current, const Vec2& attack_target,
                   double v_max, double dt, const EnvironmentMap& map,
                   double repulsion_margin);

// Columns: theta,r,deviation
void WriteGpDataCsv(std::ostream& out, const std::vector<Observation>& obs);

}  // namespace advplan

#endif  // ADVPLAN_ADVERSARY_H_
