#ifndef ADVPLAN_SOLVER_H_
#define ADVPLAN_SOLVER_H_

#include <deque>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "advplan/planner.h"

namespace advplan {

enum class Method { kGradientDescent, kBfgs, kLbfgs };

const char* ToString(Method method);
Method ParseMethod(const std::string& text);

struct SolverConfig {
  Method method = Method::kBfgs;
  int max_iters = 200;
  double grad_tol = 1e-6;
  int lbfgs_memory = 10;
  // Armijo backtracking is the only line search.
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  double initial_step = 1.0;
  int max_backtracks = 60;
  // Curvature pairs with y's <= min_curvature * |s| |y| are not used.
  double min_curvature = 1e-10;
  // Stop (not converged) once an accepted step lowers the value by no more
  // than value_tol * |f|. 0 disables.
  double value_tol = 1e-12;

  void Validate() const;
};

enum class SolverStatus {
  kConverged,
  kMaxIterations,
  kLineSearchFailed,
  kNonfiniteObjective,
  kStalled,
};

const char* ToString(SolverStatus status);

struct SolverReport {
  SolverStatus status = SolverStatus::kMaxIterations;
  bool converged = false;
  // Accepted steps; iterates holds iterations + 1 points including the start.
  int iterations = 0;
  double final_value = 0.0;
  double final_grad_norm = 0.0;
  std::vector<Eigen::VectorXd> iterates;
  std::vector<double> values;
  // Per-iterate condition numbers, only filled by diagnostics.
  std::vector<double> condition_numbers;
};

// Dense BFGS approximation of the inverse Hessian, starting from identity.
class BfgsInverseHessian {
 public:
  explicit BfgsInverseHessian(int n, double min_curvature = 1e-10);

  // Returns false (and leaves the matrix unchanged) when
  // y's <= min_curvature * |s| |y|.
  bool Update(const Eigen::VectorXd& s, const Eigen::VectorXd& y);
  void Reset();

  const Eigen::MatrixXd& matrix() const { return h_; }
  int updates() const { return updates_; }

 private:
  Eigen::MatrixXd h_;
  double min_curvature_;
  int updates_ = 0;
};

struct IterationInfo {
  int iteration = 0;
  const Eigen::VectorXd* x = nullptr;
  double value = 0.0;
  const Eigen::VectorXd* gradient = nullptr;
  // Set for BFGS only.
  const Eigen::MatrixXd* inverse_hessian = nullptr;
};

using IterationObserver = std::function<void(const IterationInfo&)>;

// Line-search minimiser over a generic objective. One instance owns its
// state; it is not meant to be shared between threads.
class Minimizer {
 public:
  Minimizer(Objective objective, int dimension, SolverConfig config);

  // Called once for the initial point and once per accepted iterate.
  void set_observer(IterationObserver observer) {
    observer_ = std::move(observer);
  }

  SolverReport Run(const Eigen::VectorXd& x0);

  // Current BFGS inverse-Hessian approximation. Throws Error(kNotSupported)
  // for the other methods.
  const Eigen::MatrixXd& InverseHessian() const;

  const SolverConfig& config() const { return config_; }

 private:
  Eigen::VectorXd Direction(const Eigen::VectorXd& gradient) const;
  void Absorb(const Eigen::VectorXd& s, const Eigen::VectorXd& y);
  void Notify(int iteration, const Eigen::VectorXd& x, double value,
              const Eigen::VectorXd& gradient) const;

  Objective objective_;
  int dimension_;
  SolverConfig config_;
  IterationObserver observer_;
  BfgsInverseHessian inverse_hessian_;
  std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> history_;
};

struct MinimizeResult {
  Trajectory trajectory;
  SolverReport report;
};

// Minimises the planner objective over the interior waypoints of `init`.
MinimizeResult Minimize(const CostModel& model, const Trajectory& init,
                        const SolverConfig& config,
                        IterationObserver observer = nullptr);

}  // namespace advplan

#endif  // ADVPLAN_SOLVER_H_
