#ifndef ADVPLAN_PLANNER_H_
#define ADVPLAN_PLANNER_H_

#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "advplan/env.h"

namespace advplan {

// Fixed endpoints plus K interior waypoints; only the interior waypoints are
// decision variables, flattened as (x1, y1, x2, y2, ...).
class Trajectory {
 public:
  Trajectory(Vec2 start, Vec2 goal, std::vector<Vec2> waypoints,
             double dt = 1.0);

  const Vec2& start() const { return start_; }
  const Vec2& goal() const { return goal_; }
  const std::vector<Vec2>& waypoints() const { return waypoints_; }
  double dt() const { return dt_; }
  int num_waypoints() const { return static_cast<int>(waypoints_.size()); }
  int dimension() const { return 2 * num_waypoints(); }

  Eigen::VectorXd Decision() const;
  // Same endpoints and dt, interior waypoints taken from `x`.
  Trajectory WithDecision(const Eigen::VectorXd& x) const;

  // start, waypoints..., goal.
  std::vector<Vec2> Polyline() const;

 private:
  Vec2 start_;
  Vec2 goal_;
  std::vector<Vec2> waypoints_;
  double dt_;
};

// K waypoints evenly spaced strictly between start and goal.
Trajectory StraightLineInit(const Vec2& start, const Vec2& goal, int K,
                            double dt = 1.0);

struct CostWeights {
  double w_d = 1.0;
  double w_c = 10.0;
  // Collision margin: the penalty is active while the clearance is below it.
  double epsilon = 0.8;

  static CostWeights Default() { return {1.0, 10.0, 0.8}; }
  static CostWeights Conservative() { return {1.0, 50.0, 0.8}; }
};

struct CostTerm {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

// Sum of squared second differences over the K interior points, divided by
// dt^4. Quadratic in the waypoints.
CostTerm SmoothnessCost(const Trajectory& t);

// Per-waypoint hinge c(d) = (d - eps)^2 / (2 eps) for d < eps, else 0, where d
// is the signed distance at the waypoint.
double CollisionPenalty(double d, double epsilon);
CostTerm CollisionCost(const Trajectory& t, const EnvironmentMap& map,
                       double epsilon);

class CostModel {
 public:
  CostModel(CostWeights weights, EnvironmentMap map);

  const CostWeights& weights() const { return weights_; }
  const EnvironmentMap& map() const { return map_; }

  // w_d * smoothness + w_c * collision.
  CostTerm Evaluate(const Trajectory& t) const;

  // Allocation-light evaluation on the flattened decision vector of a
  // trajectory with the same endpoints as `shape`. `gradient` may be null.
  double Evaluate(const Trajectory& shape, const Eigen::VectorXd& x,
                  Eigen::VectorXd* gradient) const;

 private:
  CostWeights weights_;
  EnvironmentMap map_;
};

// Value-and-gradient callback consumed by the solvers.
using Objective =
    std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

// Binds the model to the endpoints of `shape`. The model is copied.
Objective MakeObjective(const CostModel& model, const Trajectory& shape);

inline constexpr double kHessianStep = 1e-5;
inline constexpr int kMaxHessianDimension = 200;

// Central differences of the analytic gradient, symmetrised.
Eigen::MatrixXd Hessian(const CostModel& model, const Trajectory& t,
                        double step = kHessianStep);

// Header "start sx sy goal gx gy dt v", then one "x y" line per waypoint.
void WriteTrajectory(std::ostream& out, const Trajectory& t);
Trajectory ReadTrajectory(std::istream& in);

}  // namespace advplan

#endif  // ADVPLAN_PLANNER_H_
