#include "advplan/planner.h"

#include <cmath>
#include <cstdio>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include "advplan/error.h"

namespace advplan {
namespace {

Vec2 PointAt(const Trajectory& shape, const Eigen::VectorXd& x, int i) {
  // i in [0, K+1]; 0 and K+1 are the fixed endpoints.
  const int K = shape.num_waypoints();
  if (i == 0) return shape.start();
  if (i == K + 1) return shape.goal();
  return Vec2(x[2 * (i - 1)], x[2 * (i - 1) + 1]);
}

double SmoothnessImpl(const Trajectory& shape, const Eigen::VectorXd& x,
                      double scale, Eigen::VectorXd* gradient) {
  const int K = shape.num_waypoints();
  const double inv_dt4 = 1.0 / std::pow(shape.dt(), 4);
  std::vector<Vec2> accel(K + 2, Vec2::Zero());
  double value = 0.0;
  for (int i = 1; i <= K; ++i) {
    accel[i] = PointAt(shape, x, i + 1) - 2.0 * PointAt(shape, x, i) +
               PointAt(shape, x, i - 1);
    value += accel[i].squaredNorm();
  }
  if (gradient != nullptr) {
    const double c = 2.0 * inv_dt4 * scale;
    for (int j = 1; j <= K; ++j) {
      // accel[0] and accel[K+1] stay zero, which drops the missing terms.
      const Vec2 g = accel[j - 1] - 2.0 * accel[j] + accel[j + 1];
      (*gradient)[2 * (j - 1)] += c * g.x();
      (*gradient)[2 * (j - 1) + 1] += c * g.y();
    }
  }
  return scale * value * inv_dt4;
}

double CollisionImpl(const Trajectory& shape, const Eigen::VectorXd& x,
                     const EnvironmentMap& map, double epsilon, double scale,
                     Eigen::VectorXd* gradient) {
  const int K = shape.num_waypoints();
  double value = 0.0;
  for (int i = 1; i <= K; ++i) {
    const DistanceQuery q = SignedDistance(map, PointAt(shape, x, i));
    if (q.distance >= epsilon) continue;
    const double gap = q.distance - epsilon;
    value += gap * gap / (2.0 * epsilon);
    if (gradient != nullptr) {
      const Vec2 g = (scale * gap / epsilon) * q.gradient;
      (*gradient)[2 * (i - 1)] += g.x();
      (*gradient)[2 * (i - 1) + 1] += g.y();
    }
  }
  return scale * value;
}

}  // namespace

Trajectory::Trajectory(Vec2 start, Vec2 goal, std::vector<Vec2> waypoints,
                       double dt)
    : start_(std::move(start)),
      goal_(std::move(goal)),
      waypoints_(std::move(waypoints)),
      dt_(dt) {
  if (waypoints_.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "trajectory needs at least one interior waypoint");
  }
  if (!(dt_ > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  }
}

Eigen::VectorXd Trajectory::Decision() const {
  Eigen::VectorXd x(dimension());
  for (int i = 0; i < num_waypoints(); ++i) {
    x.segment<2>(2 * i) = waypoints_[i];
  }
  return x;
}

Trajectory Trajectory::WithDecision(const Eigen::VectorXd& x) const {
  if (x.size() != dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "decision vector size mismatch");
  }
  std::vector<Vec2> waypoints(num_waypoints());
  for (int i = 0; i < num_waypoints(); ++i) {
    waypoints[i] = x.segment<2>(2 * i);
  }
  return Trajectory(start_, goal_, std::move(waypoints), dt_);
}

std::vector<Vec2> Trajectory::Polyline() const {
  std::vector<Vec2> points;
  points.reserve(waypoints_.size() + 2);
  points.push_back(start_);
  points.insert(points.end(), waypoints_.begin(), waypoints_.end());
  points.push_back(goal_);
  return points;
}

Trajectory StraightLineInit(const Vec2& start, const Vec2& goal, int K,
                            double dt) {
  if (K < 1) {
    throw Error(ErrorCode::kInvalidArgument, "K must be at least 1");
  }
  std::vector<Vec2> waypoints(K);
  for (int i = 0; i < K; ++i) {
    const double s = static_cast<double>(i + 1) / (K + 1);
    waypoints[i] = start + s * (goal - start);
  }
  return Trajectory(start, goal, std::move(waypoints), dt);
}

CostTerm SmoothnessCost(const Trajectory& t) {
  CostTerm term;
  term.gradient = Eigen::VectorXd::Zero(t.dimension());
  term.value = SmoothnessImpl(t, t.Decision(), 1.0, &term.gradient);
  return term;
}

double CollisionPenalty(double d, double epsilon) {
  if (d >= epsilon) return 0.0;
  return (d - epsilon) * (d - epsilon) / (2.0 * epsilon);
}

CostTerm CollisionCost(const Trajectory& t, const EnvironmentMap& map,
                       double epsilon) {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  CostTerm term;
  term.gradient = Eigen::VectorXd::Zero(t.dimension());
  term.value = CollisionImpl(t, t.Decision(), map, epsilon, 1.0, &term.gradient);
  return term;
}

CostModel::CostModel(CostWeights weights, EnvironmentMap map)
    : weights_(weights), map_(std::move(map)) {
  if (weights_.w_d < 0.0 || weights_.w_c < 0.0 ||
      (weights_.w_d == 0.0 && weights_.w_c == 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "weights must be non-negative and not both zero");
  }
  if (!(weights_.epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
}

CostTerm CostModel::Evaluate(const Trajectory& t) const {
  CostTerm term;
  term.gradient = Eigen::VectorXd::Zero(t.dimension());
  term.value = Evaluate(t, t.Decision(), &term.gradient);
  return term;
}

double CostModel::Evaluate(const Trajectory& shape, const Eigen::VectorXd& x,
                           Eigen::VectorXd* gradient) const {
  if (gradient != nullptr) gradient->setZero(shape.dimension());
  double value = 0.0;
  if (weights_.w_d != 0.0) {
    value += SmoothnessImpl(shape, x, weights_.w_d, gradient);
  }
  if (weights_.w_c != 0.0) {
    value += CollisionImpl(shape, x, map_, weights_.epsilon, weights_.w_c,
                           gradient);
  }
  return value;
}

Objective MakeObjective(const CostModel& model, const Trajectory& shape) {
  auto bound = std::make_shared<const std::pair<CostModel, Trajectory>>(
      model, shape);
  return [bound](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    return bound->first.Evaluate(bound->second, x, grad);
  };
}

Eigen::MatrixXd Hessian(const CostModel& model, const Trajectory& t,
                        double step) {
  const int n = t.dimension();
  if (n > kMaxHessianDimension) {
    throw Error(ErrorCode::kInvalidArgument,
                "Hessian dimension exceeds " +
                    std::to_string(kMaxHessianDimension));
  }
  Eigen::MatrixXd H(n, n);
  Eigen::VectorXd x = t.Decision();
  Eigen::VectorXd g_plus(n), g_minus(n);
  for (int j = 0; j < n; ++j) {
    const double saved = x[j];
    x[j] = saved + step;
    model.Evaluate(t, x, &g_plus);
    x[j] = saved - step;
    model.Evaluate(t, x, &g_minus);
    x[j] = saved;
    H.col(j) = (g_plus - g_minus) / (2.0 * step);
  }
  return 0.5 * (H + H.transpose());
}

void WriteTrajectory(std::ostream& out, const Trajectory& t) {
  char line[200];
  std::snprintf(line, sizeof(line),
                "start %.17g %.17g goal %.17g %.17g dt %.17g\n", t.start().x(),
                t.start().y(), t.goal().x(), t.goal().y(), t.dt());
  out << line;
  for (const Vec2& p : t.waypoints()) {
    std::snprintf(line, sizeof(line), "%.17g %.17g\n", p.x(), p.y());
    out << line;
  }
}

Trajectory ReadTrajectory(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw Error(ErrorCode::kIo, "empty trajectory stream");
  }
  std::istringstream hs(header);
  std::string t_start, t_goal, t_dt;
  Vec2 start, goal;
  double dt = 0.0;
  if (!(hs >> t_start >> start.x() >> start.y() >> t_goal >> goal.x() >>
        goal.y() >> t_dt >> dt) ||
      t_start != "start" || t_goal != "goal" || t_dt != "dt") {
    throw Error(ErrorCode::kIo, "malformed trajectory header '" + header + "'");
  }
  std::vector<Vec2> waypoints;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    Vec2 p;
    if (!(ls >> p.x() >> p.y())) {
      throw Error(ErrorCode::kIo, "malformed waypoint line '" + line + "'");
    }
    waypoints.push_back(p);
  }
  return Trajectory(start, goal, std::move(waypoints), dt);
}

}  // namespace advplan
