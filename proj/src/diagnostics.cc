#include "advplan/diagnostics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "advplan/error.h"

namespace advplan {
namespace {

constexpr int kMaxJacobiSweeps = 100;

double OffDiagonalNorm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    for (int i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

// Zeroes a(p, q) with one symmetric rotation.
void Rotate(Eigen::MatrixXd& a, int p, int q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const int n = static_cast<int>(a.rows());
  for (int k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = a(p, k) = c * akp - s * akq;
    a(k, q) = a(q, k) = s * akp + c * akq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;
}

}  // namespace

std::vector<double> EigenSymmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kNonSymmetricInput, "matrix is not square");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
    throw Error(ErrorCode::kNonSymmetricInput,
                "asymmetry exceeds tolerance");
  }
  Eigen::MatrixXd a = 0.5 * (m + m.transpose());
  const int n = static_cast<int>(a.rows());
  // Absolute for well-scaled inputs, relative for large ones.
  const double tol = kJacobiTolerance * std::max(1.0, a.norm());
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    if (OffDiagonalNorm(a) < tol) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) Rotate(a, p, q);
    }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

SpectralReport ConditionNumber(const Eigen::MatrixXd& m) {
  SpectralReport report;
  report.eigenvalues = EigenSymmetric(m);
  if (report.eigenvalues.empty()) return report;
  double max_abs = 0.0;
  double min_abs = std::numeric_limits<double>::infinity();
  for (double e : report.eigenvalues) {
    max_abs = std::max(max_abs, std::abs(e));
    min_abs = std::min(min_abs, std::abs(e));
  }
  report.min_abs_eig = min_abs;
  report.condition_number =
      min_abs > kSingularFloor ? max_abs / min_abs : kInfiniteCondition;
  return report;
}

double HessianCondition(const CostModel& model, const Trajectory& t) {
  return ConditionNumber(Hessian(model, t)).condition_number;
}

MinimizeResult MinimizeWithConditionTrace(const CostModel& model,
                                          const Trajectory& init,
                                          const SolverConfig& config) {
  if (config.method != Method::kBfgs) {
    throw Error(ErrorCode::kNotSupported,
                "condition trace needs the BFGS inverse Hessian");
  }
  std::vector<double> trace;
  MinimizeResult result =
      Minimize(model, init, config, [&trace](const IterationInfo& info) {
        trace.push_back(
            ConditionNumber(*info.inverse_hessian).condition_number);
      });
  result.report.condition_numbers = std::move(trace);
  return result;
}

const char* ToString(SweepOutcome outcome) {
  return outcome == SweepOutcome::kSuccess ? "success" : "failure";
}

SweepSetup DefaultSweepSetup() {
  Bounds bounds;
  return SweepSetup{CostModel(CostWeights::Default(), EnvironmentMap(bounds)),
                    Vec2(0.0, 10.0),
                    Vec2(20.0, 10.0),
                    20,
                    2.0,
                    SolverConfig{}};
}

SweepCell EvaluateSweepCell(const SweepSetup& setup, const Vec2& position) {
  const EnvironmentMap& base = setup.base.map();
  std::vector<Obstacle> obstacles = base.obstacles();
  obstacles.push_back(Obstacle{position, setup.obstacle_radius});
  const CostModel model(setup.base.weights(),
                        EnvironmentMap(base.bounds(), std::move(obstacles)));
  const Trajectory init =
      StraightLineInit(setup.start, setup.goal, setup.num_waypoints);
  const MinimizeResult result = Minimize(model, init, setup.solver);

  SweepCell cell;
  cell.obstacle_position = position;
  cell.iterations = result.report.iterations;
  bool failed = !result.report.converged;
  // Waypoints can straddle the obstacle, so the whole polyline is checked.
  const Trajectory& t = result.trajectory;
  Vec2 previous = t.start();
  for (const Vec2& p : t.waypoints()) {
    if (SegmentClearance(model.map(), previous, p) < 0.0) failed = true;
    previous = p;
  }
  if (SegmentClearance(model.map(), previous, t.goal()) < 0.0) failed = true;
  cell.outcome = failed ? SweepOutcome::kFailure : SweepOutcome::kSuccess;
  cell.condition_number = HessianCondition(model, result.trajectory);
  return cell;
}

std::vector<SweepCell> ObstacleSweep(const SweepSetup& setup, int grid) {
  if (grid < 2) {
    throw Error(ErrorCode::kInvalidArgument, "sweep grid must be at least 2");
  }
  const Bounds& b = setup.base.map().bounds();
  const Vec2 cell_size = (b.max - b.min) / grid;
  const Vec2 mid = 0.5 * (setup.start + setup.goal);
  std::vector<SweepCell> cells;
  cells.reserve(grid * grid);
  for (int iy = 0; iy < grid; ++iy) {
    for (int ix = 0; ix < grid; ++ix) {
      const Vec2 position =
          mid + Vec2((ix - grid / 2) * cell_size.x(),
                     (iy - grid / 2) * cell_size.y());
      cells.push_back(EvaluateSweepCell(setup, position));
    }
  }
  return cells;
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepCell>& cells) {
  out << "cx,cy,outcome,iterations,kappa\n";
  char line[160];
  for (const SweepCell& c : cells) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%s,%d,%.17g\n",
                  c.obstacle_position.x(), c.obstacle_position.y(),
                  ToString(c.outcome), c.iterations, c.condition_number);
    out << line;
  }
}

}  // namespace advplan
