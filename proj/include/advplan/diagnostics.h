#ifndef ADVPLAN_DIAGNOSTICS_H_
#define ADVPLAN_DIAGNOSTICS_H_

#include <iosfwd>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "advplan/env.h"
#include "advplan/planner.h"
#include "advplan/solver.h"

namespace advplan {

inline constexpr double kSymmetryTolerance = 1e-8;
inline constexpr double kJacobiTolerance = 1e-10;
// Below this the smallest |eigenvalue| counts as zero.
inline constexpr double kSingularFloor = 1e-12;
inline constexpr double kInfiniteCondition =
    std::numeric_limits<double>::infinity();

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
// Throws Error(kNonSymmetricInput) if |M - M'| exceeds kSymmetryTolerance
// (scaled by max(1, max|M|)).
std::vector<double> EigenSymmetric(const Eigen::MatrixXd& m);

struct SpectralReport {
  std::vector<double> eigenvalues;
  // max|lambda| / min|lambda|, or kInfiniteCondition when min|lambda| is
  // below kSingularFloor.
  double condition_number = 1.0;
  double min_abs_eig = 0.0;
};

SpectralReport ConditionNumber(const Eigen::MatrixXd& m);

// Condition number of the planner Hessian at `t`.
double HessianCondition(const CostModel& model, const Trajectory& t);

// Runs the solver and records, per accepted iterate, the condition number of
// the BFGS inverse-Hessian approximation into report.condition_numbers.
// Throws Error(kNotSupported) unless config.method is BFGS.
MinimizeResult MinimizeWithConditionTrace(const CostModel& model,
                                          const Trajectory& init,
                                          const SolverConfig& config);

enum class SweepOutcome { kSuccess, kFailure };

const char* ToString(SweepOutcome outcome);

struct SweepCell {
  Vec2 obstacle_position = Vec2::Zero();
  SweepOutcome outcome = SweepOutcome::kSuccess;
  int iterations = 0;
  double condition_number = 1.0;
};

struct SweepSetup {
  // Map and weights without the swept obstacle.
  CostModel base;
  Vec2 start;
  Vec2 goal;
  int num_waypoints = 20;
  double obstacle_radius = 2.0;
  SolverConfig solver;
};

// The 20 m corridor: empty 20x20 map, start (0,10), goal (20,10), K = 20,
// default weights, BFGS.
SweepSetup DefaultSweepSetup();

// One cell: place the obstacle at `position`, solve from the straight line,
// classify. Failure means the final polyline from start through the waypoints
// to goal crosses an obstacle, or the solve stopped without meeting grad_tol.
SweepCell EvaluateSweepCell(const SweepSetup& setup, const Vec2& position);

// G x G obstacle positions, row-major in y then x, spaced (bounds size) / G
// and anchored so that index (G/2, G/2) is the start-goal midpoint. The
// start-goal axis is therefore always sampled.
std::vector<SweepCell> ObstacleSweep(const SweepSetup& setup, int grid);

// Columns: cx,cy,outcome,iterations,kappa
void WriteSweepCsv(std::ostream& out, const std::vector<SweepCell>& cells);

}  // namespace advplan

#endif  // ADVPLAN_DIAGNOSTICS_H_
