#include "advplan/solver.h"

#include <algorithm>
#include <cmath>

#include "advplan/error.h"

namespace advplan {
namespace {

bool Finite(double value, const Eigen::VectorXd& gradient) {
  return std::isfinite(value) && gradient.allFinite();
}

// Relative to |s| |y| so that short steps late in a solve still update.
bool CurvatureOk(const Eigen::VectorXd& s, const Eigen::VectorXd& y,
                 double min_curvature) {
  return s.dot(y) > min_curvature * s.norm() * y.norm();
}

}  // namespace

const char* ToString(Method method) {
  switch (method) {
    case Method::kGradientDescent:
      return "gd";
    case Method::kBfgs:
      return "bfgs";
    case Method::kLbfgs:
      return "lbfgs";
  }
  return "unknown";
}

Method ParseMethod(const std::string& text) {
  if (text == "gd") return Method::kGradientDescent;
  if (text == "bfgs") return Method::kBfgs;
  if (text == "lbfgs") return Method::kLbfgs;
  throw Error(ErrorCode::kConfig, "unknown solver method '" + text + "'");
}

const char* ToString(SolverStatus status) {
  switch (status) {
    case SolverStatus::kConverged:
      return "converged";
    case SolverStatus::kMaxIterations:
      return "max-iterations";
    case SolverStatus::kLineSearchFailed:
      return "line-search-failed";
    case SolverStatus::kNonfiniteObjective:
      return "nonfinite-objective";
    case SolverStatus::kStalled:
      return "stalled";
  }
  return "unknown";
}

void SolverConfig::Validate() const {
  if (max_iters < 1 || !(grad_tol > 0.0) || lbfgs_memory < 1 ||
      !(armijo_c > 0.0 && armijo_c < 1.0) ||
      !(backtrack_factor > 0.0 && backtrack_factor < 1.0) ||
      !(initial_step > 0.0) || max_backtracks < 1 || !(value_tol >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid solver config");
  }
}

BfgsInverseHessian::BfgsInverseHessian(int n, double min_curvature)
    : h_(Eigen::MatrixXd::Identity(n, n)), min_curvature_(min_curvature) {}

bool BfgsInverseHessian::Update(const Eigen::VectorXd& s,
                                const Eigen::VectorXd& y) {
  const double sy = s.dot(y);
  if (!CurvatureOk(s, y, min_curvature_)) return false;
  const double rho = 1.0 / sy;
  // H+ = (I - rho s y') H (I - rho y s') + rho s s', expanded.
  const Eigen::VectorXd hy = h_ * y;
  const double yhy = y.dot(hy);
  h_ += (rho * rho * yhy + rho) * (s * s.transpose()) -
        rho * (hy * s.transpose() + s * hy.transpose());
  // Rounding can leave tiny asymmetries; keep the matrix exactly symmetric.
  h_ = 0.5 * (h_ + h_.transpose()).eval();
  ++updates_;
  return true;
}

void BfgsInverseHessian::Reset() {
  h_.setIdentity();
  updates_ = 0;
}

Minimizer::Minimizer(Objective objective, int dimension, SolverConfig config)
    : objective_(std::move(objective)),
      dimension_(dimension),
      config_(config),
      inverse_hessian_(config.method == Method::kBfgs ? dimension : 0,
                       config.min_curvature) {
  config_.Validate();
}

const Eigen::MatrixXd& Minimizer::InverseHessian() const {
  if (config_.method != Method::kBfgs) {
    throw Error(ErrorCode::kNotSupported,
                std::string("inverse Hessian is not maintained by ") +
                    ToString(config_.method));
  }
  return inverse_hessian_.matrix();
}

Eigen::VectorXd Minimizer::Direction(const Eigen::VectorXd& gradient) const {
  switch (config_.method) {
    case Method::kGradientDescent:
      return -gradient;
    case Method::kBfgs:
      return -(inverse_hessian_.matrix() * gradient);
    case Method::kLbfgs: {
      // Two-loop recursion.
      Eigen::VectorXd q = gradient;
      std::vector<double> alpha(history_.size());
      for (int i = static_cast<int>(history_.size()) - 1; i >= 0; --i) {
        const auto& [s, y] = history_[i];
        alpha[i] = s.dot(q) / y.dot(s);
        q -= alpha[i] * y;
      }
      if (!history_.empty()) {
        const auto& [s, y] = history_.back();
        q *= s.dot(y) / y.squaredNorm();
      }
      for (int i = 0; i < static_cast<int>(history_.size()); ++i) {
        const auto& [s, y] = history_[i];
        const double beta = y.dot(q) / y.dot(s);
        q += (alpha[i] - beta) * s;
      }
      return -q;
    }
  }
  return -gradient;
}

void Minimizer::Absorb(const Eigen::VectorXd& s, const Eigen::VectorXd& y) {
  if (config_.method == Method::kBfgs) {
    inverse_hessian_.Update(s, y);
  } else if (config_.method == Method::kLbfgs) {
    if (!CurvatureOk(s, y, config_.min_curvature)) return;
    history_.emplace_back(s, y);
    while (static_cast<int>(history_.size()) > config_.lbfgs_memory) {
      history_.pop_front();
    }
  }
}

void Minimizer::Notify(int iteration, const Eigen::VectorXd& x, double value,
                       const Eigen::VectorXd& gradient) const {
  if (!observer_) return;
  IterationInfo info;
  info.iteration = iteration;
  info.x = &x;
  info.value = value;
  info.gradient = &gradient;
  if (config_.method == Method::kBfgs) {
    info.inverse_hessian = &inverse_hessian_.matrix();
  }
  observer_(info);
}

SolverReport Minimizer::Run(const Eigen::VectorXd& x0) {
  if (x0.size() != dimension_) {
    throw Error(ErrorCode::kInvalidArgument, "initial point size mismatch");
  }
  inverse_hessian_.Reset();
  history_.clear();

  SolverReport report;
  Eigen::VectorXd x = x0;
  Eigen::VectorXd g(dimension_);
  double f = objective_(x, &g);
  report.iterates.push_back(x);
  report.values.push_back(f);
  report.final_value = f;
  report.final_grad_norm = g.norm();
  if (!Finite(f, g)) {
    report.status = SolverStatus::kNonfiniteObjective;
    return report;
  }
  Notify(0, x, f, g);

  Eigen::VectorXd x_trial(dimension_), g_trial(dimension_);
  while (true) {
    if (g.norm() <= config_.grad_tol) {
      report.status = SolverStatus::kConverged;
      report.converged = true;
      break;
    }
    if (report.iterations >= config_.max_iters) {
      report.status = SolverStatus::kMaxIterations;
      break;
    }

    Eigen::VectorXd p = Direction(g);
    double slope = g.dot(p);
    if (!(slope < 0.0)) {
      // Lost descent; restart from steepest descent.
      inverse_hessian_.Reset();
      history_.clear();
      p = -g;
      slope = -g.squaredNorm();
    }

    double step = config_.initial_step;
    bool accepted = false;
    double f_trial = f;
    for (int k = 0; k < config_.max_backtracks; ++k) {
      x_trial = x + step * p;
      f_trial = objective_(x_trial, nullptr);
      if (!std::isfinite(f_trial)) {
        report.status = SolverStatus::kNonfiniteObjective;
        report.final_value = f_trial;
        return report;
      }
      if (f_trial <= f + config_.armijo_c * step * slope) {
        accepted = true;
        break;
      }
      // Minimiser of the quadratic through f(0), f'(0) and f(step), kept
      // within [0.1, backtrack_factor] of the rejected step.
      const double curvature = f_trial - f - slope * step;
      double next = config_.backtrack_factor * step;
      if (curvature > 0.0) {
        next = std::clamp(-slope * step * step / (2.0 * curvature),
                          0.1 * step, config_.backtrack_factor * step);
      }
      step = next;
    }
    if (!accepted) {
      report.status = SolverStatus::kLineSearchFailed;
      break;
    }
    f_trial = objective_(x_trial, &g_trial);
    if (!Finite(f_trial, g_trial)) {
      report.status = SolverStatus::kNonfiniteObjective;
      report.final_value = f_trial;
      return report;
    }
    {
      // One secant step on the directional derivative; taken only if it
      // lowers the value. Exact on quadratic objectives.
      const double slope_trial = g_trial.dot(p);
      if (slope_trial - slope > 0.0) {
        const double refined = -slope * step / (slope_trial - slope);
        if (std::abs(refined - step) > 1e-12 * step) {
          const Eigen::VectorXd x_refined = x + refined * p;
          Eigen::VectorXd g_refined(dimension_);
          const double f_refined = objective_(x_refined, &g_refined);
          if (Finite(f_refined, g_refined) && f_refined <= f_trial &&
              f_refined <= f + config_.armijo_c * refined * slope) {
            x_trial = x_refined;
            g_trial.swap(g_refined);
            f_trial = f_refined;
          }
        }
      }
    }
    Absorb(x_trial - x, g_trial - g);
    const bool stalled =
        f - f_trial <= config_.value_tol * std::abs(f);
    x.swap(x_trial);
    g.swap(g_trial);
    f = f_trial;
    ++report.iterations;
    report.iterates.push_back(x);
    report.values.push_back(f);
    report.final_value = f;
    report.final_grad_norm = g.norm();
    Notify(report.iterations, x, f, g);
    if (stalled && g.norm() > config_.grad_tol) {
      report.status = SolverStatus::kStalled;
      break;
    }
  }
  report.final_value = f;
  report.final_grad_norm = g.norm();
  return report;
}

MinimizeResult Minimize(const CostModel& model, const Trajectory& init,
                        const SolverConfig& config,
                        IterationObserver observer) {
  Minimizer minimizer(MakeObjective(model, init), init.dimension(), config);
  if (observer) minimizer.set_observer(std::move(observer));
  SolverReport report = minimizer.Run(init.Decision());
  // Armijo acceptance makes the last accepted iterate the best one.
  Trajectory best = init.WithDecision(report.iterates.back());
  return {std::move(best), std::move(report)};
}

}  // namespace advplan
