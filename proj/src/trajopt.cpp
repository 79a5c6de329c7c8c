// Copyright 2026 The mgopt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trajopt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

namespace mgopt {

Trajectory Trajectory::constant(const Config& start, int n) {
  if (n < 2) throw std::invalid_argument("trajectory resolution must be >= 2");
  Trajectory t;
  t.start = start;
  t.waypoints = start.transpose().replicate(n, 1);
  return t;
}

SmoothnessOperator::SmoothnessOperator(int n, double dt) : n_(n), dt_(dt) {
  if (n < 2) throw std::invalid_argument("operator needs n >= 2");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  t_ = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    t_(i, i) = (i == n - 1) ? 1.0 : 2.0;  // free endpoint: last row differs
    if (i > 0) t_(i, i - 1) = -1.0;
    if (i + 1 < n) t_(i, i + 1) = -1.0;
  }
  t_inv_ = t_.ldlt().solve(Eigen::MatrixXd::Identity(n, n));
}

Eigen::MatrixXd SmoothnessOperator::apply_metric(const Eigen::MatrixXd& v) const {
  return (t_ * v) / dt_;
}

Eigen::MatrixXd SmoothnessOperator::apply_metric_inverse(const Eigen::MatrixXd& v) const {
  return dt_ * (t_inv_ * v);
}

double prior_cost(const Trajectory& traj) {
  const int n = traj.n();
  double sum = 0.0;
  sum += (traj.waypoints.row(0).transpose() - traj.start).squaredNorm();
  for (int i = 1; i < n; ++i) {
    sum += (traj.waypoints.row(i) - traj.waypoints.row(i - 1)).squaredNorm();
  }
  return sum / (2.0 * traj.dt());
}

Eigen::MatrixXd prior_gradient(const Trajectory& traj) {
  const int n = traj.n();
  SmoothnessOperator op(n, traj.dt());
  Eigen::MatrixXd grad = op.apply_metric(traj.waypoints);
  grad.row(0) -= traj.start.transpose() / traj.dt();
  return grad;
}

namespace {

struct TermDetail {
  int t;
  int point;
  double cost;        // workspace cost at x_t
  Vec3 grad;          // workspace cost gradient at x_t
  Vec3 delta;         // x_{t+1} - x_t
  double delta_norm;
  double value() const { return cost * delta_norm; }
};

std::vector<TermDetail> compute_terms(const Trajectory& traj, const SceneSdf& scene,
                                      const SerialChain& chain,
                                      const std::vector<BodyPoint>& body_points,
                                      const TargetPolicy& policy) {
  const int n = traj.n();
  std::vector<std::vector<Vec3>> positions(n + 1);
  std::vector<std::vector<Transform>> frames(n + 1);
  for (int k = 0; k <= n; ++k) {
    frames[k] = chain.forward_kinematics(traj.node(k));
    positions[k].reserve(body_points.size());
    for (const BodyPoint& u : body_points) {
      positions[k].push_back(chain.body_point_position(frames[k], u));
    }
  }
  std::vector<TermDetail> terms;
  terms.reserve(static_cast<std::size_t>(n) * body_points.size());
  for (int t = 0; t < n; ++t) {
    for (std::size_t j = 0; j < body_points.size(); ++j) {
      TermDetail term;
      term.t = t;
      term.point = static_cast<int>(j);
      const Vec3& x = positions[t][j];
      const bool with_target = policy.include_target(body_points[j], x);
      const WorkspaceCost wc = workspace_cost_and_gradient(scene, x, with_target);
      term.cost = wc.cost;
      term.grad = wc.gradient;
      term.delta = positions[t + 1][j] - x;
      term.delta_norm = term.delta.norm();
      terms.push_back(term);
    }
  }
  return terms;
}

}  // namespace

std::vector<ObstacleTerm> obstacle_terms(const Trajectory& traj, const SceneSdf& scene,
                                         const SerialChain& chain,
                                         const std::vector<BodyPoint>& body_points,
                                         const TargetPolicy& policy) {
  std::vector<ObstacleTerm> out;
  for (const TermDetail& t : compute_terms(traj, scene, chain, body_points, policy)) {
    out.push_back(ObstacleTerm{t.t, t.point, t.value()});
  }
  return out;
}

double obstacle_cost(const Trajectory& traj, const SceneSdf& scene,
                     const SerialChain& chain,
                     const std::vector<BodyPoint>& body_points,
                     const TargetPolicy& policy) {
  double sum = 0.0;
  for (const TermDetail& t : compute_terms(traj, scene, chain, body_points, policy)) {
    sum += t.value();
  }
  return sum;
}

Eigen::MatrixXd obstacle_gradient(const Trajectory& traj, const SceneSdf& scene,
                                  const SerialChain& chain,
                                  const std::vector<BodyPoint>& body_points,
                                  int worst_points, const TargetPolicy& policy) {
  if (worst_points < 1) throw std::invalid_argument("worst_points must be >= 1");
  const int n = traj.n();
  const int d = traj.dof();
  std::vector<TermDetail> terms = compute_terms(traj, scene, chain, body_points, policy);

  // Keep only the worst terms; the selection is frozen for this call.
  std::vector<int> order(terms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  if (static_cast<int>(terms.size()) > worst_points) {
    std::nth_element(order.begin(), order.begin() + worst_points, order.end(),
                     [&](int a, int b) {
                       if (terms[a].value() != terms[b].value())
                         return terms[a].value() > terms[b].value();
                       return a < b;
                     });
    order.resize(worst_points);
  }

  // Jacobians are needed at the two nodes each selected term touches; they
  // are cached per (node, body point).
  std::vector<std::vector<Transform>> frames(n + 1);
  auto frames_at = [&](int k) -> const std::vector<Transform>& {
    if (frames[k].empty()) frames[k] = chain.forward_kinematics(traj.node(k));
    return frames[k];
  };

  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, d);
  for (int idx : order) {
    const TermDetail& term = terms[idx];
    if (term.cost == 0.0 || term.delta_norm < 1e-12) continue;
    const BodyPoint& u = body_points[term.point];
    const Vec3 delta_hat = term.delta / term.delta_norm;
    // d/dx_t [ c(x_t) |x_{t+1} - x_t| ] and the matching x_{t+1} part.
    const Vec3 w_t = term.delta_norm * term.grad - term.cost * delta_hat;
    const Vec3 w_next = term.cost * delta_hat;
    if (term.t >= 1) {
      const Eigen::MatrixXd jac = chain.point_jacobian(frames_at(term.t), u);
      grad.row(term.t - 1) += (jac.transpose() * w_t).transpose();
    }
    const Eigen::MatrixXd jac = chain.point_jacobian(frames_at(term.t + 1), u);
    grad.row(term.t) += (jac.transpose() * w_next).transpose();
  }
  return grad;
}

double motion_cost(const Trajectory& traj, const SceneSdf& scene,
                   const SerialChain& chain,
                   const std::vector<BodyPoint>& body_points, double lambda,
                   const TargetPolicy& policy) {
  return obstacle_cost(traj, scene, chain, body_points, policy) +
         lambda * prior_cost(traj);
}

Eigen::MatrixXd motion_gradient(const Trajectory& traj, const SceneSdf& scene,
                                const SerialChain& chain,
                                const std::vector<BodyPoint>& body_points,
                                const MotionObjectiveConfig& cfg,
                                const TargetPolicy& policy) {
  return obstacle_gradient(traj, scene, chain, body_points, cfg.worst_points, policy) +
         cfg.lambda * prior_gradient(traj);
}

Trajectory chomp_step(const Trajectory& traj, const Eigen::MatrixXd& v,
                      double eta_motion, const SmoothnessOperator& op) {
  if (!(eta_motion > 0.0)) throw std::invalid_argument("eta_motion must be positive");
  Trajectory out = traj;
  out.waypoints -= op.apply_metric_inverse(v) / eta_motion;
  return out;
}

Trajectory chomp_proj_step(const Trajectory& traj, const Config& goal,
                           const Eigen::MatrixXd& v, double eta_motion,
                           const SmoothnessOperator& op) {
  if (!(eta_motion > 0.0)) throw std::invalid_argument("eta_motion must be positive");
  const int n = traj.n();
  if (goal.size() != traj.dof())
    throw std::invalid_argument("goal dimension does not match trajectory");

  // With C selecting the final waypoint block, C A^{-1} C^T reduces to the
  // corner entry of A^{-1} times the identity, so the projection collapses to
  // rank-one updates along the last column of T^{-1}.
  const Eigen::VectorXd u_col = op.metric_inverse().col(n - 1);
  const double corner = u_col[n - 1];
  if (!(corner > 0.0)) throw std::runtime_error("metric corner must be positive for SPD A");

  const Eigen::MatrixXd smoothed = op.apply_metric_inverse(v);  // A^{-1} v
  const Eigen::RowVectorXd tail_row = smoothed.row(n - 1);      // C A^{-1} v
  const Eigen::RowVectorXd residual =
      traj.waypoints.row(n - 1) - goal.transpose();             // b = xi(1) - g

  Trajectory out = traj;
  out.waypoints -= smoothed / eta_motion;
  out.waypoints += (u_col / (eta_motion * corner)) * tail_row;
  out.waypoints -= (u_col / corner) * residual;
  // The constraint is linear in xi, so the projection is exact; pin the
  // endpoint to remove the last bits of roundoff.
  out.waypoints.row(n - 1) = goal.transpose();
  return out;
}

std::vector<Config> interpolate(const Trajectory& traj, int steps) {
  if (steps < 2) throw std::invalid_argument("interpolation needs at least 2 steps");
  const int n = traj.n();  // segment count over the node polyline
  std::vector<Config> out;
  out.reserve(steps);
  for (int j = 0; j < steps; ++j) {
    const double s = static_cast<double>(j) / (steps - 1) * n;
    int seg = std::min(static_cast<int>(s), n - 1);
    const double frac = s - seg;
    const Config a = traj.node(seg);
    const Config b = traj.node(seg + 1);
    out.push_back(a + frac * (b - a));
  }
  return out;
}

}  // namespace mgopt
