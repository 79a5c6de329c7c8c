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

#ifndef MGOPT_TRAJOPT_HPP
#define MGOPT_TRAJOPT_HPP

#include <vector>

#include "chain.hpp"
#include "scene.hpp"

namespace mgopt {

/// Discretized trajectory: a fixed start configuration and n free waypoints
/// q_1..q_n, the last of which is the variable endpoint. Time is normalized
/// with step 1/(n+1).
struct Trajectory {
  Config start;
  Eigen::MatrixXd waypoints;  // n x d

  int n() const { return static_cast<int>(waypoints.rows()); }
  int dof() const { return static_cast<int>(start.size()); }
  double dt() const { return 1.0 / (n() + 1); }

  Config waypoint(int i) const { return waypoints.row(i).transpose(); }
  Config endpoint() const { return waypoints.row(n() - 1).transpose(); }
  /// State at node index k in 0..n, where node 0 is the start.
  Config node(int k) const {
    return k == 0 ? start : Config(waypoints.row(k - 1).transpose());
  }

  static Trajectory constant(const Config& start, int n);
};

/// Finite-differencing metric for a start-pinned, free-endpoint trajectory.
/// A = K^T K factors as (1/dt) T (x) I_d with T the n x n second-difference
/// matrix whose last diagonal entry is 1; everything is precomputed per n.
class SmoothnessOperator {
 public:
  SmoothnessOperator(int n, double dt);

  int n() const { return n_; }
  double dt() const { return dt_; }
  const Eigen::MatrixXd& metric() const { return t_; }          // T
  const Eigen::MatrixXd& metric_inverse() const { return t_inv_; }

  /// A v, applied to an n x d stack of waypoint rows.
  Eigen::MatrixXd apply_metric(const Eigen::MatrixXd& v) const;
  /// A^{-1} v.
  Eigen::MatrixXd apply_metric_inverse(const Eigen::MatrixXd& v) const;

 private:
  int n_;
  double dt_;
  Eigen::MatrixXd t_;
  Eigen::MatrixXd t_inv_;
};

double prior_cost(const Trajectory& traj);
Eigen::MatrixXd prior_gradient(const Trajectory& traj);

/// Controls how the target object participates in trajectory costs: gripper
/// points within `radius` of the final end-effector position ignore it, so a
/// grasping endpoint is not scored as a collision. Arm links always see it.
struct TargetPolicy {
  bool exclude_near_goal = false;
  Vec3 goal_ee_position = Vec3::Zero();
  double radius = 0.0;

  bool include_target(const BodyPoint& u, const Vec3& x_world) const {
    if (!exclude_near_goal || !u.on_gripper) return true;
    return (x_world - goal_ee_position).squaredNorm() > radius * radius;
  }

  static TargetPolicy include_always() { return TargetPolicy{}; }
  static TargetPolicy near_goal(const Vec3& ee, double radius) {
    return TargetPolicy{true, ee, radius};
  }
};

struct MotionObjectiveConfig {
  double lambda = 0.1;       // smoothness weight
  double eta_motion = 0.2;   // covariant step divisor: step is (1/eta) A^{-1} v
  int worst_points = 500;    // gradient truncation
};

/// One summand of the discretized obstacle functional: body point `point` on
/// the segment from node t to node t+1.
struct ObstacleTerm {
  int t = 0;      // node index, 0 = start
  int point = 0;  // index into the body point list
  double value = 0.0;
};

std::vector<ObstacleTerm> obstacle_terms(const Trajectory& traj, const SceneSdf& scene,
                                         const SerialChain& chain,
                                         const std::vector<BodyPoint>& body_points,
                                         const TargetPolicy& policy);

double obstacle_cost(const Trajectory& traj, const SceneSdf& scene,
                     const SerialChain& chain,
                     const std::vector<BodyPoint>& body_points,
                     const TargetPolicy& policy = TargetPolicy::include_always());

/// Exact gradient of the discretized obstacle cost, accumulated only over the
/// `worst_points` largest terms (frozen within the call).
Eigen::MatrixXd obstacle_gradient(const Trajectory& traj, const SceneSdf& scene,
                                  const SerialChain& chain,
                                  const std::vector<BodyPoint>& body_points,
                                  int worst_points,
                                  const TargetPolicy& policy = TargetPolicy::include_always());

double motion_cost(const Trajectory& traj, const SceneSdf& scene,
                   const SerialChain& chain,
                   const std::vector<BodyPoint>& body_points, double lambda,
                   const TargetPolicy& policy = TargetPolicy::include_always());

Eigen::MatrixXd motion_gradient(const Trajectory& traj, const SceneSdf& scene,
                                const SerialChain& chain,
                                const std::vector<BodyPoint>& body_points,
                                const MotionObjectiveConfig& cfg,
                                const TargetPolicy& policy = TargetPolicy::include_always());

/// Unconstrained covariant update xi - (1/eta) A^{-1} v.
Trajectory chomp_step(const Trajectory& traj, const Eigen::MatrixXd& v,
                      double eta_motion, const SmoothnessOperator& op);

/// Covariant update projected onto the endpoint constraint xi(1) = g. The
/// constraint is linear, so the returned endpoint equals g exactly.
Trajectory chomp_proj_step(const Trajectory& traj, const Config& goal,
                           const Eigen::MatrixXd& v, double eta_motion,
                           const SmoothnessOperator& op);

/// Piecewise-linear resampling of the node polyline (start plus waypoints)
/// to `steps` configurations including both endpoints.
std::vector<Config> interpolate(const Trajectory& traj, int steps);

}  // namespace mgopt

#endif  // MGOPT_TRAJOPT_HPP
