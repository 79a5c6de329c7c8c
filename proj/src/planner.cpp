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

#include "planner.hpp"

#include <chrono>
#include <cmath>

namespace mgopt {

const char* selector_name(Selector s) {
  switch (s) {
    case Selector::kFixed: return "fixed";
    case Selector::kProj: return "proj";
    case Selector::kFtc: return "ftc";
    case Selector::kFtl: return "ftl";
    case Selector::kExp: return "exp";
    case Selector::kMd: return "md";
  }
  return "unknown";
}

bool selector_from_name(const std::string& name, Selector& out) {
  for (Selector s : {Selector::kFixed, Selector::kProj, Selector::kFtc,
                     Selector::kFtl, Selector::kExp, Selector::kMd}) {
    if (name == selector_name(s)) {
      out = s;
      return true;
    }
  }
  return false;
}

const char* plan_status_name(PlanStatus s) {
  switch (s) {
    case PlanStatus::kConverged: return "converged";
    case PlanStatus::kHorizonExhausted: return "horizon_exhausted";
    case PlanStatus::kNoFeasibleGoal: return "no_feasible_goal";
  }
  return "unknown";
}

Trajectory init_trajectory(const Config& q_start, const Config& g0, int n) {
  if (q_start.size() != g0.size())
    throw std::invalid_argument("start/goal dimension mismatch");
  Trajectory traj;
  traj.start = q_start;
  traj.waypoints.resize(n, q_start.size());
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double s = t * t * (3.0 - 2.0 * t);  // smoothstep: zero end velocities
    traj.waypoints.row(i - 1) = (q_start + s * (g0 - q_start)).transpose();
  }
  return traj;
}

int initial_goal(const GoalSet& goals, const SceneSdf& scene, const SerialChain& chain,
                 const std::vector<BodyPoint>& body_points, const Config& q_start,
                 const PlannerConfig& cfg) {
  const Trajectory traj = Trajectory::constant(q_start, cfg.resolution);
  const Eigen::VectorXd c =
      estimate_goal_costs(traj, 0, std::max(cfg.horizon, 1), goals, scene, chain,
                          body_points, cfg.motion.lambda);
  return select_goal(ftc_update(c));
}

bool goal_update_guard(const SerialChain& chain, double cost_before, double cost_after,
                       const Config& refined) {
  if (!chain.within_limits(refined, 1e-12)) return false;
  return cost_after <= cost_before * 1.10 + 1e-12;
}

double min_clearance(const Trajectory& traj, const SceneSdf& scene,
                     const SerialChain& chain,
                     const std::vector<BodyPoint>& body_points,
                     const TargetPolicy& policy) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= traj.n(); ++k) {
    const auto frames = chain.forward_kinematics(traj.node(k));
    for (const BodyPoint& u : body_points) {
      const Vec3 x = chain.body_point_position(frames, u);
      const FieldEval e = scene.signed_distance(x, policy.include_target(u, x));
      best = std::min(best, e.distance);
    }
  }
  return best;
}

double straight_line_smoothness(const Config& from, const Config& to, int n) {
  Trajectory line;
  line.start = from;
  line.waypoints.resize(n, from.size());
  for (int i = 1; i <= n; ++i) {
    line.waypoints.row(i - 1) =
        (from + (to - from) * (static_cast<double>(i) / n)).transpose();
  }
  return 2.0 * prior_cost(line);
}

namespace {

double distribution_entropy(const Distribution& p) {
  double h = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
  }
  return h;
}

/// Endpoint-to-goal distances, unit-normalized; the projection baseline.
Eigen::VectorXd endpoint_distance_costs(const Trajectory& traj, const GoalSet& goals) {
  Eigen::VectorXd c =
      Eigen::VectorXd::Constant(goals.size(), std::numeric_limits<double>::infinity());
  const Config end = traj.endpoint();
  double norm_sq = 0.0;
  for (int g = 0; g < goals.size(); ++g) {
    if (!goals.is_feasible(g)) continue;
    c[g] = (goals.goals[g] - end).norm();
    norm_sq += c[g] * c[g];
  }
  if (norm_sq > 0.0) {
    const double norm = std::sqrt(norm_sq);
    for (int g = 0; g < goals.size(); ++g) {
      if (std::isfinite(c[g])) c[g] /= norm;
    }
  }
  return c;
}

}  // namespace

PlanResult plan(const PlanProblem& problem, const PlannerConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  PlanResult result;
  result.refined_goals = problem.goals;

  GoalSet& goals = result.refined_goals;
  if (goals.size() == 0 || goals.feasible_count() == 0) {
    result.status = PlanStatus::kNoFeasibleGoal;
    result.trajectory = Trajectory::constant(problem.q_start, cfg.resolution);
    return result;
  }

  const std::vector<BodyPoint> body_points = sample_body_points(
      problem.chain, &problem.gripper, cfg.body_points_per_part, cfg.seed);
  const int n = cfg.resolution;
  const SmoothnessOperator op(n, 1.0 / (n + 1));

  int goal_idx = initial_goal(goals, problem.scene, problem.chain, body_points,
                              problem.q_start, cfg);
  Trajectory traj = init_trajectory(problem.q_start, goals.goals[goal_idx], n);

  Distribution p = uniform_distribution(goals);
  if (cfg.selector == Selector::kFixed) {
    p = Distribution::Zero(goals.size());
    p[goal_idx] = 1.0;
  }
  const double eta_exp =
      cfg.eta_ol > 0.0 ? cfg.eta_ol : exp_learning_rate(goals.size(), cfg.horizon);
  MdEnsemble ensemble(goals, cfg.horizon);

  result.status = PlanStatus::kHorizonExhausted;
  for (int i = 0; i < cfg.horizon; ++i) {
    const Config& goal = goals.goals[goal_idx];
    const TargetPolicy policy = TargetPolicy::near_goal(
        problem.chain.end_effector_pose(goal).p, problem.scene.approach_radius);

    const Eigen::MatrixXd v = motion_gradient(traj, problem.scene, problem.chain,
                                              body_points, cfg.motion, policy);
    traj = chomp_proj_step(traj, goal, v, cfg.motion.eta_motion, op);

    IterationLog entry;
    entry.iteration = i;
    entry.motion_cost = motion_cost(traj, problem.scene, problem.chain, body_points,
                                    cfg.motion.lambda, policy);
    entry.selected_goal = goal_idx;
    entry.grasp_cost = grasp_cost(goal, problem.chain, problem.gripper,
                                  problem.scene.target_surface, problem.scene,
                                  body_points, cfg.grasp);
    entry.distribution_entropy = distribution_entropy(p);
    result.log.push_back(entry);

    // Pre-termination: collision-free at the clearance gate, smooth enough,
    // and an acceptable grasp.
    const double smooth_limit =
        cfg.pre_termination.smoothness_max > 0.0
            ? cfg.pre_termination.smoothness_max
            : 3.0 * straight_line_smoothness(problem.q_start, goal, n);
    const bool collision_ok =
        !cfg.pre_termination.require_collision_free ||
        min_clearance(traj, problem.scene, problem.chain, body_points, policy) >=
            problem.scene.clearance;
    if (collision_ok && 2.0 * prior_cost(traj) <= smooth_limit &&
        entry.grasp_cost <= cfg.pre_termination.grasp_cost_max) {
      result.status = PlanStatus::kConverged;
      break;
    }

    if (cfg.selector != Selector::kFixed) {
      Eigen::VectorXd c;
      if (cfg.selector == Selector::kProj) {
        c = endpoint_distance_costs(traj, goals);
      } else {
        c = estimate_goal_costs(traj, i, cfg.horizon, goals, problem.scene,
                                problem.chain, body_points, cfg.motion.lambda);
      }
      result.history.push_cost(c);
      switch (cfg.selector) {
        case Selector::kProj:
        case Selector::kFtc:
          p = ftc_update(c);
          break;
        case Selector::kFtl:
          p = ftl_update(result.history);
          break;
        case Selector::kExp:
          p = exp_update(p, c, eta_exp);
          break;
        case Selector::kMd:
          p = ensemble.update(c);
          break;
        case Selector::kFixed:
          break;
      }
      result.history.push_distribution(p);
      goal_idx = select_goal(p);
    }

    for (int s = 0; s < cfg.isf_steps_per_iter; ++s) {
      const double before = grasp_cost(goals.goals[goal_idx], problem.chain,
                                       problem.gripper, problem.scene.target_surface,
                                       problem.scene, body_points, cfg.grasp);
      const IsfStepResult step = cspace_isf_step(
          goals.goals[goal_idx], problem.chain, problem.gripper,
          problem.scene.target_surface, problem.scene, body_points, cfg.grasp);
      if (!step.stepped) break;
      const double after =
          grasp_cost(step.g, problem.chain, problem.gripper,
                     problem.scene.target_surface, problem.scene, body_points, cfg.grasp);
      if (!goal_update_guard(problem.chain, before, after, step.g)) break;
      goals.goals[goal_idx] = step.g;
    }
  }

  // Refinement may have moved the goal after the last projection; one
  // zero-gradient projected step restores an exact endpoint.
  if ((traj.endpoint() - goals.goals[goal_idx]).norm() > 0.0) {
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(n, traj.dof());
    traj = chomp_proj_step(traj, goals.goals[goal_idx], zero, cfg.motion.eta_motion, op);
  }

  result.trajectory = traj;
  result.selected_goal_index = goal_idx;
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace mgopt
