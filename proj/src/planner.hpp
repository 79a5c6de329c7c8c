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

#ifndef MGOPT_PLANNER_HPP
#define MGOPT_PLANNER_HPP

#include <string>

#include "graspref.hpp"

namespace mgopt {

enum class Selector { kFixed, kProj, kFtc, kFtl, kExp, kMd };

const char* selector_name(Selector s);
bool selector_from_name(const std::string& name, Selector& out);

struct PreTermination {
  /// Absolute smoothness gate; values <= 0 fall back to 3x the smoothness of
  /// the straight line from start to the current goal.
  double smoothness_max = 0.0;
  double grasp_cost_max = std::numeric_limits<double>::infinity();
  bool require_collision_free = true;
};

struct PlannerConfig {
  int horizon = 100;               // N
  int resolution = 30;             // waypoints n
  Selector selector = Selector::kMd;
  MotionObjectiveConfig motion;
  GraspRefineConfig grasp;
  int isf_steps_per_iter = 1;      // 0 disables refinement
  PreTermination pre_termination;
  int body_points_per_part = 10;
  std::uint64_t seed = 0;
  double eta_ol = 0.0;             // 0 = selector default
};

enum class PlanStatus { kConverged, kHorizonExhausted, kNoFeasibleGoal };

const char* plan_status_name(PlanStatus s);

struct IterationLog {
  int iteration = 0;
  double motion_cost = 0.0;
  int selected_goal = -1;
  double distribution_entropy = 0.0;
  double grasp_cost = 0.0;
};

struct PlanResult {
  Trajectory trajectory;
  int selected_goal_index = -1;
  std::vector<IterationLog> log;
  CostHistory history;
  GoalSet refined_goals;
  PlanStatus status = PlanStatus::kNoFeasibleGoal;
  double wall_time = 0.0;  // seconds
};

/// Cubic from start to the initial goal with zero boundary velocities,
/// sampled at n waypoints.
Trajectory init_trajectory(const Config& q_start, const Config& g0, int n);

/// Goal with the lowest tail estimate at iteration zero.
int initial_goal(const GoalSet& goals, const SceneSdf& scene, const SerialChain& chain,
                 const std::vector<BodyPoint>& body_points, const Config& q_start,
                 const PlannerConfig& cfg);

/// Accepts a refined goal unless it leaves joint limits or worsens the grasp
/// cost by more than 10%.
bool goal_update_guard(const SerialChain& chain, double cost_before, double cost_after,
                       const Config& refined);

struct PlanProblem {
  const SceneSdf& scene;
  const SerialChain& chain;
  const GripperModel& gripper;
  const GoalSet& goals;
  Config q_start;
};

PlanResult plan(const PlanProblem& problem, const PlannerConfig& cfg);

/// Minimum clearance over all nodes and body points, target handled by the
/// supplied policy. Used for the collision-free pre-termination gate.
double min_clearance(const Trajectory& traj, const SceneSdf& scene,
                     const SerialChain& chain,
                     const std::vector<BodyPoint>& body_points,
                     const TargetPolicy& policy);

/// Smoothness (twice the prior) of the straight line between two
/// configurations at resolution n.
double straight_line_smoothness(const Config& from, const Config& to, int n);

}  // namespace mgopt

#endif  // MGOPT_PLANNER_HPP
