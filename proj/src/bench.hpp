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

#ifndef MGOPT_BENCH_HPP
#define MGOPT_BENCH_HPP

#include <string>

#include "planner.hpp"

namespace mgopt {

enum class ChainPreset { kPlanar3, kPlanar7, kSpatial6 };

const char* chain_preset_name(ChainPreset p);
bool chain_preset_from_name(const std::string& name, ChainPreset& out);

SerialChain make_chain(ChainPreset preset);
Config default_start(ChainPreset preset);

/// Recipe for a random cluttered scene. "blocked" generates the constructed
/// two-goal family where the initially cheapest grasp approach is walled off.
struct SceneSpec {
  std::uint64_t seed = 0;
  ChainPreset preset = ChainPreset::kPlanar3;
  int min_obstacles = 3;
  int max_obstacles = 7;
  std::string target_shape = "sphere";  // sphere | box | capsule
  int goal_count = 30;
  int surface_points = 1000;
  std::string family = "random";  // random | blocked | free
};

struct ProblemInstance {
  SerialChain chain;
  GripperModel gripper;
  SceneSdf scene;
  GoalSet goals;
  Config q_start;
  int goals_requested = 0;  // warning count source when fewer were found
};

ProblemInstance generate_scene(const SceneSpec& spec);

/// One approach-direction grasp candidate against an explicit scene: places
/// the gripper a finger length off the target surface along `dir`, solves IK,
/// and checks the arm clear of obstacles. Empty on failure.
std::optional<Config> sample_goal_for_scene(const SerialChain& chain,
                                            const GripperModel& gripper,
                                            const SceneSdf& scene,
                                            const std::vector<BodyPoint>& body_points,
                                            const Config& q_start, bool planar,
                                            const Vec3& dir, double roll, Rng& rng);

struct MetricsReport {
  double collision = 0.0;
  double smoothness = 0.0;
  bool planning_success = false;
  double grasp_cost = 0.0;
  double time = 0.0;
};

/// Obstacle costs summed over body points within the clearance gate, on the
/// trajectory densely resampled to `steps` configurations.
double collision_metric(const Trajectory& traj, const SceneSdf& scene,
                        const SerialChain& chain,
                        const std::vector<BodyPoint>& body_points,
                        const TargetPolicy& policy, int steps = 200);

/// Sum of squared waypoint velocity norms (twice the prior).
double smoothness_metric(const Trajectory& traj);

bool planning_success(double collision, double smoothness, double smoothness_max);

MetricsReport evaluate_plan(const ProblemInstance& inst, const PlanResult& result,
                            const PlannerConfig& cfg);

struct OracleResult {
  int index = -1;
  double cost = 0.0;
};

/// Runs fixed-goal projected descent to convergence for every feasible goal
/// and returns the cheapest final objective.
OracleResult oracle_best_goal(const ProblemInstance& inst, const PlannerConfig& cfg,
                              int max_iters = 400, double tol = 1e-10);

struct SelectorRow {
  std::string selector;
  double planning_rate = 0.0;
  double smoothness = 0.0;
  double collision = 0.0;
  double grasp_cost = 0.0;
  double time = 0.0;
  int runs = 0;
};

/// Mean metrics of plan() per selector over scenes x runs. Runs differ by
/// the body-point sampling seed and a jittered start configuration.
std::vector<SelectorRow> compare_selectors(const std::vector<SceneSpec>& specs,
                                           const std::vector<Selector>& selectors,
                                           int runs, const PlannerConfig& base,
                                           int jobs = 1);

struct AblationRow {
  double value = 0.0;
  double planning_rate = 0.0;
  double smoothness = 0.0;
  double collision = 0.0;
  double time = 0.0;
};

/// Sweeps resolution n or the smoothness weight lambda.
std::vector<AblationRow> ablation(const std::vector<SceneSpec>& specs,
                                  const std::string& parameter,
                                  const std::vector<double>& values,
                                  const PlannerConfig& base, int jobs = 1);

}  // namespace mgopt

#endif  // MGOPT_BENCH_HPP
