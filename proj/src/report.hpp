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

#ifndef MGOPT_REPORT_HPP
#define MGOPT_REPORT_HPP

#include <string>

#include "scenefile.hpp"

namespace mgopt {

/// One row per waypoint, preceded by a comment line carrying d and dt.
std::string trajectory_csv(const Trajectory& traj);

/// iteration, motion cost, selected goal, distribution entropy, grasp cost.
std::string iteration_log_csv(const PlanResult& result);

/// Per-iteration cost vectors, distributions, and the selected goal.
std::string selector_trace_csv(const PlanResult& result);

/// collision, smoothness, planning_success, grasp_cost (+ time if requested;
/// timing is off by default so identical runs emit identical bytes).
std::string metrics_csv(const MetricsReport& report, bool include_timing);

std::string selector_table_csv(const std::vector<SelectorRow>& rows, bool include_timing);
std::string ablation_table_csv(const std::string& parameter,
                               const std::vector<AblationRow>& rows, bool include_timing);

struct RefineTraceRow {
  int step = 0;
  double grasp_cost = 0.0;
  double point_match = 0.0;
  double normal_align = 0.0;
  double hand_collision = 0.0;
  double arm_collision = 0.0;
};

std::string refine_trace_csv(const std::vector<RefineTraceRow>& rows);
std::string config_csv(const Config& q);

/// Planar scene drawing: obstacles, target, goal markers, and the initial
/// versus final end-effector paths at 100 px per meter.
std::string render_scene_svg(const ProblemInstance& inst, const PlanResult* result,
                             const PlannerConfig& cfg);

}  // namespace mgopt

#endif  // MGOPT_REPORT_HPP
