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

#include "mgopt/mgopt.h"

#include <cmath>
#include <cstring>
#include <filesystem>

#include "csvio.hpp"
#include "report.hpp"

using namespace mgopt;

struct mg_scene {
  ProblemInstance instance;
  PlannerConfig planner;
};

struct mg_result {
  const mg_scene* scene = nullptr;  // borrowed
  PlanResult plan;
  MetricsReport metrics;
  std::vector<RefineTraceRow> refine_trace;
  Config final_config;
  bool is_refine = false;
};

namespace {

thread_local std::string g_last_error;

mg_status fail(mg_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
mg_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    return fail(MG_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(MG_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    return fail(MG_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(MG_ERR_UNKNOWN, e.what());
  }
}

mg_status write_file_guarded(const std::string& path, const std::string& content) {
  return guarded([&] {
    write_text_file(path, content);
    return MG_OK;
  });
}

}  // namespace

extern "C" {

const char* mg_status_name(mg_status status) {
  switch (status) {
    case MG_OK: return "ok";
    case MG_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case MG_ERR_PARSE: return "parse_error";
    case MG_ERR_IO: return "io_error";
    case MG_ERR_NO_FEASIBLE_GOAL: return "no_feasible_goal";
    case MG_ERR_NUMERICAL: return "numerical_error";
    case MG_ERR_UNKNOWN: return "unknown_error";
  }
  return "unknown_error";
}

const char* mg_last_error(void) { return g_last_error.c_str(); }

const char* mg_version(void) { return "0.1.0"; }

mg_status mg_scene_load_file(const char* path, mg_scene** out) {
  if (path == nullptr || out == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    SceneFileData data = load_scene_file(path);
    *out = new mg_scene{std::move(data.instance), data.planner};
    return MG_OK;
  });
}

mg_status mg_scene_load_string(const char* text, mg_scene** out) {
  if (text == nullptr || out == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    SceneFileData data = parse_scene_text(text);
    *out = new mg_scene{std::move(data.instance), data.planner};
    return MG_OK;
  });
}

mg_status mg_scene_generate(const char* preset, const char* family,
                            unsigned long long seed, int goal_count, int min_obstacles,
                            int max_obstacles, mg_scene** out) {
  if (preset == nullptr || family == nullptr || out == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    SceneSpec spec;
    if (!chain_preset_from_name(preset, spec.preset))
      throw std::invalid_argument(std::string("unknown preset: ") + preset);
    spec.family = family;
    spec.seed = seed;
    spec.goal_count = goal_count;
    spec.min_obstacles = min_obstacles;
    spec.max_obstacles = max_obstacles;
    *out = new mg_scene{generate_scene(spec), PlannerConfig{}};
    return MG_OK;
  });
}

void mg_scene_free(mg_scene* scene) { delete scene; }

int mg_scene_dof(const mg_scene* scene) {
  return scene == nullptr ? 0 : scene->instance.chain.dof();
}

int mg_scene_goal_count(const mg_scene* scene) {
  return scene == nullptr ? 0 : scene->instance.goals.size();
}

int mg_scene_goals_requested(const mg_scene* scene) {
  return scene == nullptr ? 0 : scene->instance.goals_requested;
}

mg_status mg_scene_set_option(mg_scene* scene, const char* key, const char* value) {
  if (scene == nullptr || key == nullptr || value == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const std::string k = key;
    const std::string v = value;
    std::string json_value = v;
    // Strings need quoting for the JSON-backed option parser.
    if (k == "selector") json_value = '"' + v + '"';
    const std::string doc = "{\"" + k + "\": " + json_value + "}";
    scene->planner = parse_planner_overrides(doc, scene->planner);
    return MG_OK;
  });
}

mg_status mg_scene_save_file(const mg_scene* scene, const char* path) {
  if (scene == nullptr || path == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    save_scene_file(path, scene->instance, scene->planner);
    return MG_OK;
  });
}

mg_status mg_plan(const mg_scene* scene, mg_result** out) {
  if (scene == nullptr || out == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto result = std::make_unique<mg_result>();
    result->scene = scene;
    PlanProblem problem{scene->instance.scene, scene->instance.chain,
                        scene->instance.gripper, scene->instance.goals,
                        scene->instance.q_start};
    result->plan = plan(problem, scene->planner);
    if (result->plan.status == PlanStatus::kNoFeasibleGoal) {
      return fail(MG_ERR_NO_FEASIBLE_GOAL, "no feasible goal in the goal set");
    }
    result->metrics = evaluate_plan(scene->instance, result->plan, scene->planner);
    if (result->plan.selected_goal_index >= 0) {
      result->final_config =
          result->plan.refined_goals.goals[result->plan.selected_goal_index];
    }
    *out = result.release();
    return MG_OK;
  });
}

mg_status mg_refine(const mg_scene* scene, int goal_index, int steps, mg_result** out) {
  if (scene == nullptr || out == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const ProblemInstance& inst = scene->instance;
    if (goal_index < 0 || goal_index >= inst.goals.size())
      throw std::invalid_argument("goal index out of range");
    if (steps < 0) throw std::invalid_argument("steps must be >= 0");
    auto result = std::make_unique<mg_result>();
    result->scene = scene;
    result->is_refine = true;

    const std::vector<BodyPoint> body_points =
        sample_body_points(inst.chain, &inst.gripper, scene->planner.body_points_per_part,
                           scene->planner.seed);
    const GraspRefineConfig& gcfg = scene->planner.grasp;
    Config g = inst.goals.goals[goal_index];

    auto trace_row = [&](int step, const Config& q) {
      RefineTraceRow row;
      row.step = step;
      const Contacts contacts = transform_contacts(inst.chain, inst.gripper, q);
      const auto corr =
          nearest_correspondences(contacts, inst.gripper, inst.scene.target_surface);
      row.point_match = point_match_loss(corr);
      row.normal_align = normal_align_loss(corr);
      row.hand_collision =
          hand_collision_cost(q, inst.chain, inst.gripper, inst.scene.target_surface,
                              gcfg.eps_hand)
              .cost;
      row.arm_collision = arm_collision_cost(q, inst.chain, inst.scene, body_points).cost;
      row.grasp_cost = grasp_cost(q, inst.chain, inst.gripper, inst.scene.target_surface,
                                  inst.scene, body_points, gcfg);
      return row;
    };

    result->refine_trace.push_back(trace_row(0, g));
    for (int s = 1; s <= steps; ++s) {
      const IsfStepResult step = cspace_isf_step(
          g, inst.chain, inst.gripper, inst.scene.target_surface, inst.scene,
          body_points, gcfg);
      if (!step.stepped) break;
      g = step.g;
      result->refine_trace.push_back(trace_row(s, g));
    }
    result->final_config = g;
    result->plan.status = PlanStatus::kConverged;
    result->plan.selected_goal_index = goal_index;
    result->metrics.grasp_cost = result->refine_trace.back().grasp_cost;
    *out = result.release();
    return MG_OK;
  });
}

void mg_result_free(mg_result* result) { delete result; }

mg_plan_status mg_result_plan_status(const mg_result* result) {
  if (result == nullptr) return MG_PLAN_NO_FEASIBLE_GOAL;
  switch (result->plan.status) {
    case PlanStatus::kConverged: return MG_PLAN_CONVERGED;
    case PlanStatus::kHorizonExhausted: return MG_PLAN_HORIZON_EXHAUSTED;
    case PlanStatus::kNoFeasibleGoal: return MG_PLAN_NO_FEASIBLE_GOAL;
  }
  return MG_PLAN_NO_FEASIBLE_GOAL;
}

int mg_result_planning_success(const mg_result* result) {
  return (result != nullptr && result->metrics.planning_success) ? 1 : 0;
}

int mg_result_selected_goal(const mg_result* result) {
  return result == nullptr ? -1 : result->plan.selected_goal_index;
}

double mg_result_metric(const mg_result* result, const char* name) {
  if (result == nullptr || name == nullptr) return std::nan("");
  const std::string key = name;
  if (key == "collision") return result->metrics.collision;
  if (key == "smoothness") return result->metrics.smoothness;
  if (key == "grasp_cost") return result->metrics.grasp_cost;
  if (key == "time") return result->plan.wall_time;
  if (key == "regret") return regret(result->plan.history);
  if (key == "motion_cost") {
    return result->plan.log.empty() ? std::nan("") : result->plan.log.back().motion_cost;
  }
  return std::nan("");
}

mg_status mg_result_write_trajectory_csv(const mg_result* result, const char* path) {
  if (result == nullptr || path == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return write_file_guarded(path, trajectory_csv(result->plan.trajectory));
}

mg_status mg_result_write_iteration_log_csv(const mg_result* result, const char* path) {
  if (result == nullptr || path == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return write_file_guarded(path, iteration_log_csv(result->plan));
}

mg_status mg_result_write_selector_trace_csv(const mg_result* result, const char* path) {
  if (result == nullptr || path == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return write_file_guarded(path, selector_trace_csv(result->plan));
}

mg_status mg_result_write_metrics_csv(const mg_result* result, const char* path,
                                      int include_timing) {
  if (result == nullptr || path == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return write_file_guarded(path, metrics_csv(result->metrics, include_timing != 0));
}

mg_status mg_result_write_refine_trace_csv(const mg_result* result, const char* path) {
  if (result == nullptr || path == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return write_file_guarded(path, refine_trace_csv(result->refine_trace));
}

mg_status mg_result_write_final_config_csv(const mg_result* result, const char* path) {
  if (result == nullptr || path == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  if (result->final_config.size() == 0)
    return fail(MG_ERR_INVALID_ARGUMENT, "result has no final configuration");
  return write_file_guarded(path, config_csv(result->final_config));
}

mg_status mg_result_write_scene_svg(const mg_result* result, const char* path) {
  if (result == nullptr || path == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return write_file_guarded(
      path, render_scene_svg(result->scene->instance,
                             result->is_refine ? nullptr : &result->plan,
                             result->scene->planner));
}

mg_status mg_scene_write_svg(const mg_scene* scene, const char* path) {
  if (scene == nullptr || path == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return write_file_guarded(path,
                            render_scene_svg(scene->instance, nullptr, scene->planner));
}

mg_status mg_bench_run_manifest(const char* manifest_path, const char* out_dir, int jobs,
                                int include_timing) {
  if (manifest_path == nullptr || out_dir == nullptr)
    return fail(MG_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const std::vector<ManifestEntry> entries = load_manifest_file(manifest_path);
    std::filesystem::create_directories(out_dir);
    for (const ManifestEntry& entry : entries) {
      const std::vector<SceneSpec> specs = manifest_scene_specs(entry);
      const std::string path = std::string(out_dir) + "/" + entry.name + ".csv";
      if (entry.type == "selectors") {
        std::vector<Selector> selectors = entry.selectors;
        if (selectors.empty()) {
          selectors = {Selector::kFixed, Selector::kProj, Selector::kFtc,
                       Selector::kFtl, Selector::kExp, Selector::kMd};
        }
        const auto rows =
            compare_selectors(specs, selectors, entry.runs, entry.planner, jobs);
        write_text_file(path, selector_table_csv(rows, include_timing != 0));
      } else {
        const auto rows = ablation(specs, entry.parameter, entry.values, entry.planner, jobs);
        write_text_file(path, ablation_table_csv(entry.parameter, rows, include_timing != 0));
      }
    }
    return MG_OK;
  });
}

}  // extern "C"
