/* Copyright 2026 The mgopt Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the mgopt motion-and-grasp planning library.
 *
 * All entry points return mg_status; results and scenes are opaque handles
 * owned by the caller and released with the matching _free call. On error,
 * mg_last_error() returns a thread-local description of the failure.
 */

#ifndef MGOPT_MGOPT_H
#define MGOPT_MGOPT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mg_status {
  MG_OK = 0,
  MG_ERR_INVALID_ARGUMENT = 1,
  MG_ERR_PARSE = 2,
  MG_ERR_IO = 3,
  MG_ERR_NO_FEASIBLE_GOAL = 4,
  MG_ERR_NUMERICAL = 5,
  MG_ERR_UNKNOWN = 6
} mg_status;

typedef enum mg_plan_status {
  MG_PLAN_CONVERGED = 0,
  MG_PLAN_HORIZON_EXHAUSTED = 1,
  MG_PLAN_NO_FEASIBLE_GOAL = 2
} mg_plan_status;

const char* mg_status_name(mg_status status);

/* Thread-local message describing the most recent failure in this thread. */
const char* mg_last_error(void);

const char* mg_version(void);

/* ---- scenes ------------------------------------------------------------ */

typedef struct mg_scene mg_scene;

mg_status mg_scene_load_file(const char* path, mg_scene** out);
mg_status mg_scene_load_string(const char* text, mg_scene** out);

/* Deterministic synthetic scene. preset: planar-3 | planar-7 | spatial-6;
 * family: random | blocked | free. */
mg_status mg_scene_generate(const char* preset, const char* family,
                            unsigned long long seed, int goal_count, int min_obstacles,
                            int max_obstacles, mg_scene** out);

void mg_scene_free(mg_scene* scene);

int mg_scene_dof(const mg_scene* scene);
int mg_scene_goal_count(const mg_scene* scene);
int mg_scene_goals_requested(const mg_scene* scene);

/* Planner options parsed from strings; keys match the scene file's planner
 * section (selector, horizon, resolution, lambda, eta_motion, worst_points,
 * isf_steps, seed, ...). */
mg_status mg_scene_set_option(mg_scene* scene, const char* key, const char* value);

mg_status mg_scene_save_file(const mg_scene* scene, const char* path);

/* ---- planning ----------------------------------------------------------- */

typedef struct mg_result mg_result;

mg_status mg_plan(const mg_scene* scene, mg_result** out);

/* `steps` refinement iterations of the goal at `goal_index`. */
mg_status mg_refine(const mg_scene* scene, int goal_index, int steps, mg_result** out);

void mg_result_free(mg_result* result);

mg_plan_status mg_result_plan_status(const mg_result* result);
int mg_result_planning_success(const mg_result* result);
int mg_result_selected_goal(const mg_result* result);

/* Metrics by name: collision, smoothness, grasp_cost, motion_cost, time,
 * regret. Returns NaN for unknown names. */
double mg_result_metric(const mg_result* result, const char* name);

/* ---- output files -------------------------------------------------------- */

mg_status mg_result_write_trajectory_csv(const mg_result* result, const char* path);
mg_status mg_result_write_iteration_log_csv(const mg_result* result, const char* path);
mg_status mg_result_write_selector_trace_csv(const mg_result* result, const char* path);
mg_status mg_result_write_metrics_csv(const mg_result* result, const char* path,
                                      int include_timing);
mg_status mg_result_write_refine_trace_csv(const mg_result* result, const char* path);
mg_status mg_result_write_final_config_csv(const mg_result* result, const char* path);
mg_status mg_result_write_scene_svg(const mg_result* result, const char* path);

mg_status mg_scene_write_svg(const mg_scene* scene, const char* path);

/* ---- benchmarking -------------------------------------------------------- */

/* Runs every manifest entry and writes <out_dir>/<name>.csv per entry.
 * Timing columns are emitted only when include_timing is nonzero, so default
 * outputs are byte-identical for identical manifests and seeds. */
mg_status mg_bench_run_manifest(const char* manifest_path, const char* out_dir, int jobs,
                                int include_timing);

#ifdef __cplusplus
}
#endif

#endif /* MGOPT_MGOPT_H */
