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

// Command-line front end; talks to the library exclusively through the C API.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <string>

#include "mgopt/mgopt.h"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitError = 1;
constexpr int kExitPlanningFailed = 2;

int report_error(const char* what, mg_status status) {
  std::fprintf(stderr, "error (%s): %s\n", mg_status_name(status),
               mg_last_error()[0] ? mg_last_error() : what);
  return kExitError;
}

struct SceneHandle {
  mg_scene* scene = nullptr;
  ~SceneHandle() { mg_scene_free(scene); }
};

struct ResultHandle {
  mg_result* result = nullptr;
  ~ResultHandle() { mg_result_free(result); }
};

bool apply_option(mg_scene* scene, const std::string& key, const std::string& value) {
  const mg_status s = mg_scene_set_option(scene, key.c_str(), value.c_str());
  if (s != MG_OK) {
    std::fprintf(stderr, "error: bad --%s value: %s\n", key.c_str(), mg_last_error());
    return false;
  }
  return true;
}

std::string join(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint motion and grasp planning over signed-distance scenes"};
  app.require_subcommand(1);

  // plan -------------------------------------------------------------------
  std::string plan_scene;
  std::string plan_selector;
  std::string plan_out = ".";
  long long plan_seed = -1;
  int plan_iters = -1;
  int plan_refine_steps = -1;
  bool plan_svg = false;
  bool plan_trace = false;
  bool plan_timing = false;
  CLI::App* plan = app.add_subcommand("plan", "optimize a trajectory for a scene file");
  plan->add_option("scene", plan_scene, "scene JSON file")->required();
  plan->add_option("--selector", plan_selector, "fixed|proj|ftc|ftl|exp|md");
  plan->add_option("--seed", plan_seed, "planner seed");
  plan->add_option("--iters", plan_iters, "optimization horizon N");
  plan->add_option("--refine-steps", plan_refine_steps, "ISF steps per iteration");
  plan->add_flag("--svg", plan_svg, "render the planar scene and trajectories");
  plan->add_flag("--trace", plan_trace, "dump per-iteration costs and distributions");
  plan->add_flag("--timing", plan_timing, "include wall time in metrics.csv");
  plan->add_option("--out", plan_out, "output directory");

  // bench ------------------------------------------------------------------
  std::string bench_manifest;
  std::string bench_out = ".";
  int bench_jobs = 1;
  bool bench_timing = false;
  CLI::App* bench = app.add_subcommand("bench", "run a benchmark manifest");
  bench->add_option("manifest", bench_manifest, "manifest JSON file")->required();
  bench->add_option("--out", bench_out, "output directory");
  bench->add_option("--jobs", bench_jobs, "parallel scene evaluations");
  bench->add_flag("--timing", bench_timing, "include wall-time columns");

  // refine-grasp -------------------------------------------------------------
  std::string refine_scene;
  std::string refine_out = ".";
  int refine_goal = 0;
  int refine_steps = 30;
  CLI::App* refine =
      app.add_subcommand("refine-grasp", "surface-fit one grasp configuration");
  refine->add_option("scene", refine_scene, "scene JSON file")->required();
  refine->add_option("--goal-index", refine_goal, "goal set entry to refine");
  refine->add_option("--refine-steps", refine_steps, "number of fitting steps");
  refine->add_option("--out", refine_out, "output directory");

  // gen ----------------------------------------------------------------------
  std::string gen_out = "scene.json";
  std::string gen_preset = "planar-3";
  std::string gen_family = "random";
  long long gen_seed = 0;
  int gen_goals = 30;
  int gen_obst_min = 3;
  int gen_obst_max = 7;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic scene file");
  gen->add_option("--preset", gen_preset, "planar-3|planar-7|spatial-6");
  gen->add_option("--family", gen_family, "random|blocked|free");
  gen->add_option("--seed", gen_seed, "scene seed");
  gen->add_option("--goals", gen_goals, "goal set size");
  gen->add_option("--obstacles-min", gen_obst_min, "minimum obstacle count");
  gen->add_option("--obstacles-max", gen_obst_max, "maximum obstacle count");
  gen->add_option("--out", gen_out, "output scene file");

  CLI11_PARSE(app, argc, argv);

  if (plan->parsed()) {
    SceneHandle scene;
    mg_status s = mg_scene_load_file(plan_scene.c_str(), &scene.scene);
    if (s != MG_OK) return report_error("scene load failed", s);
    if (!plan_selector.empty() && !apply_option(scene.scene, "selector", plan_selector))
      return kExitError;
    if (plan_seed >= 0 &&
        !apply_option(scene.scene, "seed", std::to_string(plan_seed)))
      return kExitError;
    if (plan_iters >= 0 &&
        !apply_option(scene.scene, "horizon", std::to_string(plan_iters)))
      return kExitError;
    if (plan_refine_steps >= 0 &&
        !apply_option(scene.scene, "isf_steps", std::to_string(plan_refine_steps)))
      return kExitError;

    ResultHandle result;
    s = mg_plan(scene.scene, &result.result);
    if (s != MG_OK) return report_error("planning failed", s);

    std::error_code ec;
    std::filesystem::create_directories(plan_out, ec);
    if ((s = mg_result_write_trajectory_csv(
             result.result, join(plan_out, "trajectory.csv").c_str())) != MG_OK ||
        (s = mg_result_write_metrics_csv(result.result,
                                         join(plan_out, "metrics.csv").c_str(),
                                         plan_timing ? 1 : 0)) != MG_OK ||
        (s = mg_result_write_iteration_log_csv(
             result.result, join(plan_out, "iterations.csv").c_str())) != MG_OK) {
      return report_error("write failed", s);
    }
    if (plan_trace) {
      s = mg_result_write_selector_trace_csv(
          result.result, join(plan_out, "selector_trace.csv").c_str());
      if (s != MG_OK) return report_error("write failed", s);
    }
    if (plan_svg) {
      s = mg_result_write_scene_svg(result.result, join(plan_out, "scene.svg").c_str());
      if (s != MG_OK) return report_error("write failed", s);
    }
    std::printf("status=%d planning_success=%d goal=%d collision=%g smoothness=%g "
                "grasp_cost=%g time=%.3fs\n",
                static_cast<int>(mg_result_plan_status(result.result)),
                mg_result_planning_success(result.result),
                mg_result_selected_goal(result.result),
                mg_result_metric(result.result, "collision"),
                mg_result_metric(result.result, "smoothness"),
                mg_result_metric(result.result, "grasp_cost"),
                mg_result_metric(result.result, "time"));
    return mg_result_planning_success(result.result) ? kExitSuccess : kExitPlanningFailed;
  }

  if (bench->parsed()) {
    std::error_code ec;
    std::filesystem::create_directories(bench_out, ec);
    const mg_status s = mg_bench_run_manifest(bench_manifest.c_str(), bench_out.c_str(),
                                              bench_jobs, bench_timing ? 1 : 0);
    if (s != MG_OK) return report_error("bench failed", s);
    return kExitSuccess;
  }

  if (refine->parsed()) {
    SceneHandle scene;
    mg_status s = mg_scene_load_file(refine_scene.c_str(), &scene.scene);
    if (s != MG_OK) return report_error("scene load failed", s);
    ResultHandle result;
    s = mg_refine(scene.scene, refine_goal, refine_steps, &result.result);
    if (s != MG_OK) return report_error("refinement failed", s);
    std::error_code ec;
    std::filesystem::create_directories(refine_out, ec);
    if ((s = mg_result_write_refine_trace_csv(
             result.result, join(refine_out, "refine_trace.csv").c_str())) != MG_OK ||
        (s = mg_result_write_final_config_csv(
             result.result, join(refine_out, "final_config.csv").c_str())) != MG_OK) {
      return report_error("write failed", s);
    }
    std::printf("grasp_cost=%g\n", mg_result_metric(result.result, "grasp_cost"));
    return kExitSuccess;
  }

  if (gen->parsed()) {
    SceneHandle scene;
    mg_status s = mg_scene_generate(gen_preset.c_str(), gen_family.c_str(),
                                    static_cast<unsigned long long>(gen_seed), gen_goals,
                                    gen_obst_min, gen_obst_max, &scene.scene);
    if (s != MG_OK) return report_error("generation failed", s);
    if (mg_scene_goal_count(scene.scene) < mg_scene_goals_requested(scene.scene)) {
      std::fprintf(stderr, "warning: found %d of %d requested goals\n",
                   mg_scene_goal_count(scene.scene),
                   mg_scene_goals_requested(scene.scene));
    }
    s = mg_scene_save_file(scene.scene, gen_out.c_str());
    if (s != MG_OK) return report_error("save failed", s);
    std::printf("wrote %s (%d goals)\n", gen_out.c_str(), mg_scene_goal_count(scene.scene));
    return kExitSuccess;
  }

  return kExitError;
}
