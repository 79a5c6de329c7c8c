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

#include "bench.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace mgopt {

const char* chain_preset_name(ChainPreset p) {
  switch (p) {
    case ChainPreset::kPlanar3: return "planar-3";
    case ChainPreset::kPlanar7: return "planar-7";
    case ChainPreset::kSpatial6: return "spatial-6";
  }
  return "unknown";
}

bool chain_preset_from_name(const std::string& name, ChainPreset& out) {
  for (ChainPreset p : {ChainPreset::kPlanar3, ChainPreset::kPlanar7, ChainPreset::kSpatial6}) {
    if (name == chain_preset_name(p)) {
      out = p;
      return true;
    }
  }
  return false;
}

namespace {

Joint revolute(const Vec3& axis, const Vec3& translation) {
  Joint j;
  j.axis = axis;
  j.to_next.p = translation;
  return j;
}

Primitive link_capsule(double length, double radius) {
  return Capsule{Vec3(-length, 0, 0), Vec3::Zero(), radius};
}

SerialChain make_planar(const std::vector<double>& lengths,
                        const std::vector<double>& radii) {
  std::vector<Joint> joints;
  std::vector<JointLimits> limits;
  std::vector<Primitive> geom;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    joints.push_back(revolute(Vec3::UnitZ(), Vec3(lengths[i], 0, 0)));
    limits.push_back(JointLimits{-M_PI, M_PI});
    geom.push_back(link_capsule(lengths[i], radii[i]));
  }
  return SerialChain(std::move(joints), std::move(limits), std::move(geom),
                     Transform::identity());
}

SerialChain make_spatial6() {
  std::vector<Joint> joints;
  std::vector<JointLimits> limits;
  std::vector<Primitive> geom;
  joints.push_back(revolute(Vec3::UnitZ(), Vec3(0, 0, 0.30)));
  geom.push_back(Capsule{Vec3(0, 0, -0.30), Vec3::Zero(), 0.05});
  joints.push_back(revolute(Vec3::UnitY(), Vec3(0.35, 0, 0)));
  geom.push_back(link_capsule(0.35, 0.045));
  joints.push_back(revolute(Vec3::UnitY(), Vec3(0.30, 0, 0)));
  geom.push_back(link_capsule(0.30, 0.04));
  joints.push_back(revolute(Vec3::UnitX(), Vec3(0.10, 0, 0)));
  geom.push_back(link_capsule(0.10, 0.035));
  joints.push_back(revolute(Vec3::UnitY(), Vec3(0.10, 0, 0)));
  geom.push_back(link_capsule(0.10, 0.035));
  joints.push_back(revolute(Vec3::UnitX(), Vec3(0.08, 0, 0)));
  geom.push_back(link_capsule(0.08, 0.03));
  for (int j = 0; j < 6; ++j) limits.push_back(JointLimits{-M_PI, M_PI});
  return SerialChain(std::move(joints), std::move(limits), std::move(geom),
                     Transform::identity());
}

double chain_reach(const SerialChain& chain) {
  double reach = 0.0;
  for (const Joint& j : chain.joints()) reach += j.to_next.p.norm();
  return reach;
}

bool is_planar(ChainPreset preset) { return preset != ChainPreset::kSpatial6; }

}  // namespace

SerialChain make_chain(ChainPreset preset) {
  // Distal links stay thinner than finger_length minus the clearance gate so
  // a grasp pose can hold the arm itself outside the 5 cm collision band.
  switch (preset) {
    case ChainPreset::kPlanar3:
      return make_planar({0.5, 0.4, 0.3}, {0.05, 0.04, 0.03});
    case ChainPreset::kPlanar7:
      return make_planar({0.22, 0.2, 0.18, 0.18, 0.16, 0.16, 0.14},
                         {0.035, 0.035, 0.03, 0.03, 0.03, 0.025, 0.025});
    case ChainPreset::kSpatial6: return make_spatial6();
  }
  throw std::invalid_argument("unknown chain preset");
}

Config default_start(ChainPreset preset) {
  switch (preset) {
    case ChainPreset::kPlanar3: {
      Config q(3);
      q << 0.9, 0.6, 0.5;
      return q;
    }
    case ChainPreset::kPlanar7: {
      Config q(7);
      q << 0.9, 0.3, 0.3, 0.2, 0.2, 0.2, 0.1;
      return q;
    }
    case ChainPreset::kSpatial6: {
      Config q(6);
      q << 0.0, -0.9, 1.4, 0.0, 0.6, 0.0;
      return q;
    }
  }
  throw std::invalid_argument("unknown chain preset");
}

namespace {

Primitive make_target_shape(const std::string& kind, const Vec3& center, Rng& rng,
                            bool planar) {
  if (kind == "sphere") {
    return Sphere{center, rng.uniform(0.025, 0.035)};
  }
  if (kind == "box") {
    OrientedBox box;
    box.center = center;
    box.half_extents = Vec3(rng.uniform(0.02, 0.032), rng.uniform(0.02, 0.032),
                            rng.uniform(0.02, 0.032));
    const double yaw = rng.uniform(-M_PI, M_PI);
    box.orientation = so3_exp(Vec3(0, 0, yaw));
    return box;
  }
  if (kind == "capsule") {
    const double half = rng.uniform(0.02, 0.04);
    Vec3 axis = planar ? Vec3(std::cos(rng.uniform(0, 2 * M_PI)),
                              std::sin(rng.uniform(0, 2 * M_PI)), 0.0)
                       : rng.unit_vector();
    return Capsule{center - half * axis, center + half * axis, rng.uniform(0.018, 0.028)};
  }
  throw std::invalid_argument("unknown target shape: " + kind);
}

/// Distance from the shape's center to its surface along -dir, by bisection.
double support_distance(const Primitive& shape, const Vec3& center, const Vec3& dir) {
  double lo = 0.0, hi = 0.5;
  while (signed_distance(shape, center - hi * dir) < 0.0 && hi < 4.0) hi *= 2.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (signed_distance(shape, center - mid * dir) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Vec3 primitive_center(const Primitive& shape) {
  return std::visit(
      [](const auto& s) -> Vec3 {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) return s.center;
        else if constexpr (std::is_same_v<T, OrientedBox>) return s.center;
        else return 0.5 * (s.a + s.b);
      },
      shape);
}

struct GoalSampler {
  const SerialChain& chain;
  const GripperModel& gripper;
  const SceneSdf& scene;
  const std::vector<BodyPoint>& body_points;
  const Config& q_start;
  bool planar = true;
  double feasible_margin = 0.055;

  bool arm_clear(const Config& q) const {
    const auto frames = chain.forward_kinematics(q);
    for (const BodyPoint& u : body_points) {
      const Vec3 x = chain.body_point_position(frames, u);
      // Gripper points may touch the target (that is the grasp); everything
      // must clear the other obstacles.
      const FieldEval obst = [&] {
        FieldEval best;
        for (const SdfField& f : scene.obstacles) {
          const FieldEval e = evaluate_field(f, x);
          if (e.distance < best.distance) best = e;
        }
        return best;
      }();
      if (obst.distance < feasible_margin) return false;
      if (!u.on_gripper && scene.target_shape) {
        if (signed_distance(*scene.target_shape, x) < feasible_margin) return false;
      }
    }
    return true;
  }

  /// IK toward a grasp pose approaching along `dir`; empty on failure.
  std::optional<Config> sample(const Vec3& dir, double roll, Rng& rng) const {
    const Primitive& shape = *scene.target_shape;
    const Vec3 center = primitive_center(shape);
    const double near = support_distance(shape, center, dir);
    const double standoff = near + gripper.params.finger_length;
    Transform goal_pose;
    goal_pose.p = center - standoff * dir;
    if (planar) {
      const Vec3 y = Vec3::UnitZ().cross(dir).normalized();
      goal_pose.R.col(0) = dir;
      goal_pose.R.col(1) = y;
      goal_pose.R.col(2) = Vec3::UnitZ();
    } else {
      Vec3 y = Vec3::UnitZ().cross(dir);
      if (y.squaredNorm() < 1e-8) y = Vec3::UnitX().cross(dir);
      y.normalize();
      goal_pose.R.col(0) = dir;
      goal_pose.R.col(1) = y;
      goal_pose.R.col(2) = dir.cross(y);
      Transform spin;
      spin.R = so3_exp(Vec3::UnitX() * roll);
      goal_pose = goal_pose * spin;
    }
    for (int attempt = 0; attempt < 4; ++attempt) {
      Config seed = q_start;
      if (attempt > 0) {
        for (int j = 0; j < seed.size(); ++j) {
          seed[j] = rng.uniform(chain.limits()[j].lo, chain.limits()[j].hi);
        }
      }
      const IkResult ik = inverse_kinematics(chain, goal_pose, seed, 1e-6, 150);
      if (!ik.success) continue;
      if (!arm_clear(ik.q)) continue;
      return ik.q;
    }
    return std::nullopt;
  }
};

void add_goal_if_new(GoalSet& goals, const Config& q) {
  for (const Config& g : goals.goals) {
    if ((g - q).lpNorm<Eigen::Infinity>() < 1e-3) return;
  }
  goals.goals.push_back(q);
  goals.feasible.push_back(1);
}

ProblemInstance generate_random_scene(const SceneSpec& spec) {
  Rng rng(spec.seed * 0x9e3779b97f4a7c15ULL + 0x2545F4914F6CDD1DULL);
  ProblemInstance inst{make_chain(spec.preset), make_parallel_jaw(), SceneSdf{},
                       GoalSet{}, default_start(spec.preset), spec.goal_count};
  const bool planar = is_planar(spec.preset);
  const double reach = chain_reach(inst.chain);

  const std::vector<BodyPoint> body_points =
      sample_body_points(inst.chain, &inst.gripper, 10, spec.seed);
  const auto start_frames = inst.chain.forward_kinematics(inst.q_start);
  std::vector<Vec3> start_points;
  for (const BodyPoint& u : body_points) {
    start_points.push_back(inst.chain.body_point_position(start_frames, u));
  }

  // Target in the lower workspace sector, clear of the start pose.
  Vec3 target_center;
  for (int attempt = 0;; ++attempt) {
    const double radius = rng.uniform(0.45, 0.75) * reach;
    const double angle = rng.uniform(-0.9, 0.5);
    target_center = Vec3(radius * std::cos(angle), radius * std::sin(angle), 0.0);
    if (!planar) target_center.z() = rng.uniform(0.15, 0.45);
    bool clear = true;
    for (const Vec3& p : start_points) {
      if ((p - target_center).norm() < 0.25) clear = false;
    }
    if (clear || attempt > 60) break;
  }
  inst.scene.target_shape = make_target_shape(spec.target_shape, target_center, rng, planar);
  inst.scene.target_surface =
      sample_surface(*inst.scene.target_shape, spec.surface_points, spec.seed ^ 0xABCDEF);

  // Obstacles: non-overlapping with the start pose, the base, and the target.
  const int count = spec.max_obstacles <= spec.min_obstacles
                        ? spec.min_obstacles
                        : rng.uniform_int(spec.min_obstacles, spec.max_obstacles);
  for (int i = 0; i < count; ++i) {
    for (int attempt = 0; attempt < 60; ++attempt) {
      const double radius = rng.uniform(0.25, 0.9) * reach;
      const double angle = rng.uniform(-1.2, 0.9);
      Vec3 c(radius * std::cos(angle), radius * std::sin(angle), 0.0);
      if (!planar) c.z() = rng.uniform(0.05, 0.55);
      Primitive prim;
      if (rng.uniform() < 0.6) {
        prim = Sphere{c, rng.uniform(0.04, 0.09)};
      } else {
        OrientedBox box;
        box.center = c;
        box.half_extents =
            Vec3(rng.uniform(0.03, 0.08), rng.uniform(0.03, 0.08), rng.uniform(0.03, 0.08));
        box.orientation = so3_exp(Vec3(0, 0, rng.uniform(-M_PI, M_PI)));
        prim = box;
      }
      bool ok = signed_distance(prim, Vec3::Zero()) > 0.18;
      for (const Vec3& p : start_points) {
        if (!ok) break;
        ok = signed_distance(prim, p) > 0.12;
      }
      if (ok) {
        // Keep a grasping corridor: the obstacle must not hug the target.
        double to_target = signed_distance(prim, target_center);
        ok = to_target > 0.16;
      }
      if (ok) {
        inst.scene.obstacles.emplace_back(prim);
        break;
      }
    }
  }

  // Approach-sampled goals.
  GoalSampler sampler{inst.chain, inst.gripper, inst.scene, body_points,
                      inst.q_start, planar};
  const int max_attempts = spec.goal_count * 20;
  for (int attempt = 0;
       attempt < max_attempts && inst.goals.size() < spec.goal_count; ++attempt) {
    Vec3 dir;
    if (planar) {
      const double a = rng.uniform(0.0, 2.0 * M_PI);
      dir = Vec3(std::cos(a), std::sin(a), 0.0);
    } else {
      dir = rng.unit_vector();
    }
    const double roll = rng.uniform(-M_PI, M_PI);
    if (auto q = sampler.sample(dir, roll, rng)) add_goal_if_new(inst.goals, *q);
  }
  return inst;
}

ProblemInstance generate_blocked_scene(const SceneSpec& spec) {
  // Two grasps of one target: goal A is nearer in configuration space but its
  // approach corridor is pinched by a pair of discs below the clearance gate;
  // goal B approaches from the open side. The initial tail estimate prefers A.
  Rng rng(spec.seed * 0xD1B54A32D192ED03ULL + 17);
  SceneSpec planar_spec = spec;
  planar_spec.preset = ChainPreset::kPlanar3;
  ProblemInstance inst{make_chain(planar_spec.preset), make_parallel_jaw(), SceneSdf{},
                       GoalSet{}, default_start(planar_spec.preset), 2};

  const double jitter_angle = rng.uniform(-0.08, 0.08);
  const double jitter_radius = rng.uniform(-0.03, 0.03);
  const double target_angle = -0.25 + jitter_angle;
  const double target_radius = 0.66 + jitter_radius;
  const Vec3 center(target_radius * std::cos(target_angle),
                    target_radius * std::sin(target_angle), 0.0);
  inst.scene.target_shape = Sphere{center, 0.03};
  inst.scene.target_surface =
      sample_surface(*inst.scene.target_shape, spec.surface_points, spec.seed ^ 0xABCDEF);

  const std::vector<BodyPoint> body_points =
      sample_body_points(inst.chain, &inst.gripper, 10, spec.seed);
  GoalSampler sampler{inst.chain, inst.gripper, inst.scene, body_points,
                      inst.q_start, true};

  // Goal A approaches radially outward (arm nearly straight, short in
  // configuration space); goal B comes over the top.
  const Vec3 dir_a(std::cos(target_angle), std::sin(target_angle), 0.0);
  const double angle_b = target_angle + 0.5 * M_PI + rng.uniform(-0.05, 0.05);
  const Vec3 dir_b(-std::cos(angle_b), -std::sin(angle_b), 0.0);

  const auto goal_a = sampler.sample(dir_a, 0.0, rng);
  const auto goal_b = sampler.sample(dir_b, 0.0, rng);
  if (goal_a) add_goal_if_new(inst.goals, *goal_a);
  if (goal_b) add_goal_if_new(inst.goals, *goal_b);

  // The pinch discs flank the radial corridor halfway to the target.
  const Vec3 mid = 0.52 * center;
  const Vec3 side(-std::sin(target_angle), std::cos(target_angle), 0.0);
  const double disc_r = 0.05;
  const double half_gap = disc_r + 0.052;  // passage clearance stays below 5cm
  inst.scene.obstacles.emplace_back(Primitive{Sphere{mid + half_gap * side, disc_r}});
  inst.scene.obstacles.emplace_back(Primitive{Sphere{mid - half_gap * side, disc_r}});
  return inst;
}

}  // namespace

std::optional<Config> sample_goal_for_scene(const SerialChain& chain,
                                            const GripperModel& gripper,
                                            const SceneSdf& scene,
                                            const std::vector<BodyPoint>& body_points,
                                            const Config& q_start, bool planar,
                                            const Vec3& dir, double roll, Rng& rng) {
  GoalSampler sampler{chain, gripper, scene, body_points, q_start, planar};
  return sampler.sample(dir, roll, rng);
}

ProblemInstance generate_scene(const SceneSpec& spec) {
  if (spec.family == "blocked") return generate_blocked_scene(spec);
  SceneSpec s = spec;
  if (spec.family == "free") {
    s.min_obstacles = 0;
    s.max_obstacles = 0;
  } else if (spec.family != "random") {
    throw std::invalid_argument("unknown scene family: " + spec.family);
  }
  return generate_random_scene(s);
}

double collision_metric(const Trajectory& traj, const SceneSdf& scene,
                        const SerialChain& chain,
                        const std::vector<BodyPoint>& body_points,
                        const TargetPolicy& policy, int steps) {
  const std::vector<Config> dense = interpolate(traj, steps);
  double sum = 0.0;
  for (const Config& q : dense) {
    const auto frames = chain.forward_kinematics(q);
    for (const BodyPoint& u : body_points) {
      const Vec3 x = chain.body_point_position(frames, u);
      const FieldEval e = scene.signed_distance(x, policy.include_target(u, x));
      if (e.distance < scene.clearance) sum += obstacle_cost(e.distance, scene.epsilon);
    }
  }
  return sum;
}

double smoothness_metric(const Trajectory& traj) { return 2.0 * prior_cost(traj); }

bool planning_success(double collision, double smoothness, double smoothness_max) {
  return collision == 0.0 && smoothness <= smoothness_max;
}

MetricsReport evaluate_plan(const ProblemInstance& inst, const PlanResult& result,
                            const PlannerConfig& cfg) {
  MetricsReport report;
  const std::vector<BodyPoint> body_points = sample_body_points(
      inst.chain, &inst.gripper, cfg.body_points_per_part, cfg.seed);
  const Config goal = result.trajectory.endpoint();
  const TargetPolicy policy = TargetPolicy::near_goal(
      inst.chain.end_effector_pose(goal).p, inst.scene.approach_radius);
  report.collision =
      collision_metric(result.trajectory, inst.scene, inst.chain, body_points, policy);
  report.smoothness = smoothness_metric(result.trajectory);
  const double smooth_max =
      cfg.pre_termination.smoothness_max > 0.0
          ? cfg.pre_termination.smoothness_max
          : 3.0 * straight_line_smoothness(result.trajectory.start, goal,
                                           result.trajectory.n());
  report.planning_success =
      result.status != PlanStatus::kNoFeasibleGoal &&
      planning_success(report.collision, report.smoothness, smooth_max);
  if (result.selected_goal_index >= 0) {
    report.grasp_cost = grasp_cost(result.refined_goals.goals[result.selected_goal_index],
                                   inst.chain, inst.gripper, inst.scene.target_surface,
                                   inst.scene, body_points, cfg.grasp);
  }
  report.time = result.wall_time;
  return report;
}

OracleResult oracle_best_goal(const ProblemInstance& inst, const PlannerConfig& cfg,
                              int max_iters, double tol) {
  if (inst.goals.feasible_count() == 0)
    throw std::runtime_error("no feasible goal for oracle");
  const std::vector<BodyPoint> body_points = sample_body_points(
      inst.chain, &inst.gripper, cfg.body_points_per_part, cfg.seed);
  const SmoothnessOperator op(cfg.resolution, 1.0 / (cfg.resolution + 1));
  OracleResult best;
  best.cost = std::numeric_limits<double>::infinity();
  for (int g = 0; g < inst.goals.size(); ++g) {
    if (!inst.goals.is_feasible(g)) continue;
    const Config& goal = inst.goals.goals[g];
    const TargetPolicy policy = TargetPolicy::near_goal(
        inst.chain.end_effector_pose(goal).p, inst.scene.approach_radius);
    Trajectory traj = init_trajectory(inst.q_start, goal, cfg.resolution);
    for (int i = 0; i < max_iters; ++i) {
      const Eigen::MatrixXd v =
          motion_gradient(traj, inst.scene, inst.chain, body_points, cfg.motion, policy);
      const Trajectory next = chomp_proj_step(traj, goal, v, cfg.motion.eta_motion, op);
      const double delta =
          (next.waypoints - traj.waypoints).lpNorm<Eigen::Infinity>();
      traj = next;
      if (delta < tol) break;
    }
    const double cost =
        motion_cost(traj, inst.scene, inst.chain, body_points, cfg.motion.lambda, policy);
    if (cost < best.cost - 1e-12 || best.index < 0) {
      best.cost = cost;
      best.index = g;
    }
  }
  return best;
}

namespace {

template <typename Fn>
void parallel_for(int count, int jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  const int n_workers = std::min(jobs, count);
  workers.reserve(n_workers);
  for (int w = 0; w < n_workers; ++w) {
    workers.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (std::thread& t : workers) t.join();
}

Config jittered_start(const ProblemInstance& inst, const PlannerConfig& cfg, int run) {
  if (run == 0) return inst.q_start;
  Rng rng(cfg.seed * 7919 + static_cast<std::uint64_t>(run) * 104729 + 13);
  Config q = inst.q_start;
  for (int j = 0; j < q.size(); ++j) q[j] += 0.05 * rng.normal();
  q = inst.chain.clamp_to_limits(q);
  // Fall back to the nominal start if the jitter lands near an obstacle.
  const std::vector<BodyPoint> pts =
      sample_body_points(inst.chain, &inst.gripper, cfg.body_points_per_part, cfg.seed);
  const auto frames = inst.chain.forward_kinematics(q);
  for (const BodyPoint& u : pts) {
    const Vec3 x = inst.chain.body_point_position(frames, u);
    if (inst.scene.signed_distance(x, true).distance < inst.scene.clearance) {
      return inst.q_start;
    }
  }
  return q;
}

}  // namespace

std::vector<SelectorRow> compare_selectors(const std::vector<SceneSpec>& specs,
                                           const std::vector<Selector>& selectors,
                                           int runs, const PlannerConfig& base,
                                           int jobs) {
  struct Cell {
    MetricsReport report;
  };
  const int tasks = static_cast<int>(specs.size()) * runs;
  std::vector<std::vector<Cell>> results(
      static_cast<std::size_t>(tasks), std::vector<Cell>(selectors.size()));
  parallel_for(tasks, jobs, [&](int task) {
    const int spec_idx = task / runs;
    const int run = task % runs;
    const ProblemInstance inst = generate_scene(specs[spec_idx]);
    for (std::size_t s = 0; s < selectors.size(); ++s) {
      PlannerConfig cfg = base;
      cfg.selector = selectors[s];
      cfg.seed = base.seed + static_cast<std::uint64_t>(task) * 31 + s;
      PlanProblem problem{inst.scene, inst.chain, inst.gripper, inst.goals,
                          jittered_start(inst, cfg, run)};
      const PlanResult result = plan(problem, cfg);
      results[task][s].report = evaluate_plan(inst, result, cfg);
    }
  });

  std::vector<SelectorRow> rows;
  for (std::size_t s = 0; s < selectors.size(); ++s) {
    SelectorRow row;
    row.selector = selector_name(selectors[s]);
    for (int task = 0; task < tasks; ++task) {
      const MetricsReport& r = results[task][s].report;
      row.planning_rate += r.planning_success ? 1.0 : 0.0;
      row.smoothness += r.smoothness;
      row.collision += r.collision;
      row.grasp_cost += r.grasp_cost;
      row.time += r.time;
    }
    if (tasks > 0) {
      row.planning_rate /= tasks;
      row.smoothness /= tasks;
      row.collision /= tasks;
      row.grasp_cost /= tasks;
      row.time /= tasks;
    }
    row.runs = tasks;
    rows.push_back(row);
  }
  return rows;
}

std::vector<AblationRow> ablation(const std::vector<SceneSpec>& specs,
                                  const std::string& parameter,
                                  const std::vector<double>& values,
                                  const PlannerConfig& base, int jobs) {
  if (parameter != "n" && parameter != "lambda")
    throw std::invalid_argument("ablation parameter must be n or lambda");
  std::vector<AblationRow> rows(values.size());
  for (std::size_t v = 0; v < values.size(); ++v) {
    PlannerConfig cfg = base;
    if (parameter == "n") {
      cfg.resolution = static_cast<int>(values[v]);
    } else {
      cfg.motion.lambda = values[v];
    }
    std::vector<MetricsReport> reports(specs.size());
    parallel_for(static_cast<int>(specs.size()), jobs, [&](int i) {
      const ProblemInstance inst = generate_scene(specs[i]);
      PlanProblem problem{inst.scene, inst.chain, inst.gripper, inst.goals, inst.q_start};
      const PlanResult result = plan(problem, cfg);
      reports[i] = evaluate_plan(inst, result, cfg);
    });
    AblationRow row;
    row.value = values[v];
    for (const MetricsReport& r : reports) {
      row.planning_rate += r.planning_success ? 1.0 : 0.0;
      row.smoothness += r.smoothness;
      row.collision += r.collision;
      row.time += r.time;
    }
    if (!specs.empty()) {
      const double m = static_cast<double>(specs.size());
      row.planning_rate /= m;
      row.smoothness /= m;
      row.collision /= m;
      row.time /= m;
    }
    rows[v] = row;
  }
  return rows;
}

}  // namespace mgopt
