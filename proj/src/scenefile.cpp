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

#include "scenefile.hpp"

#include <json.hpp>
#include <set>

#include "csvio.hpp"

namespace mgopt {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    if (allowed.find(item.key()) == allowed.end()) {
      throw ParseError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

Vec3 parse_vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3)
    throw ParseError(where + " must be an array of 3 numbers");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json dump_vec3(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Primitive parse_primitive(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + " must be an object");
  const std::string type = j.value("type", "");
  if (type == "sphere") {
    reject_unknown_keys(j, {"type", "center", "radius"}, where);
    Sphere s{parse_vec3(j.at("center"), where + ".center"), j.at("radius").get<double>()};
    validate(Primitive{s});
    return s;
  }
  if (type == "box") {
    reject_unknown_keys(j, {"type", "center", "half_extents", "rpy"}, where);
    OrientedBox b;
    b.center = parse_vec3(j.at("center"), where + ".center");
    b.half_extents = parse_vec3(j.at("half_extents"), where + ".half_extents");
    if (j.contains("rpy")) {
      b.orientation = transform_from_rpy(Vec3::Zero(), parse_vec3(j["rpy"], where + ".rpy")).R;
    }
    validate(Primitive{b});
    return b;
  }
  if (type == "capsule") {
    reject_unknown_keys(j, {"type", "a", "b", "radius"}, where);
    Capsule c{parse_vec3(j.at("a"), where + ".a"), parse_vec3(j.at("b"), where + ".b"),
              j.at("radius").get<double>()};
    validate(Primitive{c});
    return c;
  }
  throw ParseError(where + " has unknown primitive type '" + type + "'");
}

json dump_primitive(const Primitive& prim) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          return json{{"type", "sphere"}, {"center", dump_vec3(s.center)}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, OrientedBox>) {
          return json{{"type", "box"},
                      {"center", dump_vec3(s.center)},
                      {"half_extents", dump_vec3(s.half_extents)},
                      {"rpy", dump_vec3(rpy_from_rotation(s.orientation))}};
        } else {
          return json{{"type", "capsule"},
                      {"a", dump_vec3(s.a)},
                      {"b", dump_vec3(s.b)},
                      {"radius", s.radius}};
        }
      },
      prim);
}

Transform parse_offset(const json& j, const std::string& where) {
  reject_unknown_keys(j, {"translation", "rotation_rpy"}, where);
  Transform t;
  if (j.contains("translation")) t.p = parse_vec3(j["translation"], where + ".translation");
  if (j.contains("rotation_rpy")) {
    t.R = transform_from_rpy(Vec3::Zero(), parse_vec3(j["rotation_rpy"], where)).R;
  }
  return t;
}

json dump_offset(const Transform& t) {
  return json{{"translation", dump_vec3(t.p)},
              {"rotation_rpy", dump_vec3(rpy_from_rotation(t.R))}};
}

SerialChain parse_chain(const json& j) {
  if (!j.is_object()) throw ParseError("chain must be an object");
  if (j.contains("preset")) {
    reject_unknown_keys(j, {"preset"}, "chain");
    ChainPreset preset;
    if (!chain_preset_from_name(j["preset"].get<std::string>(), preset))
      throw ParseError("unknown chain preset '" + j["preset"].get<std::string>() + "'");
    return make_chain(preset);
  }
  reject_unknown_keys(j, {"joints", "limits", "links", "ee_offset"}, "chain");
  std::vector<Joint> joints;
  for (const json& jj : j.at("joints")) {
    reject_unknown_keys(jj, {"axis", "translation", "rotation_rpy"}, "chain.joints[]");
    Joint joint;
    joint.axis = parse_vec3(jj.at("axis"), "chain.joints[].axis");
    joint.to_next.p = parse_vec3(jj.at("translation"), "chain.joints[].translation");
    if (jj.contains("rotation_rpy")) {
      joint.to_next.R =
          transform_from_rpy(Vec3::Zero(), parse_vec3(jj["rotation_rpy"], "chain.joints[]")).R;
    }
    joints.push_back(joint);
  }
  std::vector<JointLimits> limits;
  for (const json& jl : j.at("limits")) {
    if (!jl.is_array() || jl.size() != 2)
      throw ParseError("chain.limits[] entries must be [lo, hi]");
    limits.push_back(JointLimits{jl[0].get<double>(), jl[1].get<double>()});
  }
  std::vector<Primitive> links;
  if (j.contains("links")) {
    for (const json& jp : j["links"]) links.push_back(parse_primitive(jp, "chain.links[]"));
  }
  Transform ee_offset;
  if (j.contains("ee_offset")) ee_offset = parse_offset(j["ee_offset"], "chain.ee_offset");
  try {
    return SerialChain(std::move(joints), std::move(limits), std::move(links), ee_offset);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("chain: ") + e.what());
  }
}

json dump_chain(const SerialChain& chain) {
  json joints = json::array();
  for (const Joint& joint : chain.joints()) {
    joints.push_back(json{{"axis", dump_vec3(joint.axis)},
                          {"translation", dump_vec3(joint.to_next.p)},
                          {"rotation_rpy", dump_vec3(rpy_from_rotation(joint.to_next.R))}});
  }
  json limits = json::array();
  for (const JointLimits& l : chain.limits()) limits.push_back(json::array({l.lo, l.hi}));
  json links = json::array();
  for (const Primitive& p : chain.link_geometry()) links.push_back(dump_primitive(p));
  return json{{"joints", joints},
              {"limits", limits},
              {"links", links},
              {"ee_offset", dump_offset(chain.end_effector_offset())}};
}

GripperModel parse_gripper(const json& j) {
  reject_unknown_keys(j,
                      {"finger_length", "gap", "finger_thickness", "finger_height",
                       "palm_thickness", "contacts_per_finger", "palm_contacts"},
                      "gripper");
  GripperParams p;
  p.finger_length = j.value("finger_length", p.finger_length);
  p.gap = j.value("gap", p.gap);
  p.finger_thickness = j.value("finger_thickness", p.finger_thickness);
  p.finger_height = j.value("finger_height", p.finger_height);
  p.palm_thickness = j.value("palm_thickness", p.palm_thickness);
  p.contacts_per_finger = j.value("contacts_per_finger", p.contacts_per_finger);
  p.palm_contacts = j.value("palm_contacts", p.palm_contacts);
  return make_parallel_jaw(p);
}

json dump_gripper(const GripperModel& g) {
  const GripperParams& p = g.params;
  return json{{"finger_length", p.finger_length},
              {"gap", p.gap},
              {"finger_thickness", p.finger_thickness},
              {"finger_height", p.finger_height},
              {"palm_thickness", p.palm_thickness},
              {"contacts_per_finger", p.contacts_per_finger},
              {"palm_contacts", p.palm_contacts}};
}

PlannerConfig parse_planner(const json& j, PlannerConfig cfg) {
  reject_unknown_keys(
      j, {"selector", "horizon", "resolution", "lambda", "eta_motion", "worst_points",
          "isf_steps", "body_points_per_part", "seed", "alpha", "beta", "gamma",
          "eta_grasp", "eps_hand", "smoothness_max", "grasp_cost_max",
          "require_collision_free", "eta_ol"},
      "planner");
  if (j.contains("selector")) {
    const std::string name = j["selector"].get<std::string>();
    if (!selector_from_name(name, cfg.selector))
      throw ParseError("unknown selector '" + name + "'");
  }
  cfg.horizon = j.value("horizon", cfg.horizon);
  cfg.resolution = j.value("resolution", cfg.resolution);
  cfg.motion.lambda = j.value("lambda", cfg.motion.lambda);
  cfg.motion.eta_motion = j.value("eta_motion", cfg.motion.eta_motion);
  cfg.motion.worst_points = j.value("worst_points", cfg.motion.worst_points);
  cfg.isf_steps_per_iter = j.value("isf_steps", cfg.isf_steps_per_iter);
  cfg.body_points_per_part = j.value("body_points_per_part", cfg.body_points_per_part);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.grasp.alpha = j.value("alpha", cfg.grasp.alpha);
  cfg.grasp.beta = j.value("beta", cfg.grasp.beta);
  cfg.grasp.gamma = j.value("gamma", cfg.grasp.gamma);
  cfg.grasp.eta_grasp = j.value("eta_grasp", cfg.grasp.eta_grasp);
  cfg.grasp.eps_hand = j.value("eps_hand", cfg.grasp.eps_hand);
  cfg.pre_termination.smoothness_max =
      j.value("smoothness_max", cfg.pre_termination.smoothness_max);
  if (j.contains("grasp_cost_max")) {
    // Zero encodes "no gate"; JSON cannot carry infinity.
    const double v = j["grasp_cost_max"].get<double>();
    cfg.pre_termination.grasp_cost_max =
        v <= 0.0 ? std::numeric_limits<double>::infinity() : v;
  }
  cfg.pre_termination.require_collision_free =
      j.value("require_collision_free", cfg.pre_termination.require_collision_free);
  cfg.eta_ol = j.value("eta_ol", cfg.eta_ol);
  return cfg;
}

json dump_planner(const PlannerConfig& cfg) {
  const double grasp_gate = std::isinf(cfg.pre_termination.grasp_cost_max)
                                ? 0.0
                                : cfg.pre_termination.grasp_cost_max;
  return json{{"selector", selector_name(cfg.selector)},
              {"horizon", cfg.horizon},
              {"resolution", cfg.resolution},
              {"lambda", cfg.motion.lambda},
              {"eta_motion", cfg.motion.eta_motion},
              {"worst_points", cfg.motion.worst_points},
              {"isf_steps", cfg.isf_steps_per_iter},
              {"body_points_per_part", cfg.body_points_per_part},
              {"seed", cfg.seed},
              {"alpha", cfg.grasp.alpha},
              {"beta", cfg.grasp.beta},
              {"gamma", cfg.grasp.gamma},
              {"eta_grasp", cfg.grasp.eta_grasp},
              {"eps_hand", cfg.grasp.eps_hand},
              {"smoothness_max", cfg.pre_termination.smoothness_max},
              {"grasp_cost_max", grasp_gate},
              {"require_collision_free", cfg.pre_termination.require_collision_free},
              {"eta_ol", cfg.eta_ol}};
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());  // includes line and column
  }
}

}  // namespace

SceneFileData parse_scene_text(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("scene document must be a JSON object");
  reject_unknown_keys(
      doc, {"chain", "gripper", "sdf", "obstacles", "target", "start", "goals", "planner"},
      "scene");

  SceneFileData data{
      ProblemInstance{parse_chain(doc.at("chain")),
                      doc.contains("gripper") ? parse_gripper(doc["gripper"])
                                              : make_parallel_jaw(),
                      SceneSdf{}, GoalSet{}, Config{}, 0},
      PlannerConfig{}};
  ProblemInstance& inst = data.instance;

  if (doc.contains("sdf")) {
    const json& j = doc["sdf"];
    reject_unknown_keys(j, {"epsilon", "clearance", "approach_radius"}, "sdf");
    inst.scene.epsilon = j.value("epsilon", inst.scene.epsilon);
    inst.scene.clearance = j.value("clearance", inst.scene.clearance);
    inst.scene.approach_radius = j.value("approach_radius", inst.scene.approach_radius);
    if (!(inst.scene.epsilon > inst.scene.clearance && inst.scene.clearance > 0.0))
      throw ParseError("sdf requires epsilon > clearance > 0");
  }
  if (doc.contains("obstacles")) {
    if (!doc["obstacles"].is_array()) throw ParseError("obstacles must be an array");
    for (const json& jp : doc["obstacles"]) {
      inst.scene.obstacles.emplace_back(parse_primitive(jp, "obstacles[]"));
    }
  }

  {
    const json& j = doc.at("target");
    reject_unknown_keys(j, {"shape", "surface_points", "surface_seed"}, "target");
    inst.scene.target_shape = parse_primitive(j.at("shape"), "target.shape");
    const int count = j.value("surface_points", 1000);
    const std::uint64_t seed = j.value("surface_seed", std::uint64_t{0});
    inst.scene.target_surface = sample_surface(*inst.scene.target_shape, count, seed);
  }

  {
    const json& j = doc.at("start");
    if (!j.is_array() || static_cast<int>(j.size()) != inst.chain.dof())
      throw ParseError("start must be an array with one entry per joint");
    inst.q_start.resize(inst.chain.dof());
    for (int i = 0; i < inst.chain.dof(); ++i) inst.q_start[i] = j[i].get<double>();
  }

  if (doc.contains("planner")) data.planner = parse_planner(doc["planner"], PlannerConfig{});

  {
    const json& j = doc.at("goals");
    reject_unknown_keys(j, {"configurations", "feasible", "sampler"}, "goals");
    if (j.contains("sampler") && j.contains("configurations"))
      throw ParseError("goals: give either configurations or a sampler, not both");
    if (j.contains("configurations")) {
      for (const json& jg : j["configurations"]) {
        if (!jg.is_array() || static_cast<int>(jg.size()) != inst.chain.dof())
          throw ParseError("goals.configurations[] entries must match the chain dof");
        Config g(inst.chain.dof());
        for (int i = 0; i < inst.chain.dof(); ++i) g[i] = jg[i].get<double>();
        inst.goals.goals.push_back(g);
        inst.goals.feasible.push_back(1);
      }
      if (j.contains("feasible")) {
        const json& jf = j["feasible"];
        if (jf.size() != inst.goals.goals.size())
          throw ParseError("goals.feasible must match goals.configurations in length");
        for (std::size_t i = 0; i < inst.goals.feasible.size(); ++i) {
          inst.goals.feasible[i] = jf[i].get<int>() != 0;
        }
      }
      inst.goals_requested = inst.goals.size();
    } else if (j.contains("sampler")) {
      const json& js = j["sampler"];
      reject_unknown_keys(js, {"count", "seed"}, "goals.sampler");
      const int count = js.value("count", 30);
      const std::uint64_t seed = js.value("seed", std::uint64_t{0});
      // Reuse the benchmark sampler against the explicit scene.
      Rng rng(seed * 0x9e3779b97f4a7c15ULL + 1);
      const std::vector<BodyPoint> pts =
          sample_body_points(inst.chain, &inst.gripper, 10, seed);
      bool planar = true;
      for (const Joint& joint : inst.chain.joints()) {
        if ((joint.axis - Vec3::UnitZ()).norm() > 1e-9) planar = false;
      }
      inst.goals_requested = count;
      const int max_attempts = count * 20;
      for (int attempt = 0; attempt < max_attempts && inst.goals.size() < count; ++attempt) {
        Vec3 dir;
        if (planar) {
          const double a = rng.uniform(0.0, 2.0 * M_PI);
          dir = Vec3(std::cos(a), std::sin(a), 0.0);
        } else {
          dir = rng.unit_vector();
        }
        const double roll = rng.uniform(-M_PI, M_PI);
        if (auto q = sample_goal_for_scene(inst.chain, inst.gripper, inst.scene, pts,
                                           inst.q_start, planar, dir, roll, rng)) {
          bool fresh = true;
          for (const Config& g : inst.goals.goals) {
            if ((g - *q).lpNorm<Eigen::Infinity>() < 1e-3) fresh = false;
          }
          if (fresh) {
            inst.goals.goals.push_back(*q);
            inst.goals.feasible.push_back(1);
          }
        }
      }
    } else {
      throw ParseError("goals must contain configurations or a sampler");
    }
  }
  return data;
}

SceneFileData load_scene_file(const std::string& path) {
  return parse_scene_text(read_text_file(path));
}

PlannerConfig parse_planner_overrides(const std::string& json_text,
                                      const PlannerConfig& base) {
  return parse_planner(parse_document(json_text), base);
}

std::string write_scene_text(const ProblemInstance& instance, const PlannerConfig& planner) {
  json doc;
  doc["chain"] = dump_chain(instance.chain);
  doc["gripper"] = dump_gripper(instance.gripper);
  doc["sdf"] = json{{"epsilon", instance.scene.epsilon},
                    {"clearance", instance.scene.clearance},
                    {"approach_radius", instance.scene.approach_radius}};
  json obstacles = json::array();
  for (const SdfField& f : instance.scene.obstacles) {
    if (const Primitive* prim = std::get_if<Primitive>(&f)) {
      obstacles.push_back(dump_primitive(*prim));
    }
    // Grid fields travel through the separate binary block format.
  }
  doc["obstacles"] = obstacles;
  doc["target"] = json{{"shape", dump_primitive(*instance.scene.target_shape)},
                       {"surface_points",
                        static_cast<int>(instance.scene.target_surface.points.size())},
                       {"surface_seed", 0}};
  json start = json::array();
  for (int i = 0; i < instance.q_start.size(); ++i) start.push_back(instance.q_start[i]);
  doc["start"] = start;
  json configs = json::array();
  json feasible = json::array();
  for (int g = 0; g < instance.goals.size(); ++g) {
    json jg = json::array();
    for (int i = 0; i < instance.goals.goals[g].size(); ++i) {
      jg.push_back(instance.goals.goals[g][i]);
    }
    configs.push_back(jg);
    feasible.push_back(instance.goals.is_feasible(g) ? 1 : 0);
  }
  doc["goals"] = json{{"configurations", configs}, {"feasible", feasible}};
  doc["planner"] = dump_planner(planner);
  return doc.dump(2) + "\n";
}

void save_scene_file(const std::string& path, const ProblemInstance& instance,
                     const PlannerConfig& planner) {
  write_text_file(path, write_scene_text(instance, planner));
}

std::vector<ManifestEntry> parse_manifest_text(const std::string& text) {
  const json doc = parse_document(text);
  reject_unknown_keys(doc, {"entries"}, "manifest");
  std::vector<ManifestEntry> out;
  for (const json& je : doc.at("entries")) {
    reject_unknown_keys(je,
                        {"name", "type", "scenes", "runs", "seed", "preset", "obstacles",
                         "goals", "family", "target", "selectors", "parameter", "values",
                         "planner", "surface_points"},
                        "manifest.entries[]");
    ManifestEntry entry;
    entry.name = je.value("name", std::string("entry") + std::to_string(out.size()));
    entry.type = je.value("type", std::string("selectors"));
    if (entry.type != "selectors" && entry.type != "ablation")
      throw ParseError("manifest entry type must be selectors or ablation");
    entry.scenes = je.value("scenes", 1);
    entry.runs = je.value("runs", 1);
    entry.seed = je.value("seed", std::uint64_t{0});
    if (je.contains("preset")) {
      if (!chain_preset_from_name(je["preset"].get<std::string>(),
                                  entry.scene_template.preset))
        throw ParseError("unknown chain preset in manifest");
    }
    if (je.contains("obstacles")) {
      const json& jo = je["obstacles"];
      if (!jo.is_array() || jo.size() != 2)
        throw ParseError("manifest obstacles must be [min, max]");
      entry.scene_template.min_obstacles = jo[0].get<int>();
      entry.scene_template.max_obstacles = jo[1].get<int>();
    }
    entry.scene_template.goal_count = je.value("goals", entry.scene_template.goal_count);
    entry.scene_template.family = je.value("family", entry.scene_template.family);
    entry.scene_template.target_shape = je.value("target", entry.scene_template.target_shape);
    entry.scene_template.surface_points =
        je.value("surface_points", entry.scene_template.surface_points);
    if (je.contains("selectors")) {
      for (const json& js : je["selectors"]) {
        Selector s;
        if (!selector_from_name(js.get<std::string>(), s))
          throw ParseError("unknown selector '" + js.get<std::string>() + "' in manifest");
        entry.selectors.push_back(s);
      }
    }
    entry.parameter = je.value("parameter", std::string());
    if (je.contains("values")) {
      for (const json& jv : je["values"]) entry.values.push_back(jv.get<double>());
    }
    if (entry.type == "ablation" && (entry.parameter.empty() || entry.values.empty()))
      throw ParseError("ablation entries need parameter and values");
    if (je.contains("planner")) entry.planner = parse_planner(je["planner"], entry.planner);
    out.push_back(entry);
  }
  return out;
}

std::vector<ManifestEntry> load_manifest_file(const std::string& path) {
  return parse_manifest_text(read_text_file(path));
}

std::vector<SceneSpec> manifest_scene_specs(const ManifestEntry& entry) {
  std::vector<SceneSpec> specs;
  for (int i = 0; i < entry.scenes; ++i) {
    SceneSpec spec = entry.scene_template;
    spec.seed = entry.seed + static_cast<std::uint64_t>(i);
    specs.push_back(spec);
  }
  return specs;
}

}  // namespace mgopt
