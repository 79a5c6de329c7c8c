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

#ifndef MGOPT_GRASPREF_HPP
#define MGOPT_GRASPREF_HPP

#include <vector>

#include "goalsel.hpp"

namespace mgopt {

struct GraspRefineConfig {
  double alpha = 0.01;    // normal alignment weight
  double beta = 0.001;    // arm collision weight
  double gamma = 0.5;     // hand collision weight
  double eta_grasp = 0.05;
  int steps_per_iter = 1;
  double eps_hand = 0.005;  // hand SDF padding, meters
};

/// Matched contact/object pair. Contact coordinates are carried both in the
/// world and in the gripper frame; twists are taken about the gripper frame.
struct CorrespondencePair {
  Vec3 contact_world;
  Vec3 contact_normal_world;
  Vec3 contact_local;
  Vec3 contact_normal_local;
  Vec3 object_point;
  Vec3 object_normal;
  int object_index = -1;
  double distance = 0.0;
};

struct Contacts {
  std::vector<Vec3> points;   // world
  std::vector<Vec3> normals;  // world, unit
  Transform pose;             // gripper frame in the world
};

/// Gripper contacts pushed through the end-effector frame at configuration g.
Contacts transform_contacts(const SerialChain& chain, const GripperModel& gripper,
                            const Config& g);

/// Nearest object point per contact through the surface index. Object points
/// claimed by several contacts keep only the closest contact.
std::vector<CorrespondencePair> nearest_correspondences(const Contacts& contacts,
                                                        const GripperModel& gripper,
                                                        const ObjectSurface& object);

/// Point-to-plane error sum <u_h - u_o, n_o>^2.
double point_match_loss(const std::vector<CorrespondencePair>& corr);

/// Anti-alignment error sum (<n_h, n_o> + 1)^2; zero at antipodal normals.
double normal_align_loss(const std::vector<CorrespondencePair>& corr);

double isf_loss(const std::vector<CorrespondencePair>& corr, double alpha);

/// Gradient of the ISF loss with respect to a gripper twist [omega; v] in
/// world coordinates anchored at the gripper origin, correspondences frozen.
Vec6 isf_twist_gradient(const std::vector<CorrespondencePair>& corr, double alpha,
                        const Transform& pose);

struct HandCollision {
  double cost = 0.0;
  Vec6 twist_gradient = Vec6::Zero();  // body twist of the gripper frame
};

/// Object surface points evaluated in the hand SDF; gradients push the hand
/// away from penetrating points.
HandCollision hand_collision_cost(const Config& g, const SerialChain& chain,
                                  const GripperModel& gripper,
                                  const ObjectSurface& object, double eps_hand);

/// Single-configuration arm obstacle cost (no displacement factor) and its
/// configuration-space gradient. Gripper points near the target ignore it.
struct ArmCollision {
  double cost = 0.0;
  Config gradient;
};

ArmCollision arm_collision_cost(const Config& g, const SerialChain& chain,
                                const SceneSdf& scene,
                                const std::vector<BodyPoint>& body_points);

/// f_isf + gamma (f_hand + beta f_arm).
double grasp_cost(const Config& g, const SerialChain& chain, const GripperModel& gripper,
                  const ObjectSurface& object, const SceneSdf& scene,
                  const std::vector<BodyPoint>& body_points, const GraspRefineConfig& cfg);

struct IsfStepResult {
  Config g;
  bool stepped = false;  // false when fewer than 2 correspondences survive
};

/// One configuration-space surface-fitting step: the twist gradient of the
/// grasp objective is mapped through the exponential map, pulled back through
/// the end-effector Jacobian transpose, combined with the arm collision
/// gradient, and applied with a fixed step size. The result respects joint
/// limits.
IsfStepResult cspace_isf_step(const Config& g, const SerialChain& chain,
                              const GripperModel& gripper, const ObjectSurface& object,
                              const SceneSdf& scene,
                              const std::vector<BodyPoint>& body_points,
                              const GraspRefineConfig& cfg);

}  // namespace mgopt

#endif  // MGOPT_GRASPREF_HPP
