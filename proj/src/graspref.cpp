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

#include "graspref.hpp"

#include <map>
#include <stdexcept>

namespace mgopt {

Contacts transform_contacts(const SerialChain& chain, const GripperModel& gripper,
                            const Config& g) {
  Contacts out;
  out.pose = chain.end_effector_pose(g);
  out.points.reserve(gripper.contact_points.size());
  out.normals.reserve(gripper.contact_normals.size());
  for (const Vec3& p : gripper.contact_points) out.points.push_back(out.pose.apply(p));
  for (const Vec3& n : gripper.contact_normals) out.normals.push_back(out.pose.rotate(n));
  return out;
}

std::vector<CorrespondencePair> nearest_correspondences(const Contacts& contacts,
                                                        const GripperModel& gripper,
                                                        const ObjectSurface& object) {
  if (object.points.empty()) throw std::invalid_argument("object surface is empty");
  struct Candidate {
    int contact;
    int object;
    double dist;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(contacts.points.size());
  for (std::size_t j = 0; j < contacts.points.size(); ++j) {
    const KdTree::Hit hit = object.index.nearest(contacts.points[j]);
    candidates.push_back({static_cast<int>(j), hit.index, std::sqrt(hit.distance_sq)});
  }
  // Repeated object points are filtered: the closest contact keeps the point.
  std::map<int, int> keeper;  // object index -> candidate index
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto it = keeper.find(candidates[i].object);
    if (it == keeper.end() || candidates[i].dist < candidates[it->second].dist) {
      keeper[candidates[i].object] = static_cast<int>(i);
    }
  }
  std::vector<CorrespondencePair> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    if (keeper[c.object] != static_cast<int>(i)) continue;
    CorrespondencePair pair;
    pair.contact_world = contacts.points[c.contact];
    pair.contact_normal_world = contacts.normals[c.contact];
    pair.contact_local = gripper.contact_points[c.contact];
    pair.contact_normal_local = gripper.contact_normals[c.contact];
    pair.object_point = object.points[c.object];
    pair.object_normal = object.normals[c.object];
    pair.object_index = c.object;
    pair.distance = c.dist;
    out.push_back(pair);
  }
  return out;
}

double point_match_loss(const std::vector<CorrespondencePair>& corr) {
  double sum = 0.0;
  for (const CorrespondencePair& p : corr) {
    const double e = (p.contact_world - p.object_point).dot(p.object_normal);
    sum += e * e;
  }
  return sum;
}

double normal_align_loss(const std::vector<CorrespondencePair>& corr) {
  double sum = 0.0;
  for (const CorrespondencePair& p : corr) {
    const double a = p.contact_normal_world.dot(p.object_normal) + 1.0;
    sum += a * a;
  }
  return sum;
}

double isf_loss(const std::vector<CorrespondencePair>& corr, double alpha) {
  return point_match_loss(corr) + alpha * normal_align_loss(corr);
}

Vec6 isf_twist_gradient(const std::vector<CorrespondencePair>& corr, double alpha,
                        const Transform& pose) {
  // Twist [omega; v] in world coordinates anchored at the gripper origin, the
  // same convention as the spatial Jacobian: a contact moves by
  // omega x (u_h - p_ee) + v. With r_j = R h_j,
  //   d f_pml   = sum 2 e_j [ (r_j x n_o) . omega + n_o . v ]
  //   d f_align = sum 2 a_j (n_h x n_o) . omega
  Vec6 grad = Vec6::Zero();
  for (const CorrespondencePair& p : corr) {
    const Vec3 r = pose.rotate(p.contact_local);
    const double e = (p.contact_world - p.object_point).dot(p.object_normal);
    grad.head<3>() += 2.0 * e * r.cross(p.object_normal);
    grad.tail<3>() += 2.0 * e * p.object_normal;
    const double a = p.contact_normal_world.dot(p.object_normal) + 1.0;
    grad.head<3>() += 2.0 * alpha * a * p.contact_normal_world.cross(p.object_normal);
  }
  return grad;
}

HandCollision hand_collision_cost(const Config& g, const SerialChain& chain,
                                  const GripperModel& gripper,
                                  const ObjectSurface& object, double eps_hand) {
  HandCollision out;
  const Transform pose = chain.end_effector_pose(g);
  const Transform inv = pose.inverse();
  for (const Vec3& p_world : object.points) {
    const Vec3 u = inv.apply(p_world);
    const double d = gripper.hand_sdf(u);
    if (d > eps_hand) continue;
    out.cost += obstacle_cost(d, eps_hand);
    const Vec3 grad_u = obstacle_cost_derivative(d, eps_hand) * gripper.hand_sdf_gradient(u);
    // Moving the hand by a body twist moves the point in hand coordinates by
    // -(omega x u + v); object points push the hand the opposite way.
    out.twist_gradient.tail<3>() -= grad_u;
    out.twist_gradient.head<3>() -= u.cross(grad_u);
  }
  return out;
}

ArmCollision arm_collision_cost(const Config& g, const SerialChain& chain,
                                const SceneSdf& scene,
                                const std::vector<BodyPoint>& body_points) {
  ArmCollision out;
  out.gradient = Config::Zero(chain.dof());
  const auto frames = chain.forward_kinematics(g);
  const Vec3 ee = SerialChain::end_effector_pose(frames, chain.end_effector_offset()).p;
  const TargetPolicy policy = TargetPolicy::near_goal(ee, scene.approach_radius);
  for (const BodyPoint& u : body_points) {
    const Vec3 x = chain.body_point_position(frames, u);
    const WorkspaceCost wc =
        workspace_cost_and_gradient(scene, x, policy.include_target(u, x));
    if (wc.cost == 0.0) continue;
    out.cost += wc.cost;
    out.gradient += chain.point_jacobian(frames, u).transpose() * wc.gradient;
  }
  return out;
}

double grasp_cost(const Config& g, const SerialChain& chain, const GripperModel& gripper,
                  const ObjectSurface& object, const SceneSdf& scene,
                  const std::vector<BodyPoint>& body_points,
                  const GraspRefineConfig& cfg) {
  const Contacts contacts = transform_contacts(chain, gripper, g);
  const auto corr = nearest_correspondences(contacts, gripper, object);
  const double isf = isf_loss(corr, cfg.alpha);
  const double hand = hand_collision_cost(g, chain, gripper, object, cfg.eps_hand).cost;
  const double arm = arm_collision_cost(g, chain, scene, body_points).cost;
  return isf + cfg.gamma * (hand + cfg.beta * arm);
}

IsfStepResult cspace_isf_step(const Config& g, const SerialChain& chain,
                              const GripperModel& gripper, const ObjectSurface& object,
                              const SceneSdf& scene,
                              const std::vector<BodyPoint>& body_points,
                              const GraspRefineConfig& cfg) {
  IsfStepResult result;
  result.g = g;
  const Contacts contacts = transform_contacts(chain, gripper, g);
  const auto corr = nearest_correspondences(contacts, gripper, object);
  if (corr.size() < 2) return result;

  Vec6 twist_world = isf_twist_gradient(corr, cfg.alpha, contacts.pose);
  const HandCollision hand =
      hand_collision_cost(g, chain, gripper, object, cfg.eps_hand);
  // Hand gradient is in body coordinates; the ISF accumulation above is in
  // world coordinates. Convert the hand part and keep everything world-side.
  Vec6 hand_world;
  hand_world.head<3>() = contacts.pose.R * hand.twist_gradient.head<3>();
  hand_world.tail<3>() = contacts.pose.R * hand.twist_gradient.tail<3>();
  twist_world += cfg.gamma * hand_world;

  // Exponential map of the twist, reduced back to a small-motion vector; for
  // small gradients this is the identity and the update is J^T twist.
  const Vec6 displaced = small_motion_vector(se3_exp(twist_world));
  Config grad_q = chain.spatial_jacobian(g).transpose() * displaced;

  const ArmCollision arm = arm_collision_cost(g, chain, scene, body_points);
  grad_q += cfg.gamma * cfg.beta * arm.gradient;

  result.g = chain.clamp_to_limits(g - cfg.eta_grasp * grad_q);
  result.stepped = true;
  return result;
}

}  // namespace mgopt
