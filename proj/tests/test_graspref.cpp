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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bench.hpp"
#include "graspref.hpp"
#include "oracles.hpp"

using namespace mgopt;
using namespace mgopt::testing;

namespace {

/// Chain whose end effector sits at the world origin with identity rotation
/// at q = 0; lets tests place the gripper pose directly.
SerialChain identity_chain() {
  std::vector<Joint> joints(1);
  joints[0].axis = Vec3::UnitZ();
  std::vector<JointLimits> limits{JointLimits{-M_PI, M_PI}};
  return SerialChain(joints, limits, {}, Transform::identity());
}

Config zero1() { return Config::Zero(1); }

/// ISF loss recomputed from frozen correspondences at an explicitly perturbed
/// pose; the twist is world-frame, anchored at the gripper origin.
double isf_loss_at_pose(const Transform& pose,
                        const std::vector<CorrespondencePair>& corr, double alpha) {
  double pml = 0.0, align = 0.0;
  for (const CorrespondencePair& pair : corr) {
    const Vec3 u_h = pose.apply(pair.contact_local);
    const Vec3 n_h = pose.rotate(pair.contact_normal_local);
    const double e = (u_h - pair.object_point).dot(pair.object_normal);
    pml += e * e;
    const double a = n_h.dot(pair.object_normal) + 1.0;
    align += a * a;
  }
  return pml + alpha * align;
}

Transform perturb_world(const Transform& pose, const Vec6& twist, double eps) {
  Transform out;
  out.R = so3_exp(eps * twist.head<3>()) * pose.R;
  out.p = pose.p + eps * twist.tail<3>();
  return out;
}

}  // namespace

TEST_CASE("contacts transform by the end-effector frame") {
  const SerialChain chain = identity_chain();
  const GripperModel gripper = make_parallel_jaw();
  const Contacts at_identity = transform_contacts(chain, gripper, zero1());
  for (std::size_t i = 0; i < gripper.contact_points.size(); ++i) {
    CHECK((at_identity.points[i] - gripper.contact_points[i]).norm() < 1e-15);
    CHECK((at_identity.normals[i] - gripper.contact_normals[i]).norm() < 1e-15);
  }

  // Pure translation: mount the gripper with a translated offset.
  SerialChain shifted(
      {Joint{Vec3::UnitZ(), Transform::identity()}}, {JointLimits{-M_PI, M_PI}}, {},
      Transform{Mat3::Identity(), Vec3(0.2, -0.1, 0.05)});
  const Contacts moved = transform_contacts(shifted, gripper, zero1());
  for (std::size_t i = 0; i < gripper.contact_points.size(); ++i) {
    CHECK((moved.normals[i] - gripper.contact_normals[i]).norm() < 1e-15);
    CHECK((moved.points[i] - (gripper.contact_points[i] + Vec3(0.2, -0.1, 0.05))).norm() <
          1e-15);
  }
}

TEST_CASE("contacts match a raw frame-multiplication oracle") {
  Rng rng(61);
  const SerialChain chain = random_chain(rng, 4);
  const GripperModel gripper = make_parallel_jaw();
  const Config q = random_config(rng, chain);
  const Contacts contacts = transform_contacts(chain, gripper, q);
  const Mat4 pose = fk_matrix_oracle(chain, q).back();
  for (std::size_t i = 0; i < gripper.contact_points.size(); ++i) {
    const Vec3& h = gripper.contact_points[i];
    const Eigen::Vector4d world = pose * Eigen::Vector4d(h.x(), h.y(), h.z(), 1.0);
    CHECK((contacts.points[i] - world.head<3>()).norm() < 1e-10);
    const Vec3 n_world = pose.topLeftCorner<3, 3>() * gripper.contact_normals[i];
    CHECK((contacts.normals[i] - n_world).norm() < 1e-10);
  }
}

TEST_CASE("nearest correspondences hit exact sample points") {
  const SerialChain chain = identity_chain();
  const GripperModel gripper = make_parallel_jaw();
  ObjectSurface object;
  // One object point exactly at the first contact, one far away.
  object.points = {gripper.contact_points[0], Vec3(5, 5, 5)};
  object.normals = {Vec3::UnitY(), Vec3::UnitX()};
  object.build_index();
  const Contacts contacts = transform_contacts(chain, gripper, zero1());
  const auto corr = nearest_correspondences(contacts, gripper, object);
  bool found = false;
  for (const auto& pair : corr) {
    if (pair.object_index == 0 && pair.distance == 0.0) found = true;
  }
  CHECK(found);
}

TEST_CASE("duplicate object matches keep only the closest contact") {
  const SerialChain chain = identity_chain();
  GripperModel gripper = make_parallel_jaw();
  ObjectSurface object;
  object.points = {Vec3(0.03, 0.0, 0.0)};  // between the fingers
  object.normals = {Vec3::UnitY()};
  object.build_index();
  const Contacts contacts = transform_contacts(chain, gripper, zero1());
  const auto corr = nearest_correspondences(contacts, gripper, object);
  REQUIRE(corr.size() == 1);  // every contact maps to the same object point
  // The survivor must be the globally closest contact.
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& p : contacts.points) best = std::min(best, (p - object.points[0]).norm());
  CHECK(corr[0].distance == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("correspondences agree with brute-force search plus the filter") {
  Rng rng(62);
  const ObjectSurface object = sample_surface(Primitive{Sphere{Vec3(0.05, 0, 0), 0.4}}, 600, 8);
  const SerialChain chain = identity_chain();
  const GripperModel gripper = make_parallel_jaw();
  const Contacts contacts = transform_contacts(chain, gripper, zero1());
  const auto corr = nearest_correspondences(contacts, gripper, object);
  // Brute-force pipeline, written independently.
  std::vector<int> nearest(contacts.points.size());
  for (std::size_t j = 0; j < contacts.points.size(); ++j) {
    nearest[j] = brute_force_nearest(object.points, contacts.points[j]);
  }
  std::vector<int> keeper(object.points.size(), -1);
  for (std::size_t j = 0; j < contacts.points.size(); ++j) {
    const int o = nearest[j];
    if (keeper[o] < 0 ||
        (contacts.points[j] - object.points[o]).norm() <
            (contacts.points[keeper[o]] - object.points[o]).norm()) {
      keeper[o] = static_cast<int>(j);
    }
  }
  std::size_t expected = 0;
  for (std::size_t j = 0; j < contacts.points.size(); ++j) {
    if (keeper[nearest[j]] == static_cast<int>(j)) ++expected;
  }
  CHECK(corr.size() == expected);
  for (const auto& pair : corr) {
    CHECK((object.points[pair.object_index] - pair.object_point).norm() == 0.0);
  }
  CHECK_THROWS(nearest_correspondences(contacts, gripper, ObjectSurface{}));
}

TEST_CASE("point match loss measures plane distance only") {
  CorrespondencePair pair;
  pair.contact_world = Vec3(0.1, 0.2, 0.0);
  pair.object_point = Vec3(0.1, 0.2, 0.0);
  pair.object_normal = Vec3::UnitY();
  std::vector<CorrespondencePair> corr{pair};
  CHECK(point_match_loss(corr) == 0.0);

  corr[0].contact_world += 0.07 * Vec3::UnitY();  // along the normal
  CHECK(point_match_loss(corr) == doctest::Approx(0.07 * 0.07).epsilon(1e-12));

  corr[0].contact_world = pair.object_point + Vec3(0.5, 0, 0.3);  // tangential
  CHECK(point_match_loss(corr) < 1e-10);
}

TEST_CASE("normal alignment loss spans zero to four per pair") {
  CorrespondencePair pair;
  pair.object_normal = Vec3::UnitY();
  pair.contact_normal_world = -Vec3::UnitY();
  std::vector<CorrespondencePair> corr{pair};
  CHECK(normal_align_loss(corr) == 0.0);
  corr[0].contact_normal_world = Vec3::UnitY();
  CHECK(normal_align_loss(corr) == doctest::Approx(4.0));
  corr[0].contact_normal_world = Vec3::UnitX();
  CHECK(normal_align_loss(corr) == doctest::Approx(1.0));
  Rng rng(63);
  for (int i = 0; i < 50; ++i) {
    corr[0].contact_normal_world = rng.unit_vector();
    const double loss = normal_align_loss(corr);
    CHECK(loss >= 0.0);
    CHECK(loss <= 4.0 + 1e-12);
  }
}

TEST_CASE("isf loss is the weighted sum of its parts") {
  Rng rng(64);
  std::vector<CorrespondencePair> corr;
  for (int i = 0; i < 10; ++i) {
    CorrespondencePair pair;
    pair.contact_world = 0.3 * rng.unit_vector();
    pair.object_point = 0.3 * rng.unit_vector();
    pair.object_normal = rng.unit_vector();
    pair.contact_normal_world = rng.unit_vector();
    corr.push_back(pair);
  }
  CHECK(isf_loss(corr, 0.0) == doctest::Approx(point_match_loss(corr)).epsilon(1e-12));
  CHECK(isf_loss(corr, 0.37) ==
        doctest::Approx(point_match_loss(corr) + 0.37 * normal_align_loss(corr))
            .epsilon(1e-12));
}

TEST_CASE("isf twist gradient matches finite differences over pose coordinates") {
  Rng rng(65);
  const GripperModel gripper = make_parallel_jaw();
  const ObjectSurface object =
      sample_surface(Primitive{Sphere{Vec3(0.06, 0.01, 0.0), 0.035}}, 800, 9);
  for (int trial = 0; trial < 5; ++trial) {
    // Random nearby pose of the gripper.
    Transform pose;
    pose.R = so3_exp(rng.unit_vector() * rng.uniform(-0.4, 0.4));
    pose.p = Vec3(rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05),
                  rng.uniform(-0.02, 0.02));
    Contacts contacts;
    contacts.pose = pose;
    for (const Vec3& h : gripper.contact_points) contacts.points.push_back(pose.apply(h));
    for (const Vec3& n : gripper.contact_normals) contacts.normals.push_back(pose.rotate(n));
    const auto corr = nearest_correspondences(contacts, gripper, object);
    REQUIRE(corr.size() >= 2);
    const double alpha = 0.01;
    const Vec6 grad = isf_twist_gradient(corr, alpha, pose);
    const double eps = 1e-5;
    for (int k = 0; k < 6; ++k) {
      Vec6 basis = Vec6::Zero();
      basis[k] = 1.0;
      const double hi = isf_loss_at_pose(perturb_world(pose, basis, eps), corr, alpha);
      const double lo = isf_loss_at_pose(perturb_world(pose, basis, -eps), corr, alpha);
      const double fd = (hi - lo) / (2 * eps);
      CHECK(std::abs(grad[k] - fd) < 1e-3 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("hand collision cost is silent at a distance") {
  const SerialChain chain = identity_chain();
  const GripperModel gripper = make_parallel_jaw();
  ObjectSurface object;
  object.points = {Vec3(2, 2, 2), Vec3(-1, 0.5, 0.8)};
  object.normals = {Vec3::UnitX(), Vec3::UnitY()};
  object.build_index();
  const HandCollision hc = hand_collision_cost(zero1(), chain, gripper, object, 0.02);
  CHECK(hc.cost == 0.0);
  CHECK(hc.twist_gradient.norm() == 0.0);
}

TEST_CASE("penetrating object point produces the matching cost and gradient") {
  const SerialChain chain = identity_chain();
  const GripperModel gripper = make_parallel_jaw();
  ObjectSurface object;
  // Inside the left finger box (y around gap/2 + t/2).
  const Vec3 inside(0.03, 0.0425, 0.0);
  object.points = {inside};
  object.normals = {Vec3::UnitY()};
  object.build_index();
  const double eps_hand = 0.02;
  const HandCollision hc = hand_collision_cost(zero1(), chain, gripper, object, eps_hand);
  CHECK(hc.cost == doctest::Approx(obstacle_cost(gripper.hand_sdf(inside), eps_hand)));
  CHECK(hc.twist_gradient.norm() > 0.0);

  // Finite differences over body twists: T' = T exp(eps xi).
  const Transform pose = chain.end_effector_pose(zero1());
  auto cost_at = [&](const Transform& t) {
    const Transform inv = t.inverse();
    double total = 0.0;
    for (const Vec3& p : object.points) {
      total += obstacle_cost(gripper.hand_sdf(inv.apply(p)), eps_hand);
    }
    return total;
  };
  const double eps = 1e-6;
  for (int k = 0; k < 6; ++k) {
    Vec6 basis = Vec6::Zero();
    basis[k] = 1.0;
    const Transform hi = pose * se3_exp(Vec6(eps * basis));
    const Transform lo = pose * se3_exp(Vec6(-eps * basis));
    const double fd = (cost_at(hi) - cost_at(lo)) / (2 * eps);
    CHECK(std::abs(hc.twist_gradient[k] - fd) < 1e-3 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("symmetric penetration cancels the closing-axis translation gradient") {
  const SerialChain chain = identity_chain();
  const GripperModel gripper = make_parallel_jaw();
  ObjectSurface object;
  const double y = gripper.params.gap / 2 + 0.001;  // just inside the inner faces
  object.points = {Vec3(0.03, y, 0.0), Vec3(0.03, -y, 0.0)};
  object.normals = {Vec3::UnitY(), -Vec3::UnitY()};
  object.build_index();
  const HandCollision hc = hand_collision_cost(zero1(), chain, gripper, object, 0.02);
  CHECK(hc.cost > 0.0);
  CHECK(std::abs(hc.twist_gradient[4]) < 1e-12);  // v_y component
}

TEST_CASE("grasp cost composes its terms and vanishes for a face-matched box") {
  const SerialChain chain = identity_chain();
  const GripperModel gripper = make_parallel_jaw();
  GraspRefineConfig cfg;
  cfg.eps_hand = 1e-6;  // exact-touch test: shrink the standoff band
  const double fl = gripper.params.finger_length;
  OrientedBox box;
  box.center = Vec3(fl / 2 + cfg.eps_hand, 0, 0);
  box.half_extents = Vec3(fl / 2, gripper.params.gap / 2 - cfg.eps_hand, 0.008);
  const ObjectSurface object = sample_surface(Primitive{box}, 4000, 17);
  SceneSdf scene;  // free space
  scene.target_shape = box;
  scene.target_surface = sample_surface(Primitive{box}, 200, 18);
  const std::vector<BodyPoint> no_points;
  const double cost = grasp_cost(zero1(), chain, gripper, object, scene, no_points, cfg);
  CHECK(cost < 1e-6);

  // gamma = 0 reduces to the ISF loss.
  Rng rng(66);
  GraspRefineConfig zero_gamma = cfg;
  zero_gamma.gamma = 0.0;
  const ObjectSurface sphere_obj =
      sample_surface(Primitive{Sphere{Vec3(0.05, 0, 0), 0.03}}, 500, 19);
  const Contacts contacts = transform_contacts(chain, gripper, zero1());
  const auto corr = nearest_correspondences(contacts, gripper, sphere_obj);
  const double expected = isf_loss(corr, zero_gamma.alpha);
  CHECK(grasp_cost(zero1(), chain, gripper, sphere_obj, scene, no_points, zero_gamma) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("arm collision gradient matches finite differences") {
  const SerialChain chain = make_chain(ChainPreset::kPlanar3);
  const GripperModel gripper = make_parallel_jaw();
  const auto pts = sample_body_points(chain, &gripper, 6, 3);
  SceneSdf scene;
  scene.obstacles.emplace_back(Primitive{Sphere{Vec3(0.7, 0.3, 0), 0.25}});
  Rng rng(67);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 5; ++trial) {
    const Config q = random_config(rng, chain, 1.5);
    const ArmCollision ac = arm_collision_cost(q, chain, scene, pts);
    if (ac.cost == 0.0) continue;
    ++checked;
    const double step = 1e-7;
    for (int j = 0; j < chain.dof(); ++j) {
      Config lo = q, hi = q;
      lo[j] -= step;
      hi[j] += step;
      const double fd = (arm_collision_cost(hi, chain, scene, pts).cost -
                         arm_collision_cost(lo, chain, scene, pts).cost) /
                        (2 * step);
      CHECK(std::abs(ac.gradient[j] - fd) < 1e-4 * std::max(1.0, std::abs(fd)));
    }
  }
  CHECK(checked == 5);
}

TEST_CASE("isf step is stationary at a perfect grasp and inert at zero rate") {
  const SerialChain chain = identity_chain();
  const GripperModel gripper = make_parallel_jaw();
  GraspRefineConfig cfg;
  cfg.eps_hand = 1e-6;
  const double fl = gripper.params.finger_length;
  OrientedBox box;
  box.center = Vec3(fl / 2 + cfg.eps_hand, 0, 0);
  box.half_extents = Vec3(fl / 2, gripper.params.gap / 2 - cfg.eps_hand, 0.008);
  const ObjectSurface object = sample_surface(Primitive{box}, 4000, 20);
  SceneSdf scene;
  scene.target_shape = box;
  scene.target_surface = sample_surface(Primitive{box}, 200, 21);
  const std::vector<BodyPoint> no_points;

  const IsfStepResult step =
      cspace_isf_step(zero1(), chain, gripper, object, scene, no_points, cfg);
  CHECK(step.stepped);
  CHECK((step.g - zero1()).norm() < 1e-6);

  GraspRefineConfig frozen = cfg;
  frozen.eta_grasp = 0.0;
  const IsfStepResult still =
      cspace_isf_step(zero1(), chain, gripper, object, scene, no_points, frozen);
  CHECK((still.g - zero1()).norm() == 0.0);
}

TEST_CASE("thirty refinement steps pull an approach grasp onto a sphere") {
  // Approach-sampled grasp on a planar arm: fingertips barely reach the
  // target, refinement should slide the hand in and drop the fitting loss.
  const SerialChain chain = make_chain(ChainPreset::kPlanar3);
  const GripperModel gripper = make_parallel_jaw();
  SceneSdf scene;
  const Sphere target{Vec3(0.62, -0.12, 0.0), 0.03};
  scene.target_shape = target;
  scene.target_surface = sample_surface(Primitive{target}, 1000, 22);
  const auto pts = sample_body_points(chain, &gripper, 10, 4);
  Rng rng(68);
  const auto goal = sample_goal_for_scene(chain, gripper, scene, pts,
                                          default_start(ChainPreset::kPlanar3), true,
                                          Vec3(1, 0, 0), 0.0, rng);
  REQUIRE(goal.has_value());
  GraspRefineConfig cfg;
  Config g = *goal;
  const Contacts c0 = transform_contacts(chain, gripper, g);
  const double pml0 = point_match_loss(nearest_correspondences(c0, gripper, scene.target_surface));
  const double cost0 = grasp_cost(g, chain, gripper, scene.target_surface, scene, pts, cfg);
  for (int s = 0; s < 30; ++s) {
    const IsfStepResult step =
        cspace_isf_step(g, chain, gripper, scene.target_surface, scene, pts, cfg);
    REQUIRE(step.stepped);
    g = step.g;
    CHECK(chain.within_limits(g, 1e-12));
  }
  const Contacts c1 = transform_contacts(chain, gripper, g);
  const double pml1 = point_match_loss(nearest_correspondences(c1, gripper, scene.target_surface));
  const double cost1 = grasp_cost(g, chain, gripper, scene.target_surface, scene, pts, cfg);
  CHECK(cost1 < cost0);
  CHECK(pml1 < pml0 / 10.0);
}

TEST_CASE("isf step skips degenerate correspondence sets") {
  const SerialChain chain = identity_chain();
  const GripperModel gripper = make_parallel_jaw();
  ObjectSurface object;
  object.points = {Vec3(0.03, 0.0, 0.0)};  // all contacts collapse to one match
  object.normals = {Vec3::UnitY()};
  object.build_index();
  SceneSdf scene;
  const IsfStepResult step =
      cspace_isf_step(zero1(), chain, gripper, object, scene, {}, GraspRefineConfig{});
  CHECK_FALSE(step.stepped);
  CHECK((step.g - zero1()).norm() == 0.0);
}
