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

#include "oracles.hpp"

using namespace mgopt;
using namespace mgopt::testing;

namespace {

SerialChain planar_chain(const std::vector<double>& lengths) {
  std::vector<Joint> joints;
  std::vector<JointLimits> limits;
  std::vector<Primitive> geom;
  for (double len : lengths) {
    Joint j;
    j.axis = Vec3::UnitZ();
    j.to_next.p = Vec3(len, 0, 0);
    joints.push_back(j);
    limits.push_back(JointLimits{-M_PI, M_PI});
    geom.push_back(Capsule{Vec3(-len, 0, 0), Vec3::Zero(), 0.04});
  }
  return SerialChain(std::move(joints), std::move(limits), std::move(geom),
                     Transform::identity());
}

Config config(std::initializer_list<double> values) {
  Config q(static_cast<int>(values.size()));
  int i = 0;
  for (double v : values) q[i++] = v;
  return q;
}

}  // namespace

TEST_CASE("forward kinematics on a straight 2-link chain") {
  const SerialChain chain = planar_chain({1.0, 1.0});
  const Transform ee = chain.end_effector_pose(config({0.0, 0.0}));
  CHECK(ee.p.isApprox(Vec3(2, 0, 0), 1e-12));
}

TEST_CASE("forward kinematics rotates rigidly") {
  const SerialChain chain = planar_chain({1.0, 1.0});
  const Transform ee = chain.end_effector_pose(config({M_PI / 2, 0.0}));
  CHECK((ee.p - Vec3(0, 2, 0)).norm() < 1e-12);
}

TEST_CASE("forward kinematics matches the matrix-product oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const SerialChain chain = random_chain(rng, 3);
    const Config q = random_config(rng, chain);
    const auto frames = chain.forward_kinematics(q);
    const auto oracle = fk_matrix_oracle(chain, q);
    REQUIRE(frames.size() == oracle.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
      CHECK((to_matrix(frames[i]) - oracle[i]).norm() < 1e-10);
    }
  }
}

TEST_CASE("forward kinematics frames are proper rigid transforms") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const SerialChain chain = random_chain(rng, 4);
    const Config q = random_config(rng, chain);
    for (const Transform& f : chain.forward_kinematics(q)) {
      CHECK(std::abs(f.R.determinant() - 1.0) < 1e-9);
      CHECK((f.R.transpose() * f.R - Mat3::Identity()).norm() < 1e-9);
    }
  }
}

TEST_CASE("forward kinematics rejects dimension mismatch") {
  const SerialChain chain = planar_chain({1.0, 1.0});
  CHECK_THROWS_AS(chain.forward_kinematics(config({0.0})), std::invalid_argument);
}

TEST_CASE("body point on the base link stays at the base") {
  const SerialChain chain = planar_chain({1.0, 1.0});
  BodyPoint u;
  u.link_index = 0;
  CHECK(chain.body_point_position(config({0.7, -0.4}), u).norm() < 1e-15);
}

TEST_CASE("body point on link 1 of a straight chain") {
  const SerialChain chain = planar_chain({1.0, 1.0});
  BodyPoint u;
  u.link_index = 1;
  u.local_position = Vec3(1, 0, 0);
  CHECK(chain.body_point_position(config({0.0, 0.0}), u).isApprox(Vec3(2, 0, 0), 1e-12));
}

TEST_CASE("body point position matches the frame recomputation") {
  Rng rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    const SerialChain chain = random_chain(rng, 4);
    const Config q = random_config(rng, chain);
    BodyPoint u;
    u.link_index = rng.uniform_int(0, chain.dof());
    u.local_position = Vec3(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2),
                            rng.uniform(-0.2, 0.2));
    const auto oracle = fk_matrix_oracle(chain, q);
    const Eigen::Vector4d h = oracle[u.link_index] *
                              Eigen::Vector4d(u.local_position.x(), u.local_position.y(),
                                              u.local_position.z(), 1.0);
    CHECK((chain.body_point_position(q, u) - h.head<3>()).norm() < 1e-10);
  }
}

TEST_CASE("body point rejects a bad link index") {
  const SerialChain chain = planar_chain({1.0});
  BodyPoint u;
  u.link_index = 5;
  CHECK_THROWS_AS(chain.body_point_position(config({0.0}), u), std::invalid_argument);
}

TEST_CASE("body direction on the base link is unchanged") {
  const SerialChain chain = planar_chain({1.0});
  CHECK(chain.body_direction(config({0.0}), Vec3(0, 0, 1), 0).isApprox(Vec3(0, 0, 1)));
}

TEST_CASE("body direction rotates with the joint") {
  const SerialChain chain = planar_chain({1.0});
  const Vec3 dir = chain.body_direction(config({M_PI / 2}), Vec3(1, 0, 0), 1);
  CHECK((dir - Vec3(0, 1, 0)).norm() < 1e-12);
}

TEST_CASE("body direction preserves norms and rejects non-unit input") {
  Rng rng(14);
  const SerialChain chain = random_chain(rng, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const Config q = random_config(rng, chain);
    const Vec3 n = rng.unit_vector();
    CHECK(std::abs(chain.body_direction(q, n, 2).norm() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(chain.body_direction(config({0, 0, 0}), Vec3(1, 1, 0), 1),
                  std::invalid_argument);
}

TEST_CASE("point jacobian of a 1-link tip is tangential") {
  const SerialChain chain = planar_chain({1.0});
  BodyPoint u;
  u.link_index = 1;
  const Eigen::MatrixXd jac = chain.point_jacobian(config({0.0}), u);
  CHECK((jac.col(0) - Vec3(0, 1, 0)).norm() < 1e-12);
}

TEST_CASE("point jacobian columns distal to the link are zero") {
  const SerialChain chain = planar_chain({1.0, 1.0, 1.0});
  BodyPoint u;
  u.link_index = 0;
  const Eigen::MatrixXd jac = chain.point_jacobian(config({0.3, -0.2, 0.9}), u);
  CHECK(jac.norm() == 0.0);

  BodyPoint mid;
  mid.link_index = 1;
  mid.local_position = Vec3(-0.5, 0, 0);
  const Eigen::MatrixXd jac_mid = chain.point_jacobian(config({0.3, -0.2, 0.9}), mid);
  CHECK(jac_mid.col(1).norm() == 0.0);
  CHECK(jac_mid.col(2).norm() == 0.0);
  CHECK(jac_mid.col(0).norm() > 0.0);
}

TEST_CASE("point jacobian matches central finite differences") {
  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const SerialChain chain = random_chain(rng, rng.uniform_int(2, 5));
    const Config q = random_config(rng, chain);
    BodyPoint u;
    u.link_index = rng.uniform_int(1, chain.dof());
    u.local_position = Vec3(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3),
                            rng.uniform(-0.3, 0.3));
    const Eigen::MatrixXd analytic = chain.point_jacobian(q, u);
    const Eigen::MatrixXd fd = point_jacobian_fd(chain, q, u);
    const double scale = std::max(1.0, fd.norm());
    CHECK((analytic - fd).norm() / scale < 1e-5);
  }
}

TEST_CASE("spatial jacobian of a 1-link z chain") {
  const SerialChain chain = planar_chain({1.0});
  const Config q = config({0.4});
  const Vec3 tip = chain.end_effector_pose(q).p;
  const Eigen::MatrixXd jac = chain.spatial_jacobian(q);
  CHECK((jac.col(0).head<3>() - Vec3(0, 0, 1)).norm() < 1e-12);
  CHECK((jac.col(0).tail<3>() - Vec3(-tip.y(), tip.x(), 0)).norm() < 1e-12);
}

TEST_CASE("spatial jacobian linear rows equal the end-effector point jacobian") {
  Rng rng(16);
  const SerialChain chain = random_chain(rng, 4);
  const Config q = random_config(rng, chain);
  BodyPoint ee;
  ee.link_index = chain.dof();
  ee.local_position = chain.end_effector_offset().p;
  const Eigen::MatrixXd jac = chain.spatial_jacobian(q);
  const Eigen::MatrixXd pj = chain.point_jacobian(q, ee);
  CHECK((jac.bottomRows(3) - pj).norm() < 1e-12);
}

TEST_CASE("spatial jacobian matches finite differences of the pose") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const SerialChain chain = random_chain(rng, 4);
    const Config q = random_config(rng, chain);
    const Eigen::MatrixXd jac = chain.spatial_jacobian(q);
    const double step = 1e-6;
    for (int j = 0; j < chain.dof(); ++j) {
      Config lo = q, hi = q;
      lo[j] -= step;
      hi[j] += step;
      const Transform a = chain.end_effector_pose(lo);
      const Transform b = chain.end_effector_pose(hi);
      const Vec3 dv = (b.p - a.p) / (2.0 * step);
      const Vec3 dw = so3_log(b.R * a.R.transpose()) / (2.0 * step);
      const double scale = std::max(1.0, jac.col(j).norm());
      CHECK((jac.col(j).head<3>() - dw).norm() / scale < 1e-4);
      CHECK((jac.col(j).tail<3>() - dv).norm() / scale < 1e-4);
    }
  }
}

TEST_CASE("sampled body points lie on their link surfaces") {
  const SerialChain chain = planar_chain({1.0, 1.0, 1.0});
  const GripperModel gripper = make_parallel_jaw();
  const auto points = sample_body_points(chain, &gripper, 10, 99);
  CHECK(points.size() == 30 + 10 * GripperModel::kPartCount);
  const Transform inv_off = chain.end_effector_offset().inverse();
  for (const BodyPoint& u : points) {
    if (u.on_gripper) {
      CHECK(u.link_index == chain.dof());
      const Vec3 local = inv_off.apply(u.local_position);
      CHECK(std::abs(gripper.hand_sdf(local)) < 1e-9);
    } else {
      const double d =
          signed_distance(chain.link_geometry()[u.link_index - 1], u.local_position);
      CHECK(std::abs(d) < 1e-9);
    }
  }
}

TEST_CASE("body point sampling is deterministic and honors per_part") {
  const SerialChain chain = planar_chain({1.0, 0.5});
  const GripperModel gripper = make_parallel_jaw();
  const auto a = sample_body_points(chain, &gripper, 1, 7);
  CHECK(a.size() == 2 + GripperModel::kPartCount);
  const auto b = sample_body_points(chain, &gripper, 10, 42);
  const auto c = sample_body_points(chain, &gripper, 10, 42);
  REQUIRE(b.size() == c.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(b[i].local_position == c[i].local_position);
    CHECK(b[i].link_index == c[i].link_index);
  }
}

TEST_CASE("inverse kinematics returns the seed when already at the target") {
  const SerialChain chain = planar_chain({0.5, 0.4, 0.3});
  const Config seed = config({0.3, -0.2, 0.5});
  const IkResult res = inverse_kinematics(chain, chain.end_effector_pose(seed), seed);
  CHECK(res.success);
  CHECK(res.iterations == 0);
  CHECK((res.q - seed).norm() == 0.0);
}

TEST_CASE("inverse kinematics reaches random attainable targets") {
  Rng rng(18);
  const SerialChain chain = planar_chain({0.5, 0.4, 0.3});
  int successes = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Config q_true = random_config(rng, chain, 1.8);
    const Transform target = chain.end_effector_pose(q_true);
    Config seed = q_true;
    for (int j = 0; j < 3; ++j) seed[j] += rng.uniform(-0.4, 0.4);
    const IkResult res = inverse_kinematics(chain, target, seed, 1e-8, 300);
    if (!res.success) continue;
    ++successes;
    const Transform reached = chain.end_effector_pose(res.q);
    const double err = (reached.p - target.p).norm() +
                       so3_log(target.R * reached.R.transpose()).norm();
    CHECK(err < 1e-8);
    CHECK(chain.within_limits(res.q, 1e-9));
  }
  CHECK(successes >= 15);
}

TEST_CASE("inverse kinematics fails cleanly outside the workspace") {
  const SerialChain chain = planar_chain({0.5, 0.4, 0.3});
  Transform target;
  target.p = Vec3(5.0, 0, 0);  // reach is 1.2
  const IkResult res = inverse_kinematics(chain, target, config({0, 0, 0}), 1e-8, 100);
  CHECK_FALSE(res.success);
}
