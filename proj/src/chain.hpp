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

#ifndef MGOPT_CHAIN_HPP
#define MGOPT_CHAIN_HPP

#include <optional>
#include <vector>

#include "gripper.hpp"
#include "primitives.hpp"

namespace mgopt {

/// One revolute joint: rotation about `axis` followed by the fixed transform
/// to the next joint frame.
struct Joint {
  Vec3 axis = Vec3::UnitZ();       // unit, in the preceding frame
  Transform to_next;               // link transform applied after the rotation
};

struct JointLimits {
  double lo = -M_PI;
  double hi = M_PI;
};

/// A point rigidly attached to a link. Link 0 is the fixed base; link j
/// (1..d) moves with joint j. Gripper-mounted points ride on link d with
/// their coordinates pre-composed with the end-effector offset.
struct BodyPoint {
  int link_index = 0;
  Vec3 local_position = Vec3::Zero();
  std::optional<Vec3> local_normal;
  bool on_gripper = false;
};

class SerialChain {
 public:
  SerialChain(std::vector<Joint> joints, std::vector<JointLimits> limits,
              std::vector<Primitive> link_geometry, Transform ee_offset);

  int dof() const { return static_cast<int>(joints_.size()); }
  const std::vector<Joint>& joints() const { return joints_; }
  const std::vector<JointLimits>& limits() const { return limits_; }
  const std::vector<Primitive>& link_geometry() const { return link_geometry_; }
  const Transform& end_effector_offset() const { return ee_offset_; }

  bool within_limits(const Config& q, double slack = 0.0) const;
  Config clamp_to_limits(const Config& q) const;

  /// Frames F_0..F_d: base plus one frame per joint (rotation composed with
  /// the fixed link transform). The end-effector frame is F_d * ee_offset.
  std::vector<Transform> forward_kinematics(const Config& q) const;

  Transform end_effector_pose(const Config& q) const;
  static Transform end_effector_pose(const std::vector<Transform>& frames,
                                     const Transform& ee_offset);

  Vec3 body_point_position(const Config& q, const BodyPoint& u) const;
  Vec3 body_point_position(const std::vector<Transform>& frames,
                           const BodyPoint& u) const;

  /// Rotates a unit direction from a link frame to the world.
  Vec3 body_direction(const Config& q, const Vec3& local_unit, int link_index) const;

  /// 3 x d position Jacobian of a body point; zero columns for joints distal
  /// to the point's link.
  Eigen::MatrixXd point_jacobian(const Config& q, const BodyPoint& u) const;
  Eigen::MatrixXd point_jacobian(const std::vector<Transform>& frames,
                                 const BodyPoint& u) const;

  /// 6 x d end-effector Jacobian, world frame, angular rows on top and the
  /// linear velocity of the end-effector origin below.
  Eigen::MatrixXd spatial_jacobian(const Config& q) const;

 private:
  void check_dim(const Config& q) const;

  std::vector<Joint> joints_;
  std::vector<JointLimits> limits_;
  std::vector<Primitive> link_geometry_;  // entry j-1 lives in frame F_j
  Transform ee_offset_;
};

/// Surface points sampled per body part (each arm link, then palm and both
/// fingers when a gripper is given). Deterministic for a fixed seed.
std::vector<BodyPoint> sample_body_points(const SerialChain& chain,
                                          const GripperModel* gripper,
                                          int per_part, std::uint64_t seed);

struct IkResult {
  bool success = false;
  Config q;
  double error = 0.0;  // translation + weighted rotation angle
  int iterations = 0;
};

/// Damped-least-squares pose tracking. Rotation error is weighted at 1 m/rad
/// against translation; damping 1e-2. Non-convergence is reported, not thrown.
IkResult inverse_kinematics(const SerialChain& chain, const Transform& target,
                            const Config& q_seed, double tol = 1e-8,
                            int max_iters = 200);

}  // namespace mgopt

#endif  // MGOPT_CHAIN_HPP
