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

#include "chain.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace mgopt {

SerialChain::SerialChain(std::vector<Joint> joints, std::vector<JointLimits> limits,
                         std::vector<Primitive> link_geometry, Transform ee_offset)
    : joints_(std::move(joints)),
      limits_(std::move(limits)),
      link_geometry_(std::move(link_geometry)),
      ee_offset_(ee_offset) {
  if (joints_.empty()) throw std::invalid_argument("chain needs at least one joint");
  if (limits_.size() != joints_.size())
    throw std::invalid_argument("one joint limit pair per joint required");
  if (!link_geometry_.empty() && link_geometry_.size() != joints_.size())
    throw std::invalid_argument("link geometry must be empty or one primitive per link");
  for (const Joint& j : joints_) {
    if (std::abs(j.axis.norm() - 1.0) > 1e-9)
      throw std::invalid_argument("joint axes must be unit norm");
  }
  for (const JointLimits& l : limits_) {
    if (l.lo > l.hi) throw std::invalid_argument("joint limit lo must not exceed hi");
  }
}

void SerialChain::check_dim(const Config& q) const {
  if (q.size() != dof())
    throw std::invalid_argument("configuration length does not match chain dof");
}

bool SerialChain::within_limits(const Config& q, double slack) const {
  check_dim(q);
  for (int j = 0; j < dof(); ++j) {
    if (q[j] < limits_[j].lo - slack || q[j] > limits_[j].hi + slack) return false;
  }
  return true;
}

Config SerialChain::clamp_to_limits(const Config& q) const {
  check_dim(q);
  Config out = q;
  for (int j = 0; j < dof(); ++j) {
    out[j] = std::clamp(out[j], limits_[j].lo, limits_[j].hi);
  }
  return out;
}

std::vector<Transform> SerialChain::forward_kinematics(const Config& q) const {
  check_dim(q);
  std::vector<Transform> frames(dof() + 1);
  frames[0] = Transform::identity();
  for (int j = 0; j < dof(); ++j) {
    Transform rot;
    rot.R = so3_exp(joints_[j].axis * q[j]);
    frames[j + 1] = frames[j] * rot * joints_[j].to_next;
  }
  return frames;
}

Transform SerialChain::end_effector_pose(const std::vector<Transform>& frames,
                                         const Transform& ee_offset) {
  return frames.back() * ee_offset;
}

Transform SerialChain::end_effector_pose(const Config& q) const {
  return end_effector_pose(forward_kinematics(q), ee_offset_);
}

Vec3 SerialChain::body_point_position(const std::vector<Transform>& frames,
                                      const BodyPoint& u) const {
  if (u.link_index < 0 || u.link_index >= static_cast<int>(frames.size()))
    throw std::invalid_argument("body point link index out of range");
  return frames[u.link_index].apply(u.local_position);
}

Vec3 SerialChain::body_point_position(const Config& q, const BodyPoint& u) const {
  return body_point_position(forward_kinematics(q), u);
}

Vec3 SerialChain::body_direction(const Config& q, const Vec3& local_unit,
                                 int link_index) const {
  if (std::abs(local_unit.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("body direction must be unit norm");
  const auto frames = forward_kinematics(q);
  if (link_index < 0 || link_index >= static_cast<int>(frames.size()))
    throw std::invalid_argument("link index out of range");
  return frames[link_index].rotate(local_unit);
}

Eigen::MatrixXd SerialChain::point_jacobian(const std::vector<Transform>& frames,
                                            const BodyPoint& u) const {
  const Vec3 x = body_point_position(frames, u);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(3, dof());
  // Joint k rotates about an axis through the origin of F_{k-1}; joints
  // distal to the point's link contribute nothing.
  for (int k = 1; k <= u.link_index; ++k) {
    const Vec3 axis_world = frames[k - 1].rotate(joints_[k - 1].axis);
    jac.col(k - 1) = axis_world.cross(x - frames[k - 1].p);
  }
  return jac;
}

Eigen::MatrixXd SerialChain::point_jacobian(const Config& q, const BodyPoint& u) const {
  return point_jacobian(forward_kinematics(q), u);
}

Eigen::MatrixXd SerialChain::spatial_jacobian(const Config& q) const {
  const auto frames = forward_kinematics(q);
  const Vec3 p_ee = end_effector_pose(frames, ee_offset_).p;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(6, dof());
  for (int k = 1; k <= dof(); ++k) {
    const Vec3 axis_world = frames[k - 1].rotate(joints_[k - 1].axis);
    jac.col(k - 1).head<3>() = axis_world;
    jac.col(k - 1).tail<3>() = axis_world.cross(p_ee - frames[k - 1].p);
  }
  return jac;
}

std::vector<BodyPoint> sample_body_points(const SerialChain& chain,
                                          const GripperModel* gripper,
                                          int per_part, std::uint64_t seed) {
  if (per_part < 1) throw std::invalid_argument("per_part must be >= 1");
  Rng rng(seed);
  std::vector<BodyPoint> points;
  const auto& geom = chain.link_geometry();
  for (std::size_t j = 0; j < geom.size(); ++j) {
    for (int i = 0; i < per_part; ++i) {
      const SurfacePoint s = sample_on_surface(geom[j], rng);
      BodyPoint bp;
      bp.link_index = static_cast<int>(j) + 1;
      bp.local_position = s.position;
      bp.local_normal = s.normal;
      points.push_back(bp);
    }
  }
  if (gripper != nullptr) {
    const Transform& off = chain.end_effector_offset();
    const OrientedBox* parts = gripper->parts();
    for (int part = 0; part < GripperModel::kPartCount; ++part) {
      for (int i = 0; i < per_part; ++i) {
        const SurfacePoint s = sample_on_surface(Primitive{parts[part]}, rng);
        BodyPoint bp;
        bp.link_index = chain.dof();
        bp.local_position = off.apply(s.position);
        bp.local_normal = off.rotate(s.normal);
        bp.on_gripper = true;
        points.push_back(bp);
      }
    }
  }
  return points;
}

IkResult inverse_kinematics(const SerialChain& chain, const Transform& target,
                            const Config& q_seed, double tol, int max_iters) {
  if (!(tol > 0.0)) throw std::invalid_argument("ik tolerance must be positive");
  constexpr double kDamping = 1e-2;
  constexpr double kRotWeight = 1.0;  // meters per radian

  IkResult res;
  res.q = chain.clamp_to_limits(q_seed);
  for (int iter = 0; iter <= max_iters; ++iter) {
    const Transform pose = chain.end_effector_pose(res.q);
    const Vec3 p_err = target.p - pose.p;
    const Vec3 w_err = so3_log(target.R * pose.R.transpose());
    res.error = p_err.norm() + kRotWeight * w_err.norm();
    res.iterations = iter;
    if (res.error < tol) {
      res.success = chain.within_limits(res.q, 1e-12);
      return res;
    }
    if (iter == max_iters) break;

    const Eigen::MatrixXd jac = chain.spatial_jacobian(res.q);
    Vec6 err;
    err.head<3>() = w_err;
    err.tail<3>() = p_err;
    Eigen::Matrix<double, 6, 6> jjt = jac * jac.transpose();
    jjt.diagonal().array() += kDamping * kDamping;
    const Config dq = jac.transpose() * jjt.ldlt().solve(err);
    res.q = chain.clamp_to_limits(res.q + dq);
  }
  res.success = false;
  return res;
}

}  // namespace mgopt
