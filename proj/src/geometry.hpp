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

#ifndef MGOPT_GEOMETRY_HPP
#define MGOPT_GEOMETRY_HPP

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace mgopt {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Config = Eigen::VectorXd;

/// Rigid transform in R^3. Kept as an explicit rotation/translation pair so
/// composition and point/direction application stay cheap and unambiguous.
struct Transform {
  Mat3 R = Mat3::Identity();
  Vec3 p = Vec3::Zero();

  static Transform identity() { return Transform{}; }

  Transform operator*(const Transform& rhs) const {
    return Transform{R * rhs.R, R * rhs.p + p};
  }
  Vec3 apply(const Vec3& x) const { return R * x + p; }
  Vec3 rotate(const Vec3& v) const { return R * v; }
  Transform inverse() const {
    Transform t;
    t.R = R.transpose();
    t.p = -(t.R * p);
    return t;
  }
};

inline Mat3 skew(const Vec3& w) {
  Mat3 s;
  s << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
  return s;
}

/// Rodrigues formula; series expansion below 1e-9 rad.
Mat3 so3_exp(const Vec3& w);

/// Rotation vector of R (angle * axis).
Vec3 so3_log(const Mat3& R);

/// Exponential map of a twist [omega; v] to a rigid transform.
Transform se3_exp(const Vec6& twist);

Transform transform_from_rpy(const Vec3& xyz, const Vec3& rpy);
Vec3 rpy_from_rotation(const Mat3& R);

/// Twist coordinates of a near-identity displacement: rotation log plus the
/// raw translation. Inverse of se3_exp only to first order in the coupling
/// between omega and v.
Vec6 small_motion_vector(const Transform& t);

}  // namespace mgopt

#endif  // MGOPT_GEOMETRY_HPP
