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

#include "geometry.hpp"

#include <cmath>

namespace mgopt {

Mat3 so3_exp(const Vec3& w) {
  const double theta = w.norm();
  if (theta < 1e-9) {
    return Mat3::Identity() + skew(w) + 0.5 * skew(w) * skew(w);
  }
  const Mat3 k = skew(w / theta);
  return Mat3::Identity() + std::sin(theta) * k +
         (1.0 - std::cos(theta)) * k * k;
}

Vec3 so3_log(const Mat3& R) {
  Eigen::AngleAxisd aa(R);
  return aa.angle() * aa.axis();
}

// Left Jacobian of SO(3): t(exp([w;v])) = V(w) v.
static Mat3 so3_left_jacobian(const Vec3& w) {
  const double theta = w.norm();
  const Mat3 s = skew(w);
  if (theta < 1e-6) {
    return Mat3::Identity() + 0.5 * s + (1.0 / 6.0) * s * s;
  }
  const double t2 = theta * theta;
  return Mat3::Identity() + ((1.0 - std::cos(theta)) / t2) * s +
         ((theta - std::sin(theta)) / (t2 * theta)) * s * s;
}

Transform se3_exp(const Vec6& twist) {
  const Vec3 w = twist.head<3>();
  const Vec3 v = twist.tail<3>();
  Transform t;
  t.R = so3_exp(w);
  t.p = so3_left_jacobian(w) * v;
  return t;
}

Transform transform_from_rpy(const Vec3& xyz, const Vec3& rpy) {
  Transform t;
  t.R = (Eigen::AngleAxisd(rpy.z(), Vec3::UnitZ()) *
         Eigen::AngleAxisd(rpy.y(), Vec3::UnitY()) *
         Eigen::AngleAxisd(rpy.x(), Vec3::UnitX()))
            .toRotationMatrix();
  t.p = xyz;
  return t;
}

Vec3 rpy_from_rotation(const Mat3& R) {
  const Vec3 ea = R.eulerAngles(2, 1, 0);
  return Vec3(ea.z(), ea.y(), ea.x());
}

Vec6 small_motion_vector(const Transform& t) {
  Vec6 m;
  m.head<3>() = so3_log(t.R);
  m.tail<3>() = t.p;
  return m;
}

}  // namespace mgopt
