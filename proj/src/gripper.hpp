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

#ifndef MGOPT_GRIPPER_HPP
#define MGOPT_GRIPPER_HPP

#include <vector>

#include "primitives.hpp"

namespace mgopt {

/// Parallel-jaw hand in its own frame: +x is the approach direction, the
/// fingers close along y. The palm sits behind x=0 and the fingers span
/// x in [0, finger_length] at y = +-(gap/2 + thickness/2).
struct GripperParams {
  double finger_length = 0.09;
  double gap = 0.08;
  double finger_thickness = 0.015;
  double finger_height = 0.02;
  double palm_thickness = 0.03;
  int contacts_per_finger = 8;
  int palm_contacts = 4;
};

struct GripperModel {
  GripperParams params;
  OrientedBox palm;
  OrientedBox finger_left;   // +y side
  OrientedBox finger_right;  // -y side

  std::vector<Vec3> contact_points;   // gripper frame, on inner faces
  std::vector<Vec3> contact_normals;  // gripper frame, unit, inward

  double hand_sdf(const Vec3& p) const;  // min over the three boxes
  Vec3 hand_sdf_gradient(const Vec3& p) const;
  const OrientedBox* parts() const { return &palm; }
  static constexpr int kPartCount = 3;
};

GripperModel make_parallel_jaw(const GripperParams& params = {});

}  // namespace mgopt

#endif  // MGOPT_GRIPPER_HPP
