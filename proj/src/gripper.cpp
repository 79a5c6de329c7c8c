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

#include "gripper.hpp"

#include <stdexcept>

namespace mgopt {

double GripperModel::hand_sdf(const Vec3& p) const {
  double d = signed_distance(Primitive{palm}, p);
  d = std::min(d, signed_distance(Primitive{finger_left}, p));
  d = std::min(d, signed_distance(Primitive{finger_right}, p));
  return d;
}

Vec3 GripperModel::hand_sdf_gradient(const Vec3& p) const {
  const OrientedBox* boxes[3] = {&palm, &finger_left, &finger_right};
  double best = std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int i = 0; i < 3; ++i) {
    const double d = signed_distance(Primitive{*boxes[i]}, p);
    if (d < best) {
      best = d;
      arg = i;
    }
  }
  return signed_distance_gradient(Primitive{*boxes[arg]}, p);
}

GripperModel make_parallel_jaw(const GripperParams& params) {
  if (params.contacts_per_finger < 1 || params.palm_contacts < 0)
    throw std::invalid_argument("gripper contact counts must be positive");
  GripperModel g;
  g.params = params;
  const double fl = params.finger_length;
  const double gap = params.gap;
  const double ft = params.finger_thickness;
  const double fh = params.finger_height;
  const double pt = params.palm_thickness;

  g.palm.center = Vec3(-pt / 2.0, 0.0, 0.0);
  g.palm.half_extents = Vec3(pt / 2.0, gap / 2.0 + ft, fh / 2.0);

  g.finger_left.center = Vec3(fl / 2.0, gap / 2.0 + ft / 2.0, 0.0);
  g.finger_left.half_extents = Vec3(fl / 2.0, ft / 2.0, fh / 2.0);
  g.finger_right = g.finger_left;
  g.finger_right.center.y() = -g.finger_left.center.y();

  // Grid of contacts on each inner finger face; normals close the jaw.
  const int nx = params.contacts_per_finger / 2;
  for (int side = 0; side < 2; ++side) {
    const double y = (side == 0 ? gap / 2.0 : -gap / 2.0);
    const Vec3 n(0.0, side == 0 ? -1.0 : 1.0, 0.0);
    for (int i = 0; i < nx; ++i) {
      const double x = fl * (2.0 * i + 1.0) / (2.0 * nx);
      for (int k = 0; k < 2; ++k) {
        const double z = (k == 0 ? -fh / 4.0 : fh / 4.0);
        g.contact_points.emplace_back(x, y, z);
        g.contact_normals.push_back(n);
      }
    }
  }
  // Palm face contacts point along the approach axis.
  const int np = params.palm_contacts;
  for (int i = 0; i < np; ++i) {
    const double y = (i % 2 == 0 ? -gap / 4.0 : gap / 4.0);
    const double z = (i / 2 % 2 == 0 ? -fh / 4.0 : fh / 4.0);
    g.contact_points.emplace_back(0.0, y, z);
    g.contact_normals.push_back(Vec3::UnitX());
  }
  return g;
}

}  // namespace mgopt
