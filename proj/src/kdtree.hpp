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

#ifndef MGOPT_KDTREE_HPP
#define MGOPT_KDTREE_HPP

#include <vector>

#include "geometry.hpp"

namespace mgopt {

/// Static 3-d tree over a fixed point set. Build once, query nearest
/// neighbors many times; ties resolve to the lowest point index.
class KdTree {
 public:
  KdTree() = default;
  explicit KdTree(const std::vector<Vec3>& points) { build(points); }

  void build(const std::vector<Vec3>& points);

  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return points_.size(); }

  struct Hit {
    int index = -1;
    double distance_sq = 0.0;
  };

  Hit nearest(const Vec3& query) const;

 private:
  struct Node {
    int point = -1;   // index into points_
    int axis = 0;
    int left = -1;
    int right = -1;
  };

  int build_recursive(std::vector<int>& idx, int lo, int hi, int depth);
  void search(int node, const Vec3& q, Hit& best) const;

  std::vector<Vec3> points_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace mgopt

#endif  // MGOPT_KDTREE_HPP
