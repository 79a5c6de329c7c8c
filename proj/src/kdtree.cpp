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

#include "kdtree.hpp"

#include <algorithm>
#include <numeric>

namespace mgopt {

void KdTree::build(const std::vector<Vec3>& points) {
  points_ = points;
  nodes_.clear();
  nodes_.reserve(points.size());
  std::vector<int> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  root_ = points.empty() ? -1 : build_recursive(idx, 0, static_cast<int>(idx.size()), 0);
}

int KdTree::build_recursive(std::vector<int>& idx, int lo, int hi, int depth) {
  if (lo >= hi) return -1;
  const int axis = depth % 3;
  const int mid = lo + (hi - lo) / 2;
  std::nth_element(idx.begin() + lo, idx.begin() + mid, idx.begin() + hi,
                   [&](int a, int b) {
                     const double va = points_[a][axis], vb = points_[b][axis];
                     if (va != vb) return va < vb;
                     return a < b;  // deterministic layout
                   });
  Node node;
  node.point = idx[mid];
  node.axis = axis;
  const int self = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  const int left = build_recursive(idx, lo, mid, depth + 1);
  const int right = build_recursive(idx, mid + 1, hi, depth + 1);
  nodes_[self].left = left;
  nodes_[self].right = right;
  return self;
}

void KdTree::search(int node, const Vec3& q, Hit& best) const {
  if (node < 0) return;
  const Node& n = nodes_[node];
  const Vec3& p = points_[n.point];
  const double d2 = (q - p).squaredNorm();
  if (d2 < best.distance_sq ||
      (d2 == best.distance_sq && n.point < best.index)) {
    best.index = n.point;
    best.distance_sq = d2;
  }
  const double delta = q[n.axis] - p[n.axis];
  const int near = delta < 0.0 ? n.left : n.right;
  const int far = delta < 0.0 ? n.right : n.left;
  search(near, q, best);
  if (delta * delta <= best.distance_sq) search(far, q, best);
}

KdTree::Hit KdTree::nearest(const Vec3& query) const {
  Hit best;
  best.distance_sq = std::numeric_limits<double>::infinity();
  search(root_, query, best);
  return best;
}

}  // namespace mgopt
