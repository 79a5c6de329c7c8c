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

#ifndef MGOPT_RNG_HPP
#define MGOPT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "geometry.hpp"

namespace mgopt {

// Seeded generator with self-contained distributions. The standard library
// distribution objects are implementation-defined, which would tie output
// files to a particular stdlib; these mappings are fixed by this code.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive on both ends
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double normal() {
    // Box-Muller; the sibling value is discarded to keep the state scalar.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Vec3 unit_vector() {
    Vec3 v(normal(), normal(), normal());
    double n = v.norm();
    while (n < 1e-12) {
      v = Vec3(normal(), normal(), normal());
      n = v.norm();
    }
    return v / n;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace mgopt

#endif  // MGOPT_RNG_HPP
