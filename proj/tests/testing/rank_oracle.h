//
// Copyright 2026 The synaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SYNAUG_TESTS_TESTING_RANK_ORACLE_H_
#define SYNAUG_TESTS_TESTING_RANK_ORACLE_H_

#include <cmath>
#include <span>
#include <vector>

namespace synaug::testing {

// Quadratic-time average ranks: 1 + #smaller + (#equal - 1) / 2.
inline std::vector<double> NaiveAverageRanks(std::span<const double> v) {
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double smaller = 0.0, equal = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] < v[i]) smaller += 1.0;
      if (v[j] == v[i]) equal += 1.0;
    }
    ranks[i] = 1.0 + smaller + (equal - 1.0) / 2.0;
  }
  return ranks;
}

// Pearson correlation of NaiveAverageRanks, with sample means.
inline double NaiveSpearman(std::span<const double> xs,
                            std::span<const double> ys) {
  const auto rx = NaiveAverageRanks(xs);
  const auto ry = NaiveAverageRanks(ys);
  const double n = static_cast<double>(rx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i] / n;
    my += ry[i] / n;
  }
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace synaug::testing

#endif  // SYNAUG_TESTS_TESTING_RANK_ORACLE_H_
