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

#ifndef SYNAUG_TRANSPORT_H_
#define SYNAUG_TRANSPORT_H_

#include <cstddef>
#include <span>
#include <vector>

#include "synaug/error.h"
#include "synaug/matrix.h"

namespace synaug {

struct TransportFlow {
  std::size_t source;
  std::size_t target;
  double mass;
};

struct TransportSolution {
  double cost = 0.0;
  // Basic cells of the optimal tree; zero-mass cells are omitted.
  std::vector<TransportFlow> flows;
  std::size_t iterations = 0;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

// Exact minimum-cost transport from `supply` to `demand` over an
// m x n `cost` matrix, by the transportation simplex (network simplex on
// the complete bipartite graph). Supplies and demands must be
// non-negative with equal totals (relative 1e-9). Starts from the
// north-west corner tree, prices with block search and switches to
// Bland's rule while pivots are degenerate, which rules out cycling.
// Throws TransportError if the iteration limit is reached instead of
// returning a suboptimal plan.
TransportSolution SolveTransport(std::span<const double> supply,
                                 std::span<const double> demand,
                                 const Matrix& cost);

}  // namespace synaug

#endif  // SYNAUG_TRANSPORT_H_
