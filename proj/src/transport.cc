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

#include "synaug/transport.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace synaug {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Spanning-tree basis over m row nodes and n column nodes. Node r < m is
// row r, node m + c is column c; cell index is r * n + c.
class Basis {
 public:
  Basis(std::size_t m, std::size_t n)
      : m_(m), n_(n), basic_(m * n, 0), adjacent_(m + n) {}

  bool IsBasic(std::size_t cell) const { return basic_[cell] != 0; }

  void Add(std::size_t cell) {
    basic_[cell] = 1;
    adjacent_[cell / n_].push_back(cell);
    adjacent_[m_ + cell % n_].push_back(cell);
  }

  void Remove(std::size_t cell) {
    basic_[cell] = 0;
    Erase(adjacent_[cell / n_], cell);
    Erase(adjacent_[m_ + cell % n_], cell);
  }

  const std::vector<std::size_t>& Adjacent(std::size_t node) const {
    return adjacent_[node];
  }

 private:
  static void Erase(std::vector<std::size_t>& cells, std::size_t cell) {
    auto it = std::find(cells.begin(), cells.end(), cell);
    *it = cells.back();
    cells.pop_back();
  }

  std::size_t m_, n_;
  std::vector<char> basic_;
  std::vector<std::vector<std::size_t>> adjacent_;
};

void CheckInputs(std::span<const double> supply, std::span<const double> demand,
                 const Matrix& cost) {
  if (supply.empty() || demand.empty()) {
    throw TransportError("transport problem with no sources or targets");
  }
  if (cost.rows() != supply.size() || cost.cols() != demand.size()) {
    throw TransportError("cost matrix shape does not match supply/demand");
  }
  double total_supply = 0.0, total_demand = 0.0;
  for (double s : supply) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw TransportError("bad supply");
    total_supply += s;
  }
  for (double d : demand) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw TransportError("bad demand");
    total_demand += d;
  }
  if (std::abs(total_supply - total_demand) >
      1e-9 * std::max(1.0, std::max(total_supply, total_demand))) {
    throw TransportError("unbalanced transport problem");
  }
  for (double c : cost.data()) {
    if (!std::isfinite(c)) throw TransportError("non-finite transport cost");
  }
}

}  // namespace

TransportSolution SolveTransport(std::span<const double> supply,
                                 std::span<const double> demand,
                                 const Matrix& cost) {
  CheckInputs(supply, demand, cost);
  const std::size_t m = supply.size();
  const std::size_t n = demand.size();
  const std::size_t cells = m * n;
  const std::size_t nodes = m + n;

  std::vector<double> flow(cells, 0.0);
  Basis basis(m, n);

  // North-west corner rule: a staircase of m + n - 1 cells, which is a
  // spanning tree even when some of them carry zero flow.
  {
    std::vector<double> s(supply.begin(), supply.end());
    std::vector<double> d(demand.begin(), demand.end());
    std::size_t i = 0, j = 0;
    while (true) {
      const double x = std::min(s[i], d[j]);
      flow[i * n + j] = x;
      basis.Add(i * n + j);
      s[i] -= x;
      d[j] -= x;
      if (i == m - 1 && j == n - 1) break;
      if (i == m - 1) {
        ++j;
      } else if (j == n - 1 || s[i] <= d[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  double max_cost = 0.0;
  for (double c : cost.data()) max_cost = std::max(max_cost, std::abs(c));
  const double tolerance = 1e-12 * std::max(1.0, max_cost);
  const std::size_t block = std::max<std::size_t>(
      std::min(cells, std::size_t{8}),
      static_cast<std::size_t>(std::sqrt(static_cast<double>(cells))));
  const std::size_t limit = 10000 + 200 * nodes * nodes;

  std::vector<double> u(m), v(n);
  std::vector<std::size_t> parent_node(nodes), parent_cell(nodes), depth(nodes);
  std::vector<char> seen(nodes);
  std::vector<std::size_t> queue;
  queue.reserve(nodes);
  std::vector<std::size_t> path_a, path_b, cycle;

  auto reduced_cost = [&](std::size_t cell) {
    return cost.data()[cell] - u[cell / n] - v[cell % n];
  };

  std::size_t cursor = 0;
  bool bland = false;
  TransportSolution solution;
  for (std::size_t iteration = 0;; ++iteration) {
    if (iteration == limit) {
      throw TransportError("transport simplex did not converge in " +
                           std::to_string(limit) + " iterations");
    }

    // Potentials: u_i + v_j = c_ij on every basic cell, with u_0 = 0.
    std::fill(seen.begin(), seen.end(), 0);
    queue.clear();
    queue.push_back(0);
    seen[0] = 1;
    u[0] = 0.0;
    depth[0] = 0;
    parent_node[0] = kNone;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t x = queue[head];
      for (std::size_t cell : basis.Adjacent(x)) {
        const std::size_t r = cell / n;
        const std::size_t c = m + cell % n;
        const std::size_t y = x < m ? c : r;
        if (seen[y]) continue;
        seen[y] = 1;
        parent_node[y] = x;
        parent_cell[y] = cell;
        depth[y] = depth[x] + 1;
        if (y >= m) {
          v[y - m] = cost.data()[cell] - u[r];
        } else {
          u[y] = cost.data()[cell] - v[c - m];
        }
        queue.push_back(y);
      }
    }

    std::size_t entering = kNone;
    if (bland) {
      for (std::size_t cell = 0; cell < cells; ++cell) {
        if (!basis.IsBasic(cell) && reduced_cost(cell) < -tolerance) {
          entering = cell;
          break;
        }
      }
    } else {
      double best = -tolerance;
      std::size_t cell = cursor;
      for (std::size_t scanned = 1; scanned <= cells; ++scanned) {
        if (!basis.IsBasic(cell)) {
          const double rc = reduced_cost(cell);
          if (rc < best) {
            best = rc;
            entering = cell;
          }
        }
        cell = cell + 1 == cells ? 0 : cell + 1;
        if (scanned % block == 0 && entering != kNone) break;
      }
      cursor = cell;
    }
    if (entering == kNone) {
      solution.iterations = iteration;
      break;
    }

    // Tree path from the entering cell's row to its column closes the cycle.
    std::size_t a = entering / n;
    std::size_t b = m + entering % n;
    path_a.clear();
    path_b.clear();
    while (a != b) {
      if (depth[a] >= depth[b]) {
        path_a.push_back(parent_cell[a]);
        a = parent_node[a];
      } else {
        path_b.push_back(parent_cell[b]);
        b = parent_node[b];
      }
    }
    cycle.assign(path_a.begin(), path_a.end());
    cycle.insert(cycle.end(), path_b.rbegin(), path_b.rend());

    // Even positions lose flow, odd positions gain it.
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leaving = kNone;
    for (std::size_t t = 0; t < cycle.size(); t += 2) {
      const double f = flow[cycle[t]];
      if (f < theta || (f == theta && cycle[t] < leaving)) {
        theta = f;
        leaving = cycle[t];
      }
    }
    flow[entering] = theta;
    for (std::size_t t = 0; t < cycle.size(); ++t) {
      double& f = flow[cycle[t]];
      f = t % 2 == 0 ? std::max(0.0, f - theta) : f + theta;
    }
    flow[leaving] = 0.0;
    basis.Remove(leaving);
    basis.Add(entering);
    bland = theta == 0.0;
  }

  for (std::size_t cell = 0; cell < cells; ++cell) {
    if (!basis.IsBasic(cell) || flow[cell] <= 0.0) continue;
    solution.flows.push_back({cell / n, cell % n, flow[cell]});
    solution.cost += flow[cell] * cost.data()[cell];
  }
  return solution;
}

}  // namespace synaug
