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

#ifndef SYNAUG_TESTS_TESTING_LP_ORACLE_H_
#define SYNAUG_TESTS_TESTING_LP_ORACLE_H_

#include <span>
#include <vector>

#include "synaug/eval_extrinsic.h"
#include "synaug/matrix.h"

namespace synaug::testing {

// Minimum transport cost by enumerating every vertex of the transportation
// polytope: each basis is a spanning tree on the m + n marginals, whose
// flows follow by peeling leaves. Exponential; meant for m * n <= 16.
double OracleTransportCost(std::span<const double> supply,
                           std::span<const double> demand, const Matrix& cost);

// WMD through OracleTransportCost with Euclidean ground cost.
double OracleWmd(const Matrix& vectors, const NBowDocument& a,
                 const NBowDocument& b);

// Majority vote of the k nearest references under OracleWmd, written
// without any of the library's KNN code. Ties in distance go to the lower
// reference index; vote ties to the smaller summed distance, then the
// lower label.
std::vector<int> NaiveKnnPredict(const Matrix& vectors,
                                 std::span<const NBowDocument> queries,
                                 std::span<const NBowDocument> references,
                                 int k, bool leave_one_out);

}  // namespace synaug::testing

#endif  // SYNAUG_TESTS_TESTING_LP_ORACLE_H_
