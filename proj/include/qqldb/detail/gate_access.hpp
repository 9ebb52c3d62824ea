// Copyright 2026 The qqldb Authors
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

#pragma once

#include <utility>

#include "qqldb/gates.hpp"

namespace qqldb::detail {

// Builds GateMatrix values whose unitarity holds by construction (products,
// Kronecker products, permutations), skipping the O(d^3) check.
struct GateAccess {
    static GateMatrix trusted(Matrix m) { return GateMatrix(GateMatrix::Trusted{}, std::move(m)); }
};

}  // namespace qqldb::detail
