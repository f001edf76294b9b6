// Copyright 2026 The twinhs developers
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

//
// JSON wire formats. Complex numbers are [re, im] two-arrays; matrices are
// nested row-major arrays of them. A state file is
//   {"d1": 2, "d2": 2, "matrix": [[[re,im], ...], ...]}
// with the composite index i = i1*d2 + i2; an operator file is
//   {"dim": 2, "matrix": ...} (dim optional); a separable-decomposition file
// is a list of {"w": x, "rho1": matrix, "rho2": matrix}.
//

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "twinhs/linalg.hpp"
#include "twinhs/twins.hpp"

namespace twinhs {

// Insertion-ordered so reports are byte-identical across runs.
using Json = nlohmann::ordered_json;

Json complex_to_json(const Complex& z);
Json matrix_to_json(const CMatrix& m);
Json rvector_to_json(const RVector& v);

CMatrix matrix_from_json(const Json& j);

/// Throws std::invalid_argument on schema errors and NotAStateError when the
/// matrix fails positivity/trace at `tol`.
BipartiteState state_from_json(const Json& j, double tol = 1e-8);
HermOp hermop_from_json(const Json& j, double tol = 1e-8);
SeparableDecomp decomp_from_json(const Json& j, double tol = 1e-8);

Json state_to_json(const BipartiteState& s);

/// FNV-1a 64-bit digest of raw input bytes, as "fnv1a:<hex>". Stable across
/// platforms, used for the inputs_digest field of reports.
std::string digest(std::string_view bytes);

std::string read_file(const std::string& path);

}  // namespace twinhs
