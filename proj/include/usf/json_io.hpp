// Copyright 2026 The usf Authors
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

#pragma once

#include <string>

#include "json.hpp"

#include "usf/filtering.hpp"

namespace usf::io {

/// Matrix wire format: {dim_rows, dim_cols, re: [...], im: [...]},
/// entries in row-major order.
nlohmann::json matrix_to_json(const linalg::ComplexMatrix& m);
linalg::ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json density_to_json(const states::DensityOperator& rho);
states::DensityOperator density_from_json(const nlohmann::json& j);

/// {P, false_alarm, n, m, povm: [matrix, matrix]}.
nlohmann::json filter_result_to_json(const filtering::FilterResult& result);

states::DensityOperator load_density_file(const std::string& path);

/// Channel spec {type: "depolarizing", n, p} or {type: "loss", R} applied
/// to a state. For the loss type the Kraus rank follows the state
/// dimension.
states::DensityOperator apply_channel_spec(const nlohmann::json& spec,
                                           const states::DensityOperator& rho);

}  // namespace usf::io
