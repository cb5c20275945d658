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

#include "usf/json_io.hpp"

#include <fstream>

#include "usf/channels.hpp"

namespace usf::io {

using nlohmann::json;

json matrix_to_json(const linalg::ComplexMatrix& m) {
    json j;
    j["dim_rows"] = m.rows();
    j["dim_cols"] = m.cols();
    std::vector<double> re;
    std::vector<double> im;
    re.reserve(m.size());
    im.reserve(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            re.push_back(m(i, k).real());
            im.push_back(m(i, k).imag());
        }
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

linalg::ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim_rows") || !j.contains("dim_cols") ||
        !j.contains("re") || !j.contains("im")) {
        throw ParseError("matrix: expected {dim_rows, dim_cols, re, im}");
    }
    long rows = 0;
    long cols = 0;
    std::vector<double> re;
    std::vector<double> im;
    try {
        rows = j.at("dim_rows").get<long>();
        cols = j.at("dim_cols").get<long>();
        re = j.at("re").get<std::vector<double>>();
        im = j.at("im").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("matrix: ") + e.what());
    }
    if (rows <= 0 || cols <= 0) {
        throw ParseError("matrix: dimensions must be positive");
    }
    if (static_cast<long>(re.size()) != rows * cols ||
        static_cast<long>(im.size()) != rows * cols) {
        throw ParseError("matrix: entry count does not match dimensions");
    }
    linalg::ComplexMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i) {
        for (long k = 0; k < cols; ++k) {
            m(i, k) = linalg::Complex(re[i * cols + k], im[i * cols + k]);
        }
    }
    if (!linalg::all_finite(m)) {
        throw NonFinite("matrix: non-finite entries");
    }
    return m;
}

json density_to_json(const states::DensityOperator& rho) {
    return matrix_to_json(rho.matrix());
}

states::DensityOperator density_from_json(const json& j) {
    return states::DensityOperator::from_matrix(matrix_from_json(j));
}

json filter_result_to_json(const filtering::FilterResult& result) {
    json j;
    j["P"] = result.detection_probability;
    j["false_alarm"] = result.false_alarm;
    j["n"] = result.union_dim;
    j["m"] = result.other_dim;
    json povm = json::array();
    for (const auto& e : result.povm.elements) {
        povm.push_back(matrix_to_json(e));
    }
    j["povm"] = std::move(povm);
    return j;
}

states::DensityOperator apply_channel_spec(const json& spec,
                                           const states::DensityOperator& rho) {
    if (!spec.is_object() || !spec.contains("type")) {
        throw ParseError("channel spec: expected {type, ...}");
    }
    try {
        const std::string type = spec.at("type").get<std::string>();
        if (type == "depolarizing") {
            const auto channel = channels::DepolarizingChannel::make(
                spec.at("n").get<int>(), spec.at("p").get<double>());
            return channels::depolarize(rho, channel);
        }
        if (type == "loss") {
            const auto channel =
                channels::LossChannel::from_loss(spec.at("R").get<double>());
            return channels::apply_channel(
                channels::loss_kraus(channel, rho.dim()), rho);
        }
        throw ParseError("channel spec: unknown type \"" + type + "\"");
    } catch (const json::exception& e) {
        throw ParseError(std::string("channel spec: ") + e.what());
    }
}

states::DensityOperator load_density_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open state file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return density_from_json(j);
}

}  // namespace usf::io
