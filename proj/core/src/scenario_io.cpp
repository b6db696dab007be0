// SPDX-License-Identifier: Apache-2.0
//
// isac-mi: asymptotic mutual information and beamforming for MIMO ISAC
// Copyright (C) 2026 The isac-mi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "isac/scenario_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace isac {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "isac-mi/scenario";
constexpr int kVersion = 1;

json complex_to_json(const CMat& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json real_to_json(const RMat& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back(m(i, j));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key))
        throw ScenarioFormatError(std::string("missing field '") + key + "'");
    return obj.at(key);
}

std::pair<Eigen::Index, Eigen::Index> shape_of(const json& j) {
    const auto rows = field(j, "rows").get<Eigen::Index>();
    const auto cols = field(j, "cols").get<Eigen::Index>();
    if (rows < 0 || cols < 0)
        throw ScenarioFormatError("negative matrix shape");
    const auto& data = field(j, "data");
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw ScenarioFormatError("matrix data length does not match its shape");
    return {rows, cols};
}

CMat complex_from_json(const json& j) {
    const auto [rows, cols] = shape_of(j);
    const auto& data = j.at("data");
    CMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j2 = 0; j2 < cols; ++j2) {
            const auto& e = data[static_cast<std::size_t>(i * cols + j2)];
            if (!e.is_array() || e.size() != 2)
                throw ScenarioFormatError("complex entry must be an [re, im] pair");
            m(i, j2) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    return m;
}

RMat real_from_json(const json& j) {
    const auto [rows, cols] = shape_of(j);
    const auto& data = j.at("data");
    RMat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j2 = 0; j2 < cols; ++j2)
            m(i, j2) = data[static_cast<std::size_t>(i * cols + j2)].get<double>();
    return m;
}

json channel_to_json(const WeichselbergerStats& s) {
    return {{"mean", complex_to_json(s.mean)},
            {"left_unitary", complex_to_json(s.left_unitary)},
            {"right_unitary", complex_to_json(s.right_unitary)},
            {"variance_profile", real_to_json(s.variance_profile)}};
}

WeichselbergerStats channel_from_json(const json& j) {
    WeichselbergerStats s;
    s.mean = complex_from_json(field(j, "mean"));
    s.left_unitary = complex_from_json(field(j, "left_unitary"));
    s.right_unitary = complex_from_json(field(j, "right_unitary"));
    s.variance_profile = real_from_json(field(j, "variance_profile"));
    return s;
}

} // namespace

std::string scenario_to_json(const ScenarioStats& stats, int indent) {
    const auto& d = stats.dims;
    const auto& g = stats.geometry;
    json doc;
    doc["format"] = kFormat;
    doc["version"] = kVersion;
    doc["dims"] = {{"n_t", d.n_t}, {"n_r", d.n_r}, {"n_u", d.n_u},
                   {"num_scatter", d.num_scatter}, {"m", d.m}, {"n_s", d.n_s}};
    if (std::isinf(stats.rician_kappa))
        doc["rician_kappa"] = "inf";
    else
        doc["rician_kappa"] = stats.rician_kappa;
    doc["seed"] = stats.seed;
    doc["geometry"] = {{"comm_departure_azimuth", g.comm_departure_azimuth},
                       {"comm_departure_elevation", g.comm_departure_elevation},
                       {"comm_arrival_azimuth", g.comm_arrival_azimuth},
                       {"comm_arrival_elevation", g.comm_arrival_elevation},
                       {"target_azimuth", g.target_azimuth},
                       {"target_elevation", g.target_elevation},
                       {"angular_spread", g.angular_spread}};
    doc["comm"] = channel_to_json(stats.comm);
    json sensing = json::array();
    for (const auto& s : stats.sensing)
        sensing.push_back(channel_to_json(s));
    doc["sensing"] = std::move(sensing);
    return doc.dump(indent);
}

ScenarioStats scenario_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioFormatError(std::string("scenario JSON parse error: ") + e.what());
    }
    try {
        if (field(doc, "format").get<std::string>() != kFormat)
            throw ScenarioFormatError("not an isac-mi scenario document");
        if (field(doc, "version").get<int>() != kVersion)
            throw ScenarioFormatError("unsupported scenario version");

        ScenarioStats s;
        const auto& d = field(doc, "dims");
        s.dims.n_t = field(d, "n_t").get<int>();
        s.dims.n_r = field(d, "n_r").get<int>();
        s.dims.n_u = field(d, "n_u").get<int>();
        s.dims.num_scatter = field(d, "num_scatter").get<int>();
        s.dims.m = field(d, "m").get<int>();
        s.dims.n_s = field(d, "n_s").get<int>();

        const auto& kappa = field(doc, "rician_kappa");
        if (kappa.is_string()) {
            if (kappa.get<std::string>() != "inf")
                throw ScenarioFormatError("rician_kappa must be a number or \"inf\"");
            s.rician_kappa = kPureLosKappa;
        } else {
            s.rician_kappa = kappa.get<double>();
        }
        s.seed = field(doc, "seed").get<std::uint64_t>();

        const auto& g = field(doc, "geometry");
        s.geometry.comm_departure_azimuth = field(g, "comm_departure_azimuth").get<double>();
        s.geometry.comm_departure_elevation = field(g, "comm_departure_elevation").get<double>();
        s.geometry.comm_arrival_azimuth = field(g, "comm_arrival_azimuth").get<double>();
        s.geometry.comm_arrival_elevation = field(g, "comm_arrival_elevation").get<double>();
        s.geometry.target_azimuth = field(g, "target_azimuth").get<double>();
        s.geometry.target_elevation = field(g, "target_elevation").get<double>();
        s.geometry.angular_spread = field(g, "angular_spread").get<double>();

        s.comm = channel_from_json(field(doc, "comm"));
        const auto& sensing = field(doc, "sensing");
        if (!sensing.is_array())
            throw ScenarioFormatError("'sensing' must be an array");
        for (const auto& c : sensing)
            s.sensing.push_back(channel_from_json(c));

        s.validate();
        return s;
    } catch (const json::exception& e) {
        throw ScenarioFormatError(std::string("scenario JSON type error: ") + e.what());
    }
}

void save_scenario(const ScenarioStats& stats, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << scenario_to_json(stats) << '\n';
}

ScenarioStats load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

} // namespace isac
