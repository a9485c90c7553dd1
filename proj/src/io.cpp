// SPDX-License-Identifier: Apache-2.0
//
// bdris - dual-polarized beyond-diagonal RIS simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "bdris/io.hpp"

#include <cmath>
#include <cstdio>

namespace bdris {

std::string format_double(double value)
{
    if (std::isinf(value))
        return value > 0.0 ? "inf" : "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

nlohmann::json json_number(double value)
{
    if (std::isinf(value))
        return value > 0.0 ? "inf" : "-inf";
    return value;
}

nlohmann::json to_json(const EstimateReport &report)
{
    nlohmann::json j;
    j["mean"] = json_number(report.mean);
    j["stderr"] = json_number(report.std_error);
    j["trials"] = report.trials;
    j["seed"] = report.seed;
    j["target"] = report.target ? json_number(*report.target) : nlohmann::json(nullptr);
    j["verdict"] =
        report.passed ? nlohmann::json(*report.passed ? "pass" : "fail") : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const ScatteringMatrix &matrix)
{
    const Eigen::Index n = matrix.theta.rows();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index row = 0; row < n; ++row)
        for (Eigen::Index col = 0; col < n; ++col)
        {
            re.push_back(matrix.theta(row, col).real());
            im.push_back(matrix.theta(row, col).imag());
        }

    nlohmann::json j;
    j["n"] = matrix.architecture.n_elements();
    j["groups"] = matrix.architecture.groups();
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

} // namespace bdris
