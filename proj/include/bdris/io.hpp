// SPDX-License-Identifier: Apache-2.0
//
// bdris - dual-polarized beyond-diagonal RIS simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "bdris/montecarlo.hpp"
#include "bdris/scattering.hpp"

#include <json.hpp>

#include <string>

namespace bdris {

/// Formats with 12 significant digits; infinities become the sentinel
/// strings "inf" / "-inf" so CSV cells stay parseable.
std::string format_double(double value);

/// A double as a JSON value; infinities become the strings "inf" / "-inf"
/// (JSON has no number literal for them).
nlohmann::json json_number(double value);

/// {"mean", "stderr", "trials", "seed", "target", "verdict"} with target
/// null when absent and verdict one of "pass" / "fail" / null.
nlohmann::json to_json(const EstimateReport &report);

/// {"n", "groups", "re", "im"} with the matrix entries split into row-major
/// real and imaginary arrays.
nlohmann::json to_json(const ScatteringMatrix &matrix);

} // namespace bdris
