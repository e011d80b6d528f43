// SPDX-License-Identifier: Apache-2.0
//
// Small helpers shared by the CSV/JSON dumps.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace qtr::io {

/// %.17g
std::string format_double(double v);

/// Parses comma-separated numeric rows. Blank lines, '#' comments and a
/// leading header row (first field not a number) are skipped. All rows must
/// have the same column count.
std::vector<std::vector<double>> read_numeric_csv(std::istream &is);

void write_csv_row(std::ostream &os, const std::vector<double> &row);

/// Column names for 2n phase-space coordinates: "x,y" for n = 1, else x1..xn,y1..yn.
std::vector<std::string> coordinate_header(std::size_t n);

void write_header(std::ostream &os, const std::vector<std::string> &names);

/// JSON with insertion order preserved and every float printed with 17
/// significant digits. Non-finite floats become null.
void write_json(std::ostream &os, const nlohmann::ordered_json &value, int indent = 2);
std::string to_json_string(const nlohmann::ordered_json &value, int indent = 2);

} // namespace qtr::io
