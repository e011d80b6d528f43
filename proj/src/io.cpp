// SPDX-License-Identifier: Apache-2.0

#include "qtr/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qtr::io {

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_number(const std::string &field, double &out)
{
    const std::string t = trim(field);
    if (t.empty())
        return false;
    std::size_t used = 0;
    try {
        out = std::stod(t, &used);
    } catch (const std::exception &) {
        return false;
    }
    return used == t.size();
}

std::vector<std::string> split(const std::string &line)
{
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        fields.push_back(field);
    return fields;
}

void write_value(std::ostream &os, const nlohmann::ordered_json &v, int indent, int depth)
{
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (v.type()) {
    case nlohmann::ordered_json::value_t::object: {
        if (v.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first)
                os << ",\n";
            first = false;
            os << pad << nlohmann::ordered_json(it.key()).dump() << ": ";
            write_value(os, it.value(), indent, depth + 1);
        }
        os << "\n" << close_pad << "}";
        return;
    }
    case nlohmann::ordered_json::value_t::array: {
        if (v.empty()) {
            os << "[]";
            return;
        }
        os << "[\n";
        bool first = true;
        for (const auto &item : v) {
            if (!first)
                os << ",\n";
            first = false;
            os << pad;
            write_value(os, item, indent, depth + 1);
        }
        os << "\n" << close_pad << "]";
        return;
    }
    case nlohmann::ordered_json::value_t::number_float: {
        const double d = v.get<double>();
        if (std::isfinite(d))
            os << format_double(d);
        else
            os << "null";
        return;
    }
    default:
        os << v.dump();
    }
}

} // namespace

std::vector<std::vector<double>> read_numeric_csv(std::istream &is)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        const auto fields = split(t);
        std::vector<double> row;
        row.reserve(fields.size());
        bool numeric = true;
        for (const auto &f : fields) {
            double v = 0.0;
            if (!parse_number(f, v)) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) {
            if (rows.empty())
                continue; // header
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": non-numeric field");
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(rows.front().size()) + " columns, found " +
                                     std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_csv_row(std::ostream &os, const std::vector<double> &row)
{
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0)
            os << ',';
        os << format_double(row[i]);
    }
    os << '\n';
}

std::vector<std::string> coordinate_header(std::size_t n)
{
    if (n == 1)
        return {"x", "y"};
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i)
        names.push_back("x" + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i)
        names.push_back("y" + std::to_string(i));
    return names;
}

void write_header(std::ostream &os, const std::vector<std::string> &names)
{
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0)
            os << ',';
        os << names[i];
    }
    os << '\n';
}

void write_json(std::ostream &os, const nlohmann::ordered_json &value, int indent)
{
    write_value(os, value, indent, 0);
    os << '\n';
}

std::string to_json_string(const nlohmann::ordered_json &value, int indent)
{
    std::ostringstream os;
    write_json(os, value, indent);
    return os.str();
}

} // namespace qtr::io
