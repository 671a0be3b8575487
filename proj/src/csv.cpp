// SPDX-License-Identifier: Apache-2.0
//
// mfcovert: covert transmission toolkit for movable mixed-field XL-arrays
// Copyright (C) 2026 The mfcovert Authors
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

#include "mfcovert/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mfcovert
{
    std::string format_number(double value)
    {
        if (std::isnan(value))
            return "nan";
        if (std::isinf(value))
            return value > 0 ? "inf" : "-inf";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", value);
        return buf;
    }

    CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns))
    {
        if (columns_.empty())
            throw std::invalid_argument("CsvTable: no columns");
    }

    void CsvTable::add_row(const std::vector<double> &values)
    {
        if (values.size() != columns_.size())
            throw std::invalid_argument("CsvTable: row width does not match header");
        std::string line;
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            if (i)
                line += ',';
            line += format_number(values[i]);
        }
        rows_.push_back(std::move(line));
        values_.push_back(values);
    }

    void CsvTable::add_row(const std::string &label, const std::vector<double> &values)
    {
        if (values.size() + 1 != columns_.size())
            throw std::invalid_argument("CsvTable: row width does not match header");
        std::string line = label;
        for (double v : values)
            line += ',' + format_number(v);
        rows_.push_back(std::move(line));
        std::vector<double> row{std::nan("")};
        row.insert(row.end(), values.begin(), values.end());
        values_.push_back(std::move(row));
    }

    std::vector<double> CsvTable::column(const std::string &name) const
    {
        const auto it = std::find(columns_.begin(), columns_.end(), name);
        if (it == columns_.end())
            throw std::invalid_argument("CsvTable: no column '" + name + "'");
        const auto k = std::size_t(it - columns_.begin());
        std::vector<double> out;
        out.reserve(values_.size());
        for (const auto &row : values_)
            out.push_back(row[k]);
        return out;
    }

    void CsvTable::write(std::ostream &os) const
    {
        for (std::size_t i = 0; i < columns_.size(); ++i)
            os << (i ? "," : "") << columns_[i];
        os << '\n';
        for (const auto &r : rows_)
            os << r << '\n';
    }

    std::string CsvTable::str() const
    {
        std::ostringstream os;
        write(os);
        return os.str();
    }

    void CsvTable::save(const std::string &path) const
    {
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open " + path + " for writing");
        write(f);
        if (!f)
            throw std::runtime_error("write failed: " + path);
    }
}
