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

#ifndef MFCOVERT_CSV_HPP
#define MFCOVERT_CSV_HPP

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace mfcovert
{
    /// printf "%.9g"; nan and inf are spelled nan, inf, -inf.
    std::string format_number(double value);

    /// Minimal CSV table with a fixed float format and '\n' line endings.
    class CsvTable
    {
    public:
        explicit CsvTable(std::vector<std::string> columns);

        void add_row(const std::vector<double> &values);
        void add_row(std::initializer_list<double> values) { add_row(std::vector<double>(values)); }
        /// Row with a leading text field (the first column).
        void add_row(const std::string &label, const std::vector<double> &values);

        const std::vector<std::string> &columns() const { return columns_; }
        std::size_t rows() const { return rows_.size(); }

        /// Unformatted values of one column (nan for text fields). Throws for an unknown name.
        std::vector<double> column(const std::string &name) const;

        void write(std::ostream &os) const;
        std::string str() const;
        void save(const std::string &path) const;

    private:
        std::vector<std::string> columns_;
        std::vector<std::string> rows_;
        std::vector<std::vector<double>> values_;
    };
}

#endif
