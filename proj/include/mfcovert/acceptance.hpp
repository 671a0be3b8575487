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

#ifndef MFCOVERT_ACCEPTANCE_HPP
#define MFCOVERT_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mfcovert
{
    struct CriterionResult
    {
        int id = 0;
        std::string name;
        bool pass = false;
        std::string detail;
        double seconds = 0.0;
    };

    struct AcceptanceOptions
    {
        std::vector<int> only;              // empty -> all criteria
        unsigned threads = 0;
        std::size_t rate_sweep_trials = 3;  // realizations per transmit power point
        std::size_t csi_realizations = 10;  // designs in the CSI error sweep
        std::size_t csi_draws = 10;         // error draws per design
    };

    /// One line per criterion: "criterion <id> <PASS|FAIL> <name>: <detail> (<seconds> s)".
    std::string format_result(const CriterionResult &r);

    /// Runs the selected criteria in order. Each result line is also written to `log` when given.
    std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &opt = {}, std::ostream *log = nullptr);
}

#endif
