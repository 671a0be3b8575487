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

#ifndef MFCOVERT_CAMPAIGN_HPP
#define MFCOVERT_CAMPAIGN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mfcovert/csv.hpp"
#include "mfcovert/scenario.hpp"
#include "mfcovert/schemes.hpp"

namespace mfcovert
{
    struct CampaignOptions
    {
        std::size_t trials = 0;          // 0 -> scenario.trials
        std::size_t draws_per_trial = 0; // covert probability: CSI error draws per realization, 0 -> auto
        unsigned threads = 0;
        std::vector<double> sweep;       // overrides the default x-axis values when non-empty
        std::vector<SchemeId> schemes;   // overrides the default scheme set when non-empty
    };

    struct CampaignResult
    {
        std::string figure;
        CsvTable table{{"x"}};
    };

    /// Recognized ids: fig2, fig3, fig4, fig5, fig6, fig7, fig8, fig9, fig10.
    const std::vector<std::string> &figure_ids();

    /// Throws std::invalid_argument for an unknown id.
    CampaignResult run_figure(const std::string &id, const Scenario &scenario, const CampaignOptions &opt = {});

    struct CovertProbabilityRow
    {
        double epsilon = 0.0;
        std::vector<double> probability; // one per scheme
    };

    /// For every realization the schemes are designed once on the estimated channels; each CSI
    /// error draw then checks all Willies against the covert power threshold.
    std::vector<CovertProbabilityRow> covert_probability_sweep(const Scenario &scenario,
                                                               const std::vector<SchemeId> &schemes,
                                                               const std::vector<double> &epsilons,
                                                               std::size_t realizations, std::size_t draws,
                                                               unsigned threads = 0);

    /// 64-bit FNV-1a.
    std::uint64_t fnv1a64(const std::string &text);

    /// JSON run manifest: figure, config hash, seed, trials, version, wall time, output file.
    std::string run_manifest(const std::string &figure, const Scenario &scenario, std::size_t trials,
                             double wall_time_s, const std::string &csv_file);

    extern const char *const kVersion;
}

#endif
