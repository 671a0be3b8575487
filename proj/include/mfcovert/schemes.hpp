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

#ifndef MFCOVERT_SCHEMES_HPP
#define MFCOVERT_SCHEMES_HPP

#include <random>
#include <string>
#include <vector>

#include "mfcovert/beamforming.hpp"
#include "mfcovert/placement.hpp"
#include "mfcovert/scenario.hpp"

namespace mfcovert
{
    enum class SchemeId
    {
        MovableProposed,
        MovableNoCovert,
        Fixed,
        FixedNoCovert,
        RandomMovable,
        RandomMovableNoCovert,
        UpperBound
    };

    std::string to_string(SchemeId id);
    SchemeId scheme_from_string(const std::string &name); // throws std::invalid_argument
    const std::vector<SchemeId> &all_schemes();
    bool is_covert_constrained(SchemeId id);

    struct SchemeOutcome
    {
        SchemeId scheme = SchemeId::Fixed;
        RateReport rates;
        std::vector<double> centers;
        HybridBeamformer beamformer; // empty for the upper bound
        double covert_threshold_w = 0.0;
        std::vector<double> willie_power_w; // post-hoc, perfect CSI
        bool covert_ok = false;
        bool solver_ok = true;
        std::string diagnostic;
        std::vector<SCATraceRow> sca_trace;
        std::vector<DETraceRow> de_trace;
    };

    /// Hybrid design (MRT analog + SCA digital) for a given layout.
    SchemeOutcome design_for_layout(const Scenario &s, const Realization &r, const ArrayLayout &layout, bool covert,
                                    const CMatrix &warm_digital = CMatrix());

    /// Runs the requested schemes on one realization, sharing work between a scheme and its
    /// relaxed counterpart. Outcomes follow the order of `ids`.
    std::vector<SchemeOutcome> run_schemes(const std::vector<SchemeId> &ids, const Scenario &s, const Realization &r);
    SchemeOutcome run_scheme(SchemeId id, const Scenario &s, const Realization &r);

    /// Estimated channel plus CN(0, eps^2 ||h||^2 I) error.
    ChannelVector perturb_csi(const ChannelVector &channel, double epsilon, std::mt19937_64 &rng);

    /// sum_b |h^H F_A f_b|^2 for every Willie channel.
    std::vector<double> willie_received_powers(const std::vector<ChannelVector> &willies, const HybridBeamformer &bf);
}

#endif
