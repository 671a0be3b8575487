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

#ifndef MFCOVERT_BEAMFORMER_HPP
#define MFCOVERT_BEAMFORMER_HPP

#include "mfcovert/common.hpp"

namespace mfcovert
{
    /// F_A (N x B, unit-modulus entries) and F_D (B x B); column b of F_A F_D serves Bob b.
    struct HybridBeamformer
    {
        CMatrix analog;
        CMatrix digital;
        double power_budget_w = 0.0;

        CMatrix precoder() const { return analog * digital; }
        double transmit_power() const { return precoder().squaredNorm(); }
        bool power_ok(double rel_slack = 1e-6) const { return transmit_power() <= power_budget_w * (1.0 + rel_slack); }
        bool unit_modulus(double tol = 1e-9) const
        {
            for (Eigen::Index i = 0; i < analog.size(); ++i)
                if (std::abs(std::abs(analog.data()[i]) - 1.0) > tol)
                    return false;
            return true;
        }
    };
}

#endif
