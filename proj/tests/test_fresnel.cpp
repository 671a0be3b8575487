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

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mfcovert/fresnel.hpp"

using namespace mfcovert;

namespace
{
    struct Ref
    {
        double x, c, s;
    };
    // 30-digit reference values
    constexpr Ref kRef[] = {{0.5, 0.49234422587144639, 0.064732432859999278},
                            {1.0, 0.77989340037682283, 0.43825914739035477},
                            {2.0, 0.48825340607534075, 0.34341567836369824},
                            {3.0, 0.60572078929768563, 0.49631299896737504},
                            {7.9, 0.47597379384841175, 0.53234203474777175},
                            {8.0, 0.49980218037719714, 0.46021421439301448},
                            {8.1, 0.52275061255785637, 0.53203939564156115},
                            {15.0, 0.52122053167437346, 0.49996997980970274},
                            {40.0, 0.49999841685744546, 0.4920422537902731}};
}

TEST_CASE("Fresnel integrals against reference values on both sides of the asymptotic switch")
{
    for (const auto &r : kRef)
    {
        const auto v = fresnel_integrals(r.x);
        CHECK(std::abs(v.c - r.c) < 1e-10);
        CHECK(std::abs(v.s - r.s) < 1e-10);
    }
    CHECK(fresnel_integrals(0.0).c == 0.0);
    CHECK_THROWS_AS(fresnel_integrals(-1.0), std::invalid_argument);
}

TEST_CASE("|G| at reference points")
{
    CHECK(fresnel_g_magnitude(0.0) == 1.0);
    CHECK(std::abs(fresnel_g_magnitude(1.0) - 0.89459756104219509) < 1e-10);
    CHECK(std::abs(fresnel_g_magnitude(3.0) - 0.26102879099001935) < 1e-10);
    CHECK(fresnel_g_magnitude(3.0) < fresnel_g_magnitude(1.0));
    const double tail = (1.0 / std::sqrt(2.0)) / 100.0;
    CHECK(std::abs(fresnel_g_magnitude(100.0) - tail) / tail < 0.05);
}

TEST_CASE("|G| grid equals pointwise evaluation")
{
    const auto grid = fresnel_g_magnitude_grid(12.0, 0.05);
    REQUIRE(grid.size() == 241);
    for (std::size_t k = 0; k < grid.size(); k += 7)
        CHECK(std::abs(grid[k] - fresnel_g_magnitude(0.05 * double(k))) < 1e-9);
}
