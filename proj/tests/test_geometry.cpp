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
#include <vector>

#include "mfcovert/geometry.hpp"

using namespace mfcovert;

TEST_CASE("antenna positions of a two-subarray layout")
{
    const ArrayLayout layout(0.01, 4, 2, {-0.005, 0.005}, {-1.0, 1.0});
    const auto pos = antenna_positions(layout);
    const std::vector<double> expect{-0.0075, -0.0025, 0.0025, 0.0075};
    REQUIRE(pos.size() == expect.size());
    for (std::size_t i = 0; i < pos.size(); ++i)
        CHECK(pos[i] == doctest::Approx(expect[i]).epsilon(1e-14));
}

TEST_CASE("uniform layout spans the nominal aperture")
{
    const auto layout = uniform_layout(256, 8, 0.01);
    CHECK(layout.nominal_aperture() == doctest::Approx(1.28));
    CHECK(layout.centers().back() - layout.centers().front() == doctest::Approx(1.28 - 0.16));
    CHECK(layout.is_uniform());
    CHECK(check_feasible(layout).ok);

    const auto pos = antenna_positions(layout);
    for (std::size_t i = 1; i < pos.size(); ++i)
        CHECK(pos[i] - pos[i - 1] == doctest::Approx(0.005).epsilon(1e-9));
}

TEST_CASE("structural errors are rejected")
{
    CHECK_THROWS_AS(ArrayLayout(0.01, 255, 8, std::vector<double>(8, 0.0), {-1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(ArrayLayout(0.01, 256, 8, std::vector<double>(7, 0.0), {-1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(uniform_layout(256, 8, 0.01, {-0.1, 0.1}), std::invalid_argument);
}

TEST_CASE("feasibility report lists overlapping pairs and escaped centers")
{
    const ArrayLayout layout(0.01, 96, 3, {0.0, 0.1, 2.0}, {-1.0, 1.0});
    const auto rep = check_feasible(layout);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.violating_pairs.size() == 1);
    CHECK(rep.violating_pairs[0] == std::pair<std::size_t, std::size_t>{0, 1});
    REQUIRE(rep.out_of_region.size() == 1);
    CHECK(rep.out_of_region[0] == 2);
}

TEST_CASE("clamp keeps every coordinate inside the region")
{
    const std::vector<double> q{-3.0, 0.2, 5.0};
    const auto c = clamp_to_region(q, {-1.0, 1.0});
    CHECK(c == std::vector<double>{-1.0, 0.2, 1.0});
}
