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
#include <sstream>
#include <stdexcept>
#include <string>

#include "mfcovert/campaign.hpp"
#include "mfcovert/csv.hpp"
#include "mfcovert/rng.hpp"
#include "mfcovert/scenario.hpp"
#include "mfcovert/schemes.hpp"

using namespace mfcovert;

TEST_CASE("line-of-sight amplitude")
{
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(los_amplitude(30.0, 0.01, inf) == doctest::Approx(0.01 / (4 * kPi) / 30.0).epsilon(1e-12));
    CHECK(los_amplitude(30.0, 0.01, 10.0) == doctest::Approx(std::sqrt(10.0 / 11.0) * 0.01 / (4 * kPi) / 30.0));
}

TEST_CASE("scenario JSON round trip and strict parsing")
{
    const auto s = default_scenario();
    const auto back = scenario_from_json(scenario_to_json(s));
    CHECK(back.num_antennas == s.num_antennas);
    CHECK(back.seed == s.seed);
    CHECK(back.bobs.size() == s.bobs.size());
    CHECK(back.willies.size() == s.willies.size());
    CHECK(back.covertness.rho == doctest::Approx(s.covertness.rho).epsilon(1e-14));
    CHECK(back.bob_noise_w == doctest::Approx(s.bob_noise_w).epsilon(1e-14));
    CHECK(back.de.population == s.de.population);
    CHECK_THROWS_AS(scenario_from_json("{\"no_such_key\": 1}"), std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json("{\"array\": {\"num_antennas\": \"many\"}}"), std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json("{\"array\": {\"num_antennas\": 250}}"), std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json("{\"trials\": 0}"), std::invalid_argument);
    CHECK(scenario_from_json("{\"array\": {\"num_antennas\": 128}}").num_antennas == 128);
}

TEST_CASE("realizations depend only on seed and trial")
{
    const auto s = default_scenario();
    const auto a = sample_scenario(s, 4), b = sample_scenario(s, 4), c = sample_scenario(s, 5);
    CHECK(a.bob_locations()[0].range_m == b.bob_locations()[0].range_m);
    CHECK(a.bobs[0].los.gain == b.bobs[0].los.gain);
    CHECK(a.bob_locations()[0].range_m != c.bob_locations()[0].range_m);
    double wsum = 0.0;
    for (double w : a.weights)
        wsum += w;
    CHECK(wsum == doctest::Approx(1.0));
}

TEST_CASE("CSI error power")
{
    const auto s = default_scenario();
    const auto r = sample_scenario(s, 0);
    const auto layout = s.fixed_layout();
    const auto pos = antenna_positions(layout);
    const auto h = r.bob_channels(pos, s.wavelength())[0];
    const double eps = 0.05, n = double(h.coefficients.size()), h2 = h.coefficients.squaredNorm();
    auto rng = substream(41, 0);
    const int draws = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int t = 0; t < draws; ++t)
    {
        const double e2 = (perturb_csi(h, eps, rng).coefficients - h.coefficients).squaredNorm();
        sum += e2;
        sum2 += e2 * e2;
    }
    const double mean = sum / draws, sd = std::sqrt(sum2 / draws - mean * mean);
    CHECK(std::abs(mean - eps * eps * h2 * n) <= 3 * sd / std::sqrt(double(draws)));
    CHECK((perturb_csi(h, 0.0, rng).coefficients - h.coefficients).norm() == 0.0);
}

TEST_CASE("scheme names")
{
    for (auto id : all_schemes())
        CHECK(scheme_from_string(to_string(id)) == id);
    CHECK_THROWS_AS(scheme_from_string("BEST"), std::invalid_argument);
    CHECK(is_covert_constrained(SchemeId::Fixed));
    CHECK_FALSE(is_covert_constrained(SchemeId::UpperBound));
}

TEST_CASE("movable layout is at least as good as the fixed one on paired realizations")
{
    auto s = default_scenario();
    s.de.threads = 1;
    int wins = 0;
    const int seeds = 50;
    for (int i = 0; i < seeds; ++i)
    {
        s.seed = std::uint64_t(100 + i);
        const auto r = sample_scenario(s, 0);
        const auto out = run_schemes({SchemeId::MovableProposed, SchemeId::Fixed}, s, r);
        wins += out[0].rates.weighted_sum >= out[1].rates.weighted_sum - 1e-9 ? 1 : 0;
    }
    CHECK(wins >= 48);
}

TEST_CASE("CSV formatting")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    CsvTable t({"x", "y"});
    t.add_row({1.0, 2.5});
    t.add_row("label", {3.0});
    CHECK(t.str() == "x,y\n1,2.5\nlabel,3\n");
    CHECK(t.column("y")[0] == 2.5);
    CHECK_THROWS_AS(t.column("z"), std::invalid_argument);
    CHECK_THROWS(t.add_row({1.0}));
}

TEST_CASE("FNV-1a reference hashes")
{
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("figure campaigns")
{
    const auto s = default_scenario();
    CHECK_THROWS_AS(run_figure("fig1", s), std::invalid_argument);
    const auto f4 = run_figure("fig4", s);
    CHECK(f4.table.columns() == std::vector<std::string>{"epsilon", "delta", "xi_left", "xi_right"});
    const auto lo = f4.table.column("xi_left"), hi = f4.table.column("xi_right");
    for (std::size_t i = 1; i < lo.size(); ++i)
    {
        CHECK(lo[i] < lo[i - 1]);
        CHECK(hi[i] > hi[i - 1]);
    }
    CHECK(run_figure("fig2", s).table.str() == run_figure("fig2", s).table.str());
    const auto manifest = run_manifest("fig4", s, 7, 1.5, "fig4.csv");
    CHECK(manifest.find("\"seed\"") != std::string::npos);
    CHECK(manifest.find("fnv1a64:") != std::string::npos);
}
