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

#include "mfcovert/channel.hpp"
#include "mfcovert/covertness.hpp"
#include "mfcovert/scenario.hpp"

using namespace mfcovert;

namespace
{
    CovertnessSpec reference_spec() { return {1e-12, std::pow(10.0, 0.3), 0.1}; }
}

TEST_CASE("covert power threshold")
{
    CHECK(covert_power_threshold(reference_spec()) == doctest::Approx(7.4252703709884645e-14).epsilon(1e-12));
    CovertnessSpec s = reference_spec();
    s.varsigma = 0.0;
    CHECK(covert_power_threshold(s) == 0.0);
    s.varsigma = 1.0;
    CHECK(covert_power_threshold(s) == doctest::Approx(1e-12 * (s.rho - 1.0 / s.rho)));
}

TEST_CASE("optimal detection threshold")
{
    const CovertnessSpec s{1e-12, 2.0, 0.1};
    CHECK(optimal_threshold(0.0, s) == doctest::Approx(0.5e-12));
    CHECK(optimal_threshold(1e-12, s) == doctest::Approx(1.5e-12));
    CHECK(optimal_threshold(5e-12, s) == doctest::Approx(2e-12));
}

TEST_CASE("minimum detection error probability")
{
    const auto s = reference_spec();
    CHECK(min_dep(0.0, s) == 1.0);
    CHECK(min_dep(1e-12 * (s.rho - 1.0 / s.rho), s) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(min_dep(covert_power_threshold(s), s) == doctest::Approx(s.epsilon()).epsilon(1e-12));
    CHECK(min_dep(1e-10, s) == 0.0);
    CHECK_THROWS_AS(min_dep(0.0, CovertnessSpec{1e-12, 1.0, 0.1}), std::invalid_argument);
}

TEST_CASE("Monte-Carlo detection error probability")
{
    const auto s = reference_spec();
    const std::size_t n = 200000;
    const double tol = 2.0 / std::sqrt(double(n));
    CHECK(std::abs(dep_monte_carlo(0.0, s, n, 3).dep - 1.0) <= tol);
    const double f = covert_power_threshold(s);
    CHECK(std::abs(dep_monte_carlo(f, s, n, 4).dep - s.epsilon()) <= tol);
    const auto a = dep_monte_carlo(f, s, 1000, 9), b = dep_monte_carlo(f, s, 1000, 9);
    CHECK(a.dep == b.dep);
}

TEST_CASE("received covert power of a beam aimed at the warden")
{
    const auto layout = uniform_layout(256, 8, 0.01);
    const PolarLocation w{0.1, 12.0};
    const double g = 3e-5, p = 0.2;
    const auto h = synth_channel(layout, {{g, 0.0}, w}, {});
    HybridBeamformer bf;
    bf.analog = std::sqrt(256.0) * steering_vector(layout, w);
    bf.digital = CMatrix::Constant(1, 1, std::sqrt(p / 256.0));
    bf.power_budget_w = 1.0;
    CHECK(received_covert_power(h.coefficients, bf) == doctest::Approx(p * 256 * g * g).epsilon(1e-10));
    bf.digital.setZero();
    CHECK(received_covert_power(h.coefficients, bf) == 0.0);
}

TEST_CASE("leakage condition and its boundary")
{
    const auto s = reference_spec();
    const double g = 2e-5;
    const double margin = covert_margin(s, 256, g);
    CHECK(margin == doctest::Approx(covert_power_threshold(s) / (256 * g * g)));
    const std::vector<double> zero{0.0, 0.0}, p{0.5, 0.5};
    CHECK(covert_leakage_check(zero, p, g, 256, s).pass);
    const std::vector<double> one{1.0}, p1{1.0};
    CHECK_FALSE(covert_leakage_check(one, p1, g, 256, s).pass);
    const std::vector<double> edge{std::sqrt(margin)};
    CHECK(covert_leakage_check(edge, p1, g, 256, s).leakage <= margin * (1 + 1e-15));
    CHECK(correlation_threshold(margin, 2.0) == doctest::Approx(std::sqrt(margin / 2.0)));
    CHECK(correlation_threshold_residual(margin, 1.0, 1.0, 1.0) == 0.0);
}

TEST_CASE("angle region brackets the warden and widens with epsilon")
{
    const auto layout = uniform_layout(256, 8, 0.01);
    const PolarLocation w{0.0, 10.0};
    const double g = los_amplitude(w.range_m, 0.01, std::numeric_limits<double>::infinity());
    double prev_lo = 0.0, prev_hi = 0.0;
    for (double eps : {0.8, 0.9, 0.95})
    {
        const auto spec = CovertnessSpec::from_epsilon(1e-12, std::pow(10.0, 0.3), eps);
        const double delta = correlation_threshold(covert_margin(spec, 256, g), 1e-5);
        const auto r = covert_angle_region(layout, w, delta);
        REQUIRE_FALSE(r.empty);
        CHECK(r.excluded_lo < 0.0);
        CHECK(r.excluded_hi > 0.0);
        const auto grid = angle_grid(kDefaultAngleStep);
        const auto gains = beam_gain_scan(layout, w, kDefaultAngleStep);
        for (std::size_t k = 0; k < grid.size(); ++k)
            if (r.is_covert(grid[k]))
                CHECK(gains[k] <= delta + 1e-3);
        if (eps > 0.8)
        {
            CHECK(r.excluded_lo < prev_lo);
            CHECK(r.excluded_hi > prev_hi);
        }
        prev_lo = r.excluded_lo;
        prev_hi = r.excluded_hi;
    }
    const auto all = covert_angle_region(layout, w, 1.0);
    CHECK((all.empty || all.excluded_hi - all.excluded_lo < 1e-3));
}

TEST_CASE("envelope inversion")
{
    CHECK(std::abs(invert_fresnel_envelope(0.89459756104219509) - 1.0) < 2e-3);
    CHECK(invert_fresnel_envelope(0.999999) < invert_fresnel_envelope(0.99));
    CHECK(invert_fresnel_envelope(0.999999) < 0.1);
    double prev = 0.0;
    for (double d : {0.9, 0.7, 0.5, 0.3, 0.1, 0.05})
    {
        const double b = invert_fresnel_envelope(d);
        CHECK(b >= prev);
        prev = b;
    }
}

TEST_CASE("range region boundaries")
{
    const PolarLocation w{0.2, 20.0};
    const auto r = covert_range_region(w, 0.3, 256, 0.005, 0.01);
    CHECK(r.excluded_lo < w.range_m);
    CHECK(r.excluded_hi > w.range_m);
    CHECK_FALSE(r.is_covert(w.range_m));
    CHECK(std::abs(1.0 / w.range_m - 1.0 / r.excluded_lo) == doctest::Approx(r.pi_value).epsilon(1e-12));
    const double nd = 256 * 0.005;
    CHECK(r.pi_value == doctest::Approx(2 * 0.01 * r.beta * r.beta / (nd * nd * (1 - 0.04))));
    const auto stricter = covert_range_region(w, 0.1, 256, 0.005, 0.01);
    CHECK(stricter.pi_value > r.pi_value);
    CHECK(stricter.excluded_lo < r.excluded_lo);
    CHECK_THROWS_AS(covert_range_region({1.0, 20.0}, 0.3, 256, 0.005, 0.01), std::invalid_argument);
}

TEST_CASE("leakage cases")
{
    AngularSupport sup;
    sup.theta_lo = -0.05;
    sup.theta_hi = 0.05;
    const PolarLocation w{0.0, 10.0};
    CHECK(classify_case({0.3, 10.0}, far_field(0.5), w, sup, 256) == CovertCase::NoLeakage);
    CHECK(classify_case({0.3, 10.0}, far_field(0.01), w, sup, 256) == CovertCase::LeakageFarBob);
    CHECK(classify_case({0.0, 20.0}, far_field(0.5), w, sup, 256) == CovertCase::LeakageNearBob);
    CHECK(classify_case({0.0, 20.0}, far_field(0.01), w, sup, 256) == CovertCase::LeakageBoth);
}
