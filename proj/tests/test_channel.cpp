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
#include <random>
#include <vector>

#include "mfcovert/channel.hpp"
#include "mfcovert/placement.hpp"
#include "mfcovert/rng.hpp"

using namespace mfcovert;

namespace
{
    // elementwise reference for the stored column: (1/sqrt(N)) exp(-j 2 pi / lambda (q theta - q^2 (1 - theta^2) / (2 r)))
    cd reference_element(double q, double lambda, const PolarLocation &loc, std::size_t n)
    {
        const double quad = std::isinf(loc.range_m) ? 0.0 : q * q * (1 - loc.theta * loc.theta) / (2 * loc.range_m);
        return std::polar(1.0 / std::sqrt(double(n)), -2 * kPi / lambda * (q * loc.theta - quad));
    }
}

TEST_CASE("steering vector matches the elementwise formula and has unit norm")
{
    const auto layout = uniform_layout(256, 8, 0.01);
    const auto pos = antenna_positions(layout);
    const PolarLocation loc{0.3, 12.0};
    const auto a = steering_vector(layout, loc);
    CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-13));
    for (std::size_t i = 0; i < pos.size(); ++i)
        CHECK(std::abs(a[Eigen::Index(i)] - reference_element(pos[i], 0.01, loc, 256)) < 1e-12);
}

TEST_CASE("broadside near-field phase is pi q^2 / (lambda r)")
{
    const auto layout = uniform_layout(256, 8, 0.01);
    const auto pos = antenna_positions(layout);
    const auto a = steering_vector(layout, {0.0, 10.0});
    for (std::size_t i = 0; i < pos.size(); i += 17)
    {
        const cd expect = std::polar(1.0, kPi * pos[i] * pos[i] / (0.01 * 10.0));
        CHECK(std::abs(a[Eigen::Index(i)] * std::sqrt(256.0) - expect) < 1e-9);
    }
}

TEST_CASE("very distant source approaches the far-field vector")
{
    const auto layout = uniform_layout(256, 8, 0.01);
    const auto near = steering_vector(layout, {0.4, 1e9});
    const auto far = far_field_steering(layout, 0.4);
    for (Eigen::Index i = 0; i < near.size(); ++i)
        CHECK(std::abs(std::arg(near[i] / far[i])) < 1e-4);
    CHECK((steering_vector(layout, far_field(0.4)) - far).norm() < 1e-14);
}

TEST_CASE("Rayleigh distances of the 1.28 m aperture")
{
    CHECK(classic_rayleigh_distance(1.28, 0.01) == doctest::Approx(2 * 1.28 * 1.28 / 0.01));
    CHECK(effective_rayleigh_distance(1.28, 0.0, 0.01) == doctest::Approx(0.37 * 2 * 1.28 * 1.28 / 0.01));
    CHECK(effective_rayleigh_distance(1.28, 0.6, 0.01) ==
          doctest::Approx(0.37 * 0.64 * 2 * 1.28 * 1.28 / 0.01));
}

TEST_CASE("multipath channel equals the sum of its weighted steering vectors")
{
    const auto layout = uniform_layout(64, 4, 0.01);
    const auto pos = antenna_positions(layout);
    const PathComponent los{{2e-5, -1e-5}, {0.1, 20.0}};
    const std::vector<PathComponent> nlos{{{1e-6, 3e-6}, {-0.4, 8.0}},
                                          {{-2e-6, 1e-6}, {0.7, 30.0}},
                                          {{5e-7, 0.0}, {0.2, 15.0}},
                                          {{0.0, -1e-6}, {-0.9, 6.0}}};
    const auto h = synth_channel(layout, los, nlos);
    const double w = std::sqrt(64.0 / 4.0);
    for (std::size_t i = 0; i < pos.size(); ++i)
    {
        cd expect = std::sqrt(64.0) * std::conj(los.gain) * reference_element(pos[i], 0.01, los.location, 64);
        for (const auto &p : nlos)
            expect += w * std::conj(p.gain) * reference_element(pos[i], 0.01, p.location, 64);
        CHECK(std::abs(h.coefficients[Eigen::Index(i)] - expect) < 1e-15);
    }
}

TEST_CASE("correlation is symmetric, bounded and one on the diagonal")
{
    const auto layout = uniform_layout(256, 8, 0.01);
    auto rng = substream(11, 1);
    for (int t = 0; t < 50; ++t)
    {
        const PolarLocation a{uniform(rng, -1, 1), uniform(rng, 3, 300)};
        const PolarLocation b{uniform(rng, -1, 1), uniform(rng, 3, 300)};
        const double c = correlation(layout, a, b);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0 + 1e-12);
        CHECK(c == doctest::Approx(correlation(layout, b, a)).epsilon(1e-12));
        CHECK(correlation(layout, a, a) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("modular approximation vanishes at analytic positions")
{
    const auto base = uniform_layout(256, 8, 0.01);
    const PolarLocation a{0.0, 15.0}, b{0.02, 200.0};
    const auto an = analytic_positions_for_pair(base, a, b);
    const auto layout = base.with_centers(an.centers);
    CHECK(correlation_modular_approx(layout, a, b).value < 1e-12);
}

TEST_CASE("modular approximation tracks the exact correlation beyond its validity range")
{
    const auto base = uniform_layout(256, 8, 0.01);
    const double r_min = modular_validity_range(base);
    CHECK(r_min == doctest::Approx(2 * 0.16 * 0.16 / 0.01));
    auto rng = substream(12, 1);
    for (int t = 0; t < 100; ++t)
    {
        const PolarLocation a{uniform(rng, -0.5, 0.5), uniform(rng, r_min, 300)};
        const PolarLocation b{uniform(rng, -0.5, 0.5), uniform(rng, r_min, 300)};
        const auto m = correlation_modular_approx(base, a, b);
        CHECK(m.within_validity);
        CHECK(std::abs(m.value - correlation(base, a, b)) < 0.01);
    }
}

TEST_CASE("Dirichlet ratio and its removable singularity")
{
    CHECK(dirichlet_ratio(32, 0.0) == doctest::Approx(32.0));
    CHECK(std::abs(dirichlet_ratio(32, 2.0)) == doctest::Approx(32.0));
    CHECK(std::abs(dirichlet_ratio(32, 2.0 / 32.0)) < 1e-12);
    const double x = 0.013;
    CHECK(dirichlet_ratio(32, x) == doctest::Approx(std::sin(32 * kPi * x / 2) / std::sin(kPi * x / 2)));
}

TEST_CASE("equal-angle Fresnel approximation against exact summation")
{
    const auto layout = uniform_layout(256, 8, 0.01);
    const double approx = correlation_fixed_range_approx(layout, 0.0, 25.0, 150.0);
    const double exact = correlation(layout, {0.0, 25.0}, {0.0, 150.0});
    CHECK(std::abs(approx - exact) / exact < 0.05);
    const auto moved = layout.with_centers({-1.0, -0.5, -0.2, 0.0, 0.2, 0.4, 0.8, 1.2});
    CHECK_THROWS_AS(correlation_fixed_range_approx(moved, 0.0, 25.0, 150.0), std::invalid_argument);
}

TEST_CASE("beam gain scan agrees with direct evaluation")
{
    const auto layout = uniform_layout(128, 4, 0.01);
    const PolarLocation target{0.2, 9.0};
    const double step = 1e-3;
    const auto scan = beam_gain_scan(layout, target, step);
    const auto grid = angle_grid(step);
    REQUIRE(scan.size() == grid.size());
    CHECK(grid.front() == -1.0);
    CHECK(grid.back() == 1.0);
    for (std::size_t k = 0; k < grid.size(); k += 97)
        CHECK(scan[k] == doctest::Approx(beam_gain(layout, grid[k], target)).epsilon(1e-9));
}

TEST_CASE("energy spread of a far source is a narrow interval")
{
    const auto layout = uniform_layout(256, 8, 0.01);
    const auto sup = energy_spread_support(layout, {0.3, 1e9}, 10.0);
    CHECK(sup.contains(0.3));
    CHECK(sup.theta_hi - sup.theta_lo < 16.0 / 256.0);
    const auto near = energy_spread_support(layout, {0.0, 10.0}, 10.0);
    const auto mid = energy_spread_support(layout, {0.0, 30.0}, 10.0);
    CHECK(near.theta_hi - near.theta_lo > mid.theta_hi - mid.theta_lo);
    const auto peak = energy_spread_support(layout, {0.3, 1e9}, 0.0);
    CHECK(peak.theta_hi - peak.theta_lo <= peak.grid_step);
}

TEST_CASE("invalid locations are rejected")
{
    CHECK_THROWS_AS((PolarLocation{1.5, 10.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((PolarLocation{0.0, -1.0}.validate()), std::invalid_argument);
}
