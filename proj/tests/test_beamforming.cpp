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
#include <vector>

#include "mfcovert/beamforming.hpp"
#include "mfcovert/channel.hpp"
#include "mfcovert/rng.hpp"

using namespace mfcovert;

namespace
{
    CVector random_cvector(std::mt19937_64 &rng, Eigen::Index n, double scale)
    {
        CVector v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v[i] = scale * cd(standard_normal(rng), standard_normal(rng));
        return v;
    }

    CMatrix random_cmatrix(std::mt19937_64 &rng, Eigen::Index r, Eigen::Index c, double scale)
    {
        CMatrix m(r, c);
        for (Eigen::Index j = 0; j < c; ++j)
            m.col(j) = random_cvector(rng, r, scale);
        return m;
    }
}

TEST_CASE("analog MRT columns are scaled steering vectors with unit-modulus entries")
{
    const auto layout = uniform_layout(64, 4, 0.01);
    const std::vector<PolarLocation> bobs{{0.1, 10.0}, {-0.3, 80.0}};
    const auto fa = analog_mrt(layout, bobs);
    for (Eigen::Index i = 0; i < fa.size(); ++i)
        CHECK(std::abs(fa.data()[i]) == doctest::Approx(1.0));
    CHECK((fa.col(1) - std::sqrt(64.0) * steering_vector(layout, bobs[1])).norm() < 1e-12);
}

TEST_CASE("achievable rate against a direct SINR evaluation")
{
    auto rng = substream(21, 0);
    for (int t = 0; t < 20; ++t)
    {
        const Eigen::Index b = 3;
        std::vector<CVector> e;
        for (Eigen::Index k = 0; k < b; ++k)
            e.push_back(random_cvector(rng, b, 1.0));
        const CMatrix fd = random_cmatrix(rng, b, b, 0.5);
        const double noise = 0.3;
        const std::vector<double> w{0.2, 0.5, 0.3};
        const auto rep = achievable_rate(e, fd, noise, w);
        double sum = 0.0;
        for (Eigen::Index k = 0; k < b; ++k)
        {
            double interf = noise;
            for (Eigen::Index j = 0; j < b; ++j)
                if (j != k)
                    interf += std::norm(e[std::size_t(k)].dot(fd.col(j)));
            const double r = std::log2(1.0 + std::norm(e[std::size_t(k)].dot(fd.col(k))) / interf);
            CHECK(rep.per_bob_rate[std::size_t(k)] == doctest::Approx(r).epsilon(1e-12));
            sum += w[std::size_t(k)] * r;
        }
        CHECK(rep.weighted_sum == doctest::Approx(sum).epsilon(1e-12));
    }
}

TEST_CASE("surrogate is a tight lower bound of the rate")
{
    auto rng = substream(22, 0);
    std::vector<CVector> e;
    for (int k = 0; k < 2; ++k)
        e.push_back(random_cvector(rng, 2, 1.0));
    const CMatrix prev = random_cmatrix(rng, 2, 2, 0.7);
    const auto at_prev = sca_surrogate(e, prev, prev, 0.1);
    const auto r_prev = achievable_rate(e, prev, 0.1, std::vector<double>{1.0, 1.0});
    for (std::size_t k = 0; k < 2; ++k)
        CHECK(at_prev[k] == doctest::Approx(r_prev.per_bob_rate[k]).epsilon(1e-10));
    for (int t = 0; t < 10000; ++t)
    {
        const CMatrix var = random_cmatrix(rng, 2, 2, uniform(rng, 0.01, 3.0));
        const auto s = sca_surrogate(e, prev, var, 0.1);
        const auto r = achievable_rate(e, var, 0.1, std::vector<double>{1.0, 1.0});
        for (std::size_t k = 0; k < 2; ++k)
            REQUIRE(s[k] <= r.per_bob_rate[k] + 1e-9);
    }
}

TEST_CASE("single Bob without wardens reaches the closed-form rate")
{
    const auto layout = uniform_layout(256, 8, 0.01);
    const auto pos = antenna_positions(layout);
    const std::vector<PolarLocation> bob{{0.1, 30.0}};
    const std::vector<PathComponent> nlos{{cd(1e-6, 2e-6), {0.5, 10.0}}};
    const std::vector<ChannelVector> h{synth_channel(pos, 0.01, {std::polar(2e-5, 0.5), bob[0]}, nlos)};
    DigitalProblem pr;
    pr.analog = analog_mrt(pos, 0.01, bob);
    pr.bob_effective = effective_channels(pr.analog, h);
    pr.bob_noise_w = 1e-12;
    pr.power_w = 1.0;
    const auto res = solve_digital_sca(pr);
    const double closed =
        std::log2(1.0 + pr.power_w * pr.bob_effective[0].squaredNorm() / (pr.analog.squaredNorm() * 1e-12));
    CHECK(res.converged);
    CHECK(std::abs(res.rates.weighted_sum - closed) < 1e-6);
}

TEST_CASE("SCA with a warden stays feasible and monotone")
{
    auto rng = substream(23, 0);
    for (int t = 0; t < 10; ++t)
    {
        DigitalProblem pr;
        pr.analog = random_cmatrix(rng, 32, 2, 1.0);
        for (int k = 0; k < 2; ++k)
            pr.bob_effective.push_back(pr.analog.adjoint() * random_cvector(rng, 32, 1e-5));
        pr.willie_effective.push_back(pr.analog.adjoint() * random_cvector(rng, 32, 1e-5));
        pr.covert_threshold_w = 1e-13;
        pr.bob_noise_w = 1e-12;
        const auto res = solve_digital_sca(pr);
        CHECK(res.ok);
        CHECK(res.iterations <= 50);
        CHECK(max_constraint_violation(pr, res.digital) <= 1e-9);
        for (std::size_t k = 1; k < res.trace.size(); ++k)
            CHECK(res.trace[k].surrogate >= res.trace[k - 1].surrogate - 1e-12);
    }
}

TEST_CASE("two-user rates follow the interference formula")
{
    TwoUserInput in;
    in.chi_b1b2 = 0.3;
    in.gain_b1 = 2e-5;
    in.gain_b2 = 5e-6;
    in.covert = false;
    const auto a = two_user_rates(in, 0.4, 0.6);
    const double g1 = 256 * 4e-10, g2 = 256 * 25e-12;
    CHECK(a.rate1 == doctest::Approx(std::log2(1 + 0.4 * g1 / (0.6 * g1 * 0.09 + 1e-12))));
    CHECK(a.rate2 == doctest::Approx(std::log2(1 + 0.6 * g2 / (0.4 * g2 * 0.09 + 1e-12))));
    CHECK(two_user_upper_bound(in, 0.4, 0.6) ==
          doctest::Approx(std::log2(1 + 0.4 * g1 / 1e-12) + std::log2(1 + 0.6 * g2 / 1e-12)));
}

TEST_CASE("fully correlated Bobs get all power on the stronger one")
{
    TwoUserInput in;
    in.chi_b1b2 = 1.0;
    in.gain_b1 = 2e-5;
    in.gain_b2 = 5e-6;
    in.covert = false;
    const auto best = power_allocation_2user(in);
    CHECK(best.p1_w == doctest::Approx(1.0));
    CHECK(best.p2_w == doctest::Approx(0.0));
}

TEST_CASE("water-filling bound against a grid search")
{
    const std::vector<double> a{3.0, 1.0}, w{0.6, 0.4};
    double grid = 0.0;
    for (int i = 0; i <= 100000; ++i)
    {
        const double p = 2.0 * i / 100000.0;
        grid = std::max(grid, w[0] * std::log2(1 + p * a[0]) + w[1] * std::log2(1 + (2.0 - p) * a[1]));
    }
    CHECK(weighted_waterfilling_bound(a, w, 2.0) == doctest::Approx(grid).epsilon(1e-8));
}
