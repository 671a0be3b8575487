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

#include "mfcovert/covertness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mfcovert/fresnel.hpp"
#include "mfcovert/rng.hpp"

namespace mfcovert
{
    void CovertnessSpec::validate() const
    {
        if (!(nominal_noise_w > 0.0) || !std::isfinite(nominal_noise_w))
            throw std::invalid_argument("CovertnessSpec: nominal noise power must be positive");
        if (!(rho >= 1.0) || !std::isfinite(rho))
            throw std::invalid_argument("CovertnessSpec: rho must be >= 1");
        if (!(varsigma >= 0.0 && varsigma <= 1.0))
            throw std::invalid_argument("CovertnessSpec: varsigma must lie in [0, 1]");
    }

    CovertnessSpec CovertnessSpec::from_epsilon(double nominal_noise_w, double rho, double epsilon)
    {
        CovertnessSpec s{nominal_noise_w, rho, 1.0 - epsilon};
        s.validate();
        return s;
    }

    double covert_power_threshold(const CovertnessSpec &spec)
    {
        spec.validate();
        return spec.nominal_noise_w * (std::pow(spec.rho, 2.0 * spec.varsigma) - 1.0) / spec.rho;
    }

    double received_covert_power(const CVector &willie_channel, const HybridBeamformer &bf)
    {
        if (bf.analog.rows() != willie_channel.size() || bf.analog.cols() != bf.digital.rows())
            throw std::invalid_argument("received_covert_power: dimension mismatch");
        const CVector e = bf.analog.adjoint() * willie_channel;
        return (e.adjoint() * bf.digital).squaredNorm();
    }

    double optimal_threshold(double f_co, const CovertnessSpec &spec)
    {
        if (!(f_co >= 0.0))
            throw std::invalid_argument("optimal_threshold: power must be nonnegative");
        return std::min(f_co + spec.nominal_noise_w / spec.rho, spec.rho * spec.nominal_noise_w);
    }

    double min_dep(double f_co, const CovertnessSpec &spec)
    {
        spec.validate();
        if (spec.rho == 1.0)
            throw std::invalid_argument("min_dep: rho = 1 leaves no noise uncertainty");
        if (!(f_co >= 0.0))
            throw std::invalid_argument("min_dep: power must be nonnegative");
        const double s = spec.nominal_noise_w;
        if (f_co >= s * (spec.rho - 1.0 / spec.rho))
            return 0.0;
        return 1.0 - std::log1p(spec.rho * f_co / s) / (2.0 * std::log(spec.rho));
    }

    DepEstimate dep_monte_carlo(double f_co, const CovertnessSpec &spec, std::size_t trials, std::uint64_t seed)
    {
        spec.validate();
        if (trials == 0)
            throw std::invalid_argument("dep_monte_carlo: need at least one trial");
        const double tau = optimal_threshold(f_co, spec);
        auto rng = substream(seed, 0x646570);
        std::size_t fa = 0, md = 0;
        for (std::size_t t = 0; t < trials; ++t)
        {
            const double noise = spec.nominal_noise_w * std::pow(spec.rho, 2.0 * uniform01(rng) - 1.0);
            if (noise >= tau)
                ++fa;
            if (f_co + noise < tau)
                ++md;
        }
        DepEstimate out;
        out.trials = trials;
        out.false_alarm = double(fa) / double(trials);
        out.miss = double(md) / double(trials);
        out.dep = out.false_alarm + out.miss;
        return out;
    }

    double covert_margin(const CovertnessSpec &spec, std::size_t num_antennas, double willie_gain)
    {
        if (!(willie_gain > 0.0) || num_antennas == 0)
            throw std::invalid_argument("covert_margin: need a positive warden gain and N > 0");
        return covert_power_threshold(spec) / (double(num_antennas) * willie_gain * willie_gain);
    }

    CovertCheck covert_leakage_check(std::span<const double> chis, std::span<const double> powers_w,
                                        double willie_gain, std::size_t num_antennas, const CovertnessSpec &spec)
    {
        if (chis.size() != powers_w.size())
            throw std::invalid_argument("covert_leakage_check: one correlation per power expected");
        CovertCheck c;
        for (std::size_t b = 0; b < chis.size(); ++b)
            c.leakage += powers_w[b] * chis[b] * chis[b];
        c.margin = covert_margin(spec, num_antennas, willie_gain);
        c.pass = c.leakage <= c.margin;
        return c;
    }

    double correlation_threshold(double margin, double power_w)
    {
        if (!(power_w > 0.0) || !(margin >= 0.0))
            throw std::invalid_argument("correlation_threshold: need P > 0 and a nonnegative margin");
        return std::sqrt(margin / power_w);
    }

    double correlation_threshold_residual(double margin, double p1_w, double chi_w1, double p2_w)
    {
        if (!(p2_w > 0.0))
            throw std::invalid_argument("correlation_threshold_residual: P2 must be positive");
        return std::sqrt(std::max(0.0, margin - p1_w * chi_w1 * chi_w1) / p2_w);
    }

    std::string to_string(RegionKind kind) { return kind == RegionKind::Angle ? "angle" : "range"; }

    CovertRegion covert_angle_region(const ArrayLayout &layout, const PolarLocation &willie, double delta,
                                     double grid_step)
    {
        if (!(delta > 0.0))
            throw std::invalid_argument("covert_angle_region: threshold must be positive");
        const auto grid = angle_grid(grid_step);
        const auto gains = beam_gain_scan(layout, willie, grid_step);

        CovertRegion reg;
        reg.kind = RegionKind::Angle;
        reg.threshold = delta;
        std::size_t first = grid.size(), last = 0;
        for (std::size_t g = 0; g < grid.size(); ++g)
            if (gains[g] > delta)
            {
                first = std::min(first, g);
                last = g;
            }
        if (first == grid.size())
        {
            reg.empty = true;
            reg.excluded_lo = reg.excluded_hi = willie.theta;
            return reg;
        }
        auto cross = [&](std::size_t below, std::size_t above) {
            const double t = (delta - gains[below]) / (gains[above] - gains[below]);
            return grid[below] + t * (grid[above] - grid[below]);
        };
        reg.excluded_lo = first == 0 ? -1.0 : cross(first - 1, first);
        reg.excluded_hi = last + 1 == grid.size() ? 1.0 : cross(last + 1, last);
        return reg;
    }

    double invert_fresnel_envelope(double delta, double grid_step)
    {
        if (!(delta > 0.0))
            throw std::invalid_argument("invert_fresnel_envelope: delta must be positive");
        if (delta >= 1.0)
            return 0.0;
        // beyond beta = 8, |C + jS - (1 + j)/2| <= 1.1 / (pi beta), so |G| <= (1/sqrt(2) + 0.35/beta) / beta
        const double tail = (1.0 / std::sqrt(2.0) + std::sqrt(0.5 + 1.4 * delta)) / (2.0 * delta);
        const double beta_max = std::max(10.0, tail);
        auto g = fresnel_g_magnitude_grid(beta_max, grid_step);
        // running maximum from the right
        for (std::size_t k = g.size() - 1; k-- > 0;)
            g[k] = std::max(g[k], g[k + 1]);
        std::size_t k = 0;
        while (k < g.size() && g[k] > delta)
            ++k;
        if (k == g.size())
            throw std::runtime_error("invert_fresnel_envelope: envelope does not reach delta");

        // |G(lo)| > delta >= |G(hi)| on this cell
        double lo = double(k - 1) * grid_step, hi = double(k) * grid_step;
        for (int it = 0; it < 60 && hi - lo > 1e-13; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            (fresnel_g_magnitude(mid) > delta ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    CovertRegion covert_range_region(const PolarLocation &willie, double delta, std::size_t num_antennas,
                                     double spacing_m, double wavelength_m)
    {
        willie.validate();
        if (!std::isfinite(willie.range_m))
            throw std::invalid_argument("covert_range_region: warden must be at a finite range");
        const double c = 1.0 - willie.theta * willie.theta;
        if (c <= 0.0)
            throw std::invalid_argument("covert_range_region: endfire direction has no range resolution");
        if (!(delta > 0.0 && delta < 1.0))
            throw std::invalid_argument("covert_range_region: delta must lie in (0, 1)");

        CovertRegion reg;
        reg.kind = RegionKind::Range;
        reg.threshold = delta;
        reg.beta = invert_fresnel_envelope(delta);
        const double nd = double(num_antennas) * spacing_m;
        reg.pi_value = 2.0 * wavelength_m * reg.beta * reg.beta / (nd * nd * c);
        const double rw = willie.range_m;
        reg.excluded_lo = rw / (1.0 + reg.pi_value * rw);
        reg.excluded_hi = reg.pi_value * rw < 1.0 ? rw / (1.0 - reg.pi_value * rw)
                                                  : std::numeric_limits<double>::infinity();
        return reg;
    }

    CovertCase classify_case(const PolarLocation &bob1, const PolarLocation &bob2, const PolarLocation &willie,
                             const AngularSupport &support, std::size_t num_antennas)
    {
        const bool same = std::abs(bob1.theta - willie.theta) < same_angle_tolerance(num_antennas);
        const bool inside = support.contains(bob2.theta);
        if (!same)
            return inside ? CovertCase::LeakageFarBob : CovertCase::NoLeakage;
        return inside ? CovertCase::LeakageBoth : CovertCase::LeakageNearBob;
    }
}
