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

#include "mfcovert/channel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "mfcovert/csv.hpp"
#include "mfcovert/fresnel.hpp"

namespace mfcovert
{
    namespace
    {
        // phase of conj(a_i) a_j at position p, times lambda / (2 pi)
        struct PairPhase
        {
            double omega_theta;
            double omega_r;
        };

        PairPhase pair_phase(const PolarLocation &i, const PolarLocation &j)
        {
            // 1/inf evaluates to 0, which is the far-field limit
            return {j.theta - i.theta,
                    (1.0 - i.theta * i.theta) / (2.0 * i.range_m) - (1.0 - j.theta * j.theta) / (2.0 * j.range_m)};
        }

        void check_positions(std::span<const double> positions, double wavelength_m)
        {
            if (positions.empty())
                throw std::invalid_argument("empty antenna set");
            if (!(wavelength_m > 0.0))
                throw std::invalid_argument("wavelength must be positive");
        }
    }

    void PolarLocation::validate() const
    {
        if (!(theta >= -1.0 && theta <= 1.0))
            throw std::invalid_argument("PolarLocation: theta must lie in [-1, 1]");
        if (!(range_m > 0.0))
            throw std::invalid_argument("PolarLocation: range must be positive");
    }

    CVector steering_vector(std::span<const double> positions, double wavelength_m, const PolarLocation &loc)
    {
        loc.validate();
        check_positions(positions, wavelength_m);
        const double k = 2.0 * kPi / wavelength_m;
        const double scale = 1.0 / std::sqrt(double(positions.size()));
        const double curv = (1.0 - loc.theta * loc.theta) / (2.0 * loc.range_m);
        CVector a(Eigen::Index(positions.size()));
        for (std::size_t n = 0; n < positions.size(); ++n)
        {
            const double p = positions[n];
            a[Eigen::Index(n)] = std::polar(scale, -k * (p * loc.theta - p * p * curv));
        }
        return a;
    }

    CVector steering_vector(const ArrayLayout &layout, const PolarLocation &loc)
    {
        const auto pos = antenna_positions(layout);
        return steering_vector(pos, layout.wavelength(), loc);
    }

    CVector far_field_steering(const ArrayLayout &layout, double theta) { return steering_vector(layout, far_field(theta)); }

    double classic_rayleigh_distance(double aperture_m, double wavelength_m)
    {
        if (!(aperture_m > 0.0) || !(wavelength_m > 0.0))
            throw std::invalid_argument("rayleigh distance: aperture and wavelength must be positive");
        return 2.0 * aperture_m * aperture_m / wavelength_m;
    }

    double effective_rayleigh_distance(double aperture_m, double theta, double wavelength_m)
    {
        return kEffectiveRayleighFactor * classic_rayleigh_distance(aperture_m, wavelength_m) * (1.0 - theta * theta);
    }

    ChannelVector synth_channel(std::span<const double> positions, double wavelength_m, const PathComponent &los,
                                std::span<const PathComponent> nlos, Receiver owner, std::size_t index)
    {
        const double sqrt_n = std::sqrt(double(positions.size()));
        ChannelVector h;
        h.owner = owner;
        h.index = index;
        // h^H = sqrt(N) g a^H + ..., so the stored column carries conj(g)
        h.coefficients = sqrt_n * std::conj(los.gain) * steering_vector(positions, wavelength_m, los.location);
        if (!nlos.empty())
        {
            const double w = std::sqrt(double(positions.size()) / double(nlos.size()));
            for (const auto &path : nlos)
                h.coefficients += w * std::conj(path.gain) * steering_vector(positions, wavelength_m, path.location);
        }
        return h;
    }

    ChannelVector synth_channel(const ArrayLayout &layout, const PathComponent &los,
                                std::span<const PathComponent> nlos, Receiver owner, std::size_t index)
    {
        const auto pos = antenna_positions(layout);
        return synth_channel(pos, layout.wavelength(), los, nlos, owner, index);
    }

    double correlation(std::span<const double> positions, double wavelength_m, const PolarLocation &loc_i,
                       const PolarLocation &loc_j)
    {
        loc_i.validate();
        loc_j.validate();
        check_positions(positions, wavelength_m);
        const auto w = pair_phase(loc_i, loc_j);
        const double k = 2.0 * kPi / wavelength_m;
        double re = 0.0, im = 0.0;
        for (double p : positions)
        {
            const double ph = k * (p * w.omega_theta + p * p * w.omega_r);
            re += std::cos(ph);
            im += std::sin(ph);
        }
        return std::min(1.0, std::hypot(re, im) / double(positions.size()));
    }

    double correlation(const ArrayLayout &layout, const PolarLocation &loc_i, const PolarLocation &loc_j)
    {
        const auto pos = antenna_positions(layout);
        return correlation(pos, layout.wavelength(), loc_i, loc_j);
    }

    double modular_validity_range(const ArrayLayout &layout)
    {
        const double sub = layout.min_center_gap();
        return 2.0 * sub * sub / layout.wavelength();
    }

    double dirichlet_ratio(std::size_t n_sub, double x)
    {
        const double nt = double(n_sub);
        const double den = std::sin(kPi * x / 2.0);
        if (std::abs(den) < 1e-9)
            return nt * std::cos(nt * kPi * x / 2.0) / std::cos(kPi * x / 2.0);
        return std::sin(nt * kPi * x / 2.0) / den;
    }

    ModularCorrelation correlation_modular_approx(const ArrayLayout &layout, const PolarLocation &loc_i,
                                                  const PolarLocation &loc_j)
    {
        loc_i.validate();
        loc_j.validate();
        const auto w = pair_phase(loc_i, loc_j);
        const double k = 2.0 * kPi / layout.wavelength();
        const std::size_t n_sub = layout.antennas_per_subarray();
        cd sum{0.0, 0.0};
        for (double q : layout.centers())
        {
            const double omega_m = 2.0 * q * w.omega_r + w.omega_theta;
            sum += std::polar(dirichlet_ratio(n_sub, omega_m), k * (q * w.omega_theta + q * q * w.omega_r));
        }
        ModularCorrelation out;
        out.value = std::abs(sum) / double(layout.num_antennas());
        const double rmin = modular_validity_range(layout);
        out.within_validity = loc_i.range_m > rmin && loc_j.range_m > rmin;
        return out;
    }

    double fixed_range_beta(std::size_t num_antennas, double spacing_m, double wavelength_m, double theta,
                            double r_i, double r_j)
    {
        if (!(r_i > 0.0) || !(r_j > 0.0))
            throw std::invalid_argument("fixed_range_beta: ranges must be positive");
        const double nd = double(num_antennas) * spacing_m;
        return std::sqrt(nd * nd * (1.0 - theta * theta) / (2.0 * wavelength_m) * std::abs(1.0 / r_i - 1.0 / r_j));
    }

    double correlation_fixed_range_approx(const ArrayLayout &layout, double theta, double r_i, double r_j)
    {
        if (!layout.is_uniform())
            throw std::invalid_argument("correlation_fixed_range_approx: layout must be the contiguous array");
        PolarLocation{theta, r_i}.validate();
        PolarLocation{theta, r_j}.validate();
        return fresnel_g_magnitude(
            fixed_range_beta(layout.num_antennas(), layout.spacing(), layout.wavelength(), theta, r_i, r_j));
    }

    double beam_gain(const ArrayLayout &layout, double beam_theta, const PolarLocation &target)
    {
        return correlation(layout, target, far_field(beam_theta));
    }

    std::vector<double> angle_grid(double step)
    {
        if (!(step > 0.0) || step > 2.0)
            throw std::invalid_argument("angle_grid: step must be in (0, 2]");
        const auto n = static_cast<std::size_t>(std::ceil(2.0 / step - 1e-9));
        std::vector<double> g(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            g[i] = std::min(1.0, -1.0 + double(i) * step);
        return g;
    }

    std::vector<double> beam_gain_scan(const ArrayLayout &layout, const PolarLocation &target, double step)
    {
        target.validate();
        const auto grid = angle_grid(step);
        const auto pos = antenna_positions(layout);
        const double k = 2.0 * kPi / layout.wavelength();
        const double curv = (1.0 - target.theta * target.theta) / (2.0 * target.range_m);
        const std::size_t n = pos.size();

        // term_n(theta) = conj(a_n(target)) w_n(theta); advancing theta by step multiplies by rot_n
        std::vector<cd> term(n), rot(n);
        auto reset = [&](double theta) {
            for (std::size_t i = 0; i < n; ++i)
                term[i] = std::polar(1.0, k * (pos[i] * target.theta - pos[i] * pos[i] * curv) - k * pos[i] * theta);
        };
        for (std::size_t i = 0; i < n; ++i)
            rot[i] = std::polar(1.0, -k * pos[i] * step);

        std::vector<double> gains(grid.size());
        for (std::size_t g = 0; g < grid.size(); ++g)
        {
            // exact re-anchoring bounds the accumulated rounding of the recurrence
            if (g % 256 == 0 || g + 1 == grid.size())
                reset(grid[g]);
            cd sum{0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i)
                sum += term[i];
            gains[g] = std::min(1.0, std::abs(sum) / double(n));
            for (std::size_t i = 0; i < n; ++i)
                term[i] *= rot[i];
        }
        return gains;
    }

    AngularSupport energy_spread_support(const ArrayLayout &layout, const PolarLocation &source, double mu_db,
                                         double grid_step)
    {
        if (!(grid_step > 0.0))
            throw std::invalid_argument("energy_spread_support: grid step must be positive");
        if (!(mu_db >= 0.0))
            throw std::invalid_argument("energy_spread_support: level must be nonnegative");
        const auto grid = angle_grid(grid_step);
        const auto gains = beam_gain_scan(layout, source, grid_step);

        AngularSupport s;
        s.mu_db = mu_db;
        s.grid_step = grid_step;
        const auto peak = std::max_element(gains.begin(), gains.end());
        s.peak_gain = *peak;
        s.peak_theta = grid[std::size_t(peak - gains.begin())];

        // mu = 0 keeps the peak point(s); the relative slack absorbs rounding between equal peaks
        const double level = std::pow(10.0, -mu_db / 10.0) * s.peak_gain * (1.0 - 1e-12);
        bool inside = false, any = false;
        for (std::size_t g = 0; g < grid.size(); ++g)
        {
            const bool above = mu_db == 0.0 ? gains[g] >= level : gains[g] > level;
            if (above)
            {
                if (!any)
                    s.theta_lo = grid[g];
                s.theta_hi = grid[g];
                any = true;
                if (!inside)
                    ++s.fragments;
            }
            inside = above;
        }
        return s;
    }

    void write_channel_csv(std::ostream &os, const ChannelVector &channel)
    {
        os << "antenna,real,imag\n";
        for (Eigen::Index n = 0; n < channel.coefficients.size(); ++n)
            os << n << ',' << format_number(channel.coefficients[n].real()) << ','
               << format_number(channel.coefficients[n].imag()) << '\n';
    }
}
