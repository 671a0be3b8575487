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

#include "mfcovert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mfcovert
{
    ArrayLayout::ArrayLayout(double wavelength_m, std::size_t num_antennas, std::size_t num_subarrays,
                             std::vector<double> centers_m, Interval region_m)
        : wavelength_(wavelength_m), num_antennas_(num_antennas), centers_(std::move(centers_m)), region_(region_m)
    {
        if (!(wavelength_m > 0.0) || !std::isfinite(wavelength_m))
            throw std::invalid_argument("ArrayLayout: wavelength must be positive");
        if (num_subarrays == 0 || num_antennas == 0)
            throw std::invalid_argument("ArrayLayout: need at least one antenna and one subarray");
        if (num_antennas % num_subarrays != 0)
            throw std::invalid_argument("ArrayLayout: number of antennas (" + std::to_string(num_antennas) +
                                        ") is not divisible by number of subarrays (" +
                                        std::to_string(num_subarrays) + ")");
        if (centers_.size() != num_subarrays)
            throw std::invalid_argument("ArrayLayout: expected one center per subarray");
        if (region_.lo > region_.hi)
            throw std::invalid_argument("ArrayLayout: empty movement region");
        for (double c : centers_)
            if (!std::isfinite(c))
                throw std::invalid_argument("ArrayLayout: subarray centers must be finite");
        std::sort(centers_.begin(), centers_.end());
    }

    ArrayLayout ArrayLayout::with_centers(std::vector<double> centers_m) const
    {
        return ArrayLayout(wavelength_, num_antennas_, centers_.size(), std::move(centers_m), region_);
    }

    bool ArrayLayout::is_uniform(double rel_tol) const
    {
        const double gap = min_center_gap();
        for (std::size_t m = 1; m < centers_.size(); ++m)
            if (std::abs(centers_[m] - centers_[m - 1] - gap) > rel_tol * gap)
                return false;
        return true;
    }

    Interval default_region(std::size_t num_antennas, double wavelength_m)
    {
        const double half = (static_cast<double>(num_antennas) - 1.0) * wavelength_m / 2.0;
        return {-half, half};
    }

    std::vector<double> antenna_positions(const ArrayLayout &layout)
    {
        const std::size_t n_sub = layout.antennas_per_subarray();
        const double d = layout.spacing();
        std::vector<double> out;
        out.reserve(layout.num_antennas());
        for (double q : layout.centers())
            for (std::size_t k = 1; k <= n_sub; ++k)
                out.push_back(q + (2.0 * double(k) - double(n_sub) - 1.0) / 2.0 * d);
        return out;
    }

    ArrayLayout uniform_layout(std::size_t num_antennas, std::size_t num_subarrays, double wavelength_m,
                               Interval region_m)
    {
        if (num_subarrays == 0 || num_antennas % num_subarrays != 0)
            throw std::invalid_argument("uniform_layout: number of subarrays must divide number of antennas");
        const double d = wavelength_m / 2.0;
        const double gap = double(num_antennas / num_subarrays) * d;
        std::vector<double> centers(num_subarrays);
        for (std::size_t m = 0; m < num_subarrays; ++m)
            centers[m] = (double(m) - (double(num_subarrays) - 1.0) / 2.0) * gap;

        // centers (not antenna edges) have to lie inside the region
        const double tol = 1e-12 * std::max(1.0, gap * double(num_subarrays));
        if (centers.front() < region_m.lo - tol || centers.back() > region_m.hi + tol)
            throw std::invalid_argument("uniform_layout: movement region is too narrow for the array");
        return ArrayLayout(wavelength_m, num_antennas, num_subarrays, std::move(centers), region_m);
    }

    ArrayLayout uniform_layout(std::size_t num_antennas, std::size_t num_subarrays, double wavelength_m)
    {
        return uniform_layout(num_antennas, num_subarrays, wavelength_m, default_region(num_antennas, wavelength_m));
    }

    FeasibilityReport check_feasible(const ArrayLayout &layout)
    {
        FeasibilityReport report;
        const auto &q = layout.centers();
        // Rounding slack so that exactly-contiguous layouts are not flagged.
        const double gap = layout.min_center_gap() * (1.0 - 1e-12);
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = i + 1; j < q.size(); ++j)
                if (std::abs(q[i] - q[j]) < gap)
                    report.violating_pairs.emplace_back(i, j);
        for (std::size_t m = 0; m < q.size(); ++m)
            if (!layout.region().contains(q[m]))
                report.out_of_region.push_back(m);
        report.ok = report.violating_pairs.empty() && report.out_of_region.empty();
        return report;
    }

    std::vector<double> clamp_to_region(std::span<const double> candidate, Interval region_m)
    {
        std::vector<double> out(candidate.begin(), candidate.end());
        for (double &x : out)
            x = std::max(std::min(x, region_m.hi), region_m.lo);
        return out;
    }
}
