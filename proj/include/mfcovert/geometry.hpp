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

#ifndef MFCOVERT_GEOMETRY_HPP
#define MFCOVERT_GEOMETRY_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mfcovert
{
    /// Closed interval [lo, hi] on the array axis (meters).
    struct Interval
    {
        double lo = 0.0;
        double hi = 0.0;

        double width() const { return hi - lo; }
        double center() const { return 0.5 * (lo + hi); }
        bool contains(double x) const { return x >= lo && x <= hi; }
    };

    /// Modular linear array: M subarrays of N/M half-wavelength spaced antennas whose
    /// centers slide along one axis inside a movement region.
    ///
    /// Centers are stored in ascending order. The constructor only checks structural
    /// validity (N = M * Ntilde, one center per subarray); movement feasibility is a
    /// separate question answered by check_feasible().
    class ArrayLayout
    {
    public:
        ArrayLayout(double wavelength_m, std::size_t num_antennas, std::size_t num_subarrays,
                    std::vector<double> centers_m, Interval region_m);

        double wavelength() const { return wavelength_; }
        double spacing() const { return wavelength_ / 2.0; }
        std::size_t num_antennas() const { return num_antennas_; }
        std::size_t num_subarrays() const { return centers_.size(); }
        std::size_t antennas_per_subarray() const { return num_antennas_ / centers_.size(); }
        const std::vector<double> &centers() const { return centers_; }
        const Interval &region() const { return region_; }

        /// Minimum admissible distance between two subarray centers (Ntilde * d).
        double min_center_gap() const { return static_cast<double>(antennas_per_subarray()) * spacing(); }

        /// Aperture of the contiguous (fixed) array, N * d.
        double nominal_aperture() const { return static_cast<double>(num_antennas_) * spacing(); }

        /// Same array with different subarray centers.
        ArrayLayout with_centers(std::vector<double> centers_m) const;

        /// True if the centers are exactly the contiguous half-wavelength arrangement
        /// (consecutive gaps equal to Ntilde * d, up to rounding).
        bool is_uniform(double rel_tol = 1e-9) const;

    private:
        double wavelength_;
        std::size_t num_antennas_;
        std::vector<double> centers_;
        Interval region_;
    };

    struct FeasibilityReport
    {
        bool ok = true;
        std::vector<std::pair<std::size_t, std::size_t>> violating_pairs; // i < j, |q_i - q_j| < Ntilde d
        std::vector<std::size_t> out_of_region;
    };

    /// Region [-(N-1)d, (N-1)d] used when no movement region is configured.
    Interval default_region(std::size_t num_antennas, double wavelength_m);

    /// Antenna coordinates, subarray by subarray (ascending inside each subarray).
    std::vector<double> antenna_positions(const ArrayLayout &layout);

    /// Contiguous layout centered on the origin. Throws std::invalid_argument if M does not
    /// divide N or the region cannot hold the array.
    ArrayLayout uniform_layout(std::size_t num_antennas, std::size_t num_subarrays, double wavelength_m,
                               Interval region_m);
    ArrayLayout uniform_layout(std::size_t num_antennas, std::size_t num_subarrays, double wavelength_m);

    FeasibilityReport check_feasible(const ArrayLayout &layout);

    std::vector<double> clamp_to_region(std::span<const double> candidate, Interval region_m);
}

#endif
