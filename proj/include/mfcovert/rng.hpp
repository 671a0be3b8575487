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

#ifndef MFCOVERT_RNG_HPP
#define MFCOVERT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace mfcovert
{
    /// splitmix64 finalizer.
    inline std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// Independent generator for (seed, a, b); the same triple always gives the same stream,
    /// regardless of which thread asks for it.
    inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0)
    {
        const std::uint64_t s = mix64(mix64(mix64(seed) ^ a) ^ (b + 0x632be59bd9b4e019ULL));
        std::seed_seq seq{std::uint32_t(s), std::uint32_t(s >> 32), std::uint32_t(a), std::uint32_t(b)};
        return std::mt19937_64(seq);
    }

    /// Uniform on [0, 1) from the top 53 bits; stable across standard libraries.
    inline double uniform01(std::mt19937_64 &rng) { return double(rng() >> 11) * 0x1.0p-53; }

    inline double uniform(std::mt19937_64 &rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

    /// Standard normal by Box-Muller (one draw per call, the sine branch is discarded).
    inline double standard_normal(std::mt19937_64 &rng)
    {
        double u1 = uniform01(rng);
        while (u1 <= 0.0)
            u1 = uniform01(rng);
        const double u2 = uniform01(rng);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
    }
}

#endif
