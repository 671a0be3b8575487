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

#include "mfcovert/fresnel.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace mfcovert
{
    namespace
    {
        constexpr double kRelTol = 1e-12; // per panel; panel integrals are at most 1 in magnitude
        constexpr double kAsymptoticFrom = 8.0;

        /// Auxiliary-function expansion, C = 1/2 + f sin(pi x^2/2) - g cos(pi x^2/2) and
        /// S = 1/2 - f cos(pi x^2/2) - g sin(pi x^2/2); truncated at the first term below 1e-18.
        FresnelIntegrals asymptotic(double x)
        {
            const double z = kPi * x * x;
            const double inv_z2 = 1.0 / (z * z);
            double f = 0.0, g = 0.0;
            double tf = 1.0, tg = 1.0; // (4m-1)!! / z^2m and (4m+1)!! / z^2m with alternating sign
            for (int m = 0; m < 30; ++m)
            {
                f += tf;
                g += tg;
                const double k = 4.0 * m;
                const double nf = -tf * (k + 1.0) * (k + 3.0) * inv_z2;
                const double ng = -tg * (k + 3.0) * (k + 5.0) * inv_z2;
                if (std::abs(nf) < 1e-18 && std::abs(ng) < 1e-18)
                    break;
                tf = nf;
                tg = ng;
            }
            f /= kPi * x;
            g /= kPi * z * x;
            const double sn = std::sin(0.5 * z), cs = std::cos(0.5 * z);
            return {0.5 + f * sn - g * cs, 0.5 - f * cs - g * sn};
        }

        FresnelIntegrals integrate_panel(double a, double b, unsigned max_depth)
        {
            using boost::math::quadrature::gauss_kronrod;
            auto fc = [](double t) { return std::cos(0.5 * kPi * t * t); };
            auto fs = [](double t) { return std::sin(0.5 * kPi * t * t); };
            double err = 0.0;
            FresnelIntegrals out;
            out.c = gauss_kronrod<double, 15>::integrate(fc, a, b, max_depth, kRelTol, &err);
            out.s = gauss_kronrod<double, 15>::integrate(fs, a, b, max_depth, kRelTol, &err);
            return out;
        }
    }

    FresnelIntegrals fresnel_integrals(double x)
    {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw std::invalid_argument("fresnel_integrals: argument must be finite and nonnegative");
        if (x >= kAsymptoticFrom)
            return asymptotic(x);

        // phase pi t^2 / 2 advances by pi between consecutive breakpoints sqrt(2k)
        const auto panels = static_cast<std::size_t>(std::floor(x * x / 2.0)) + 1;
        FresnelIntegrals sum;
        double a = 0.0;
        for (std::size_t k = 1; k <= panels; ++k)
        {
            const double b = std::min(x, std::sqrt(2.0 * double(k)));
            if (b > a)
            {
                const auto p = integrate_panel(a, b, 12);
                sum.c += p.c;
                sum.s += p.s;
            }
            a = b;
        }
        return sum;
    }

    cd fresnel_g(double beta)
    {
        if (beta == 0.0)
            return {1.0, 0.0};
        const auto cs = fresnel_integrals(beta);
        return cd(cs.c, cs.s) / beta;
    }

    double fresnel_g_magnitude(double beta) { return std::abs(fresnel_g(beta)); }

    std::vector<double> fresnel_g_magnitude_grid(double beta_max, double step)
    {
        if (!(step > 0.0) || !(beta_max >= 0.0))
            throw std::invalid_argument("fresnel_g_magnitude_grid: need step > 0 and beta_max >= 0");
        const auto n = static_cast<std::size_t>(std::floor(beta_max / step + 1e-9));
        std::vector<double> out(n + 1);
        out[0] = 1.0;
        FresnelIntegrals acc;
        for (std::size_t k = 1; k <= n; ++k)
        {
            const double a = double(k - 1) * step;
            const double b = double(k) * step;
            if (b >= kAsymptoticFrom)
            {
                const auto cs = asymptotic(b);
                out[k] = std::abs(cd(cs.c, cs.s)) / b;
                continue;
            }
            const auto p = integrate_panel(a, b, 6);
            acc.c += p.c;
            acc.s += p.s;
            out[k] = std::abs(cd(acc.c, acc.s)) / b;
        }
        return out;
    }
}
