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

#ifndef MFCOVERT_FRESNEL_HPP
#define MFCOVERT_FRESNEL_HPP

#include <vector>

#include "mfcovert/common.hpp"

namespace mfcovert
{
    struct FresnelIntegrals
    {
        double c = 0.0; // int_0^x cos(pi t^2 / 2) dt
        double s = 0.0; // int_0^x sin(pi t^2 / 2) dt
    };

    /// Fresnel integrals. Below x = 8 by adaptive Gauss-Kronrod quadrature: [0, x] is split at
    /// t = sqrt(2k) so that every panel covers at most half an oscillation, and each panel is
    /// integrated to a relative tolerance of 1e-12 (absolute error below 1e-10 overall). From x = 8 on by the
    /// asymptotic auxiliary-function expansion, whose truncation error there is below 1e-15.
    FresnelIntegrals fresnel_integrals(double x);

    /// G(beta) = (C(beta) + j S(beta)) / beta, with G(0) = 1.
    cd fresnel_g(double beta);
    double fresnel_g_magnitude(double beta);

    /// |G| sampled at beta_k = k * step for k = 0..floor(beta_max / step), accumulated
    /// panel by panel below x = 8 (one quadrature per grid cell, not per point).
    std::vector<double> fresnel_g_magnitude_grid(double beta_max, double step);
}

#endif
