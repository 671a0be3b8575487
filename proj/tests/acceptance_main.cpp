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

// Runs the acceptance criteria and prints one line per criterion; exits 1 if any fails.

#include <cstdio>
#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "mfcovert/acceptance.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"mfcovert acceptance criteria"};
    mfcovert::AcceptanceOptions opt;
    app.add_option("--only", opt.only, "Criterion ids to run");
    app.add_option("--threads", opt.threads, "Worker threads, 0 = all cores");
    app.add_option("--rate-trials", opt.rate_sweep_trials, "Realizations per transmit power point");
    app.add_option("--csi-realizations", opt.csi_realizations, "Designs in the CSI error sweep");
    app.add_option("--csi-draws", opt.csi_draws, "Error draws per design");
    CLI11_PARSE(app, argc, argv);

    const auto results = mfcovert::run_acceptance(opt, &std::cout);
    std::size_t failed = 0;
    for (const auto &r : results)
        failed += r.pass ? 0 : 1;
    std::printf("%zu of %zu criteria passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 1;
}
