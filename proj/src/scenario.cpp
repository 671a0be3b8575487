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

#include "mfcovert/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mfcovert/rng.hpp"

namespace mfcovert
{
    using nlohmann::json;

    namespace
    {
        void check_keys(const json &j, const std::set<std::string> &allowed, const std::string &where)
        {
            if (!j.is_object())
                throw std::invalid_argument(where + ": expected an object");
            for (auto it = j.begin(); it != j.end(); ++it)
                if (!allowed.count(it.key()))
                    throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
        }

        double get_number(const json &j, const std::string &key, const std::string &where)
        {
            const auto &v = j.at(key);
            if (!v.is_number())
                throw std::invalid_argument(where + "." + key + ": expected a number");
            return v.get<double>();
        }

        std::uint64_t get_count(const json &j, const std::string &key, const std::string &where)
        {
            const auto &v = j.at(key);
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
                throw std::invalid_argument(where + "." + key + ": expected a nonnegative integer");
            return v.get<std::uint64_t>();
        }

        UniformRange get_range(const json &v, const std::string &where)
        {
            if (v.is_number())
                return {v.get<double>(), v.get<double>()};
            if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
                return {v[0].get<double>(), v[1].get<double>()};
            throw std::invalid_argument(where + ": expected a number or [lo, hi]");
        }

        json range_json(const UniformRange &r)
        {
            if (r.lo == r.hi)
                return r.lo;
            return json::array({r.lo, r.hi});
        }

        std::vector<NodeSpec> get_nodes(const json &v, const std::string &where)
        {
            if (!v.is_array())
                throw std::invalid_argument(where + ": expected an array");
            std::vector<NodeSpec> out;
            for (std::size_t i = 0; i < v.size(); ++i)
            {
                const std::string w = where + "[" + std::to_string(i) + "]";
                check_keys(v[i], {"theta", "range_m", "nlos_paths"}, w);
                NodeSpec n;
                n.theta = get_range(v[i].at("theta"), w + ".theta");
                n.range_m = get_range(v[i].at("range_m"), w + ".range_m");
                if (v[i].contains("nlos_paths"))
                    n.nlos_paths = get_count(v[i], "nlos_paths", w);
                out.push_back(n);
            }
            return out;
        }

        json nodes_json(const std::vector<NodeSpec> &nodes)
        {
            json a = json::array();
            for (const auto &n : nodes)
                a.push_back({{"theta", range_json(n.theta)}, {"range_m", range_json(n.range_m)}, {"nlos_paths", n.nlos_paths}});
            return a;
        }

        void check_range(const UniformRange &r, double lo, double hi, const std::string &what)
        {
            if (!(r.lo <= r.hi) || !(r.lo >= lo) || !(r.hi <= hi))
                throw std::invalid_argument(what + ": invalid interval");
        }

        NodeRealization draw_node(const NodeSpec &spec, double lambda, double kappa, double nlos_min,
                                  std::mt19937_64 &rng)
        {
            NodeRealization n;
            const double theta = uniform(rng, spec.theta.lo, spec.theta.hi);
            const double r = uniform(rng, spec.range_m.lo, spec.range_m.hi);
            n.los.location = {theta, r};
            n.los.gain = std::polar(los_amplitude(r, lambda, kappa), -2.0 * kPi * r / lambda);
            if (std::isinf(kappa))
                return n;
            const double hbar = std::pow(lambda / (4.0 * kPi), 2.0);
            const double sd = std::sqrt(1.0 / (kappa + 1.0)) * std::sqrt(hbar) / r;
            for (std::size_t l = 0; l < spec.nlos_paths; ++l)
            {
                PathComponent p;
                p.location.theta = uniform(rng, -1.0, 1.0);
                p.location.range_m = uniform(rng, std::min(nlos_min, r), r);
                const double re = standard_normal(rng), im = standard_normal(rng);
                p.gain = cd(re, im) * (sd / std::sqrt(2.0));
                n.nlos.push_back(p);
            }
            return n;
        }
    }

    Interval Scenario::movement_region() const
    {
        return region_m ? *region_m : default_region(num_antennas, wavelength());
    }

    ArrayLayout Scenario::fixed_layout() const
    {
        return uniform_layout(num_antennas, num_subarrays, wavelength(), movement_region());
    }

    void Scenario::validate() const
    {
        if (num_antennas == 0 || num_subarrays == 0 || num_antennas % num_subarrays != 0)
            throw std::invalid_argument("scenario: number of subarrays must divide number of antennas");
        if (!(frequency_hz > 0.0))
            throw std::invalid_argument("scenario: frequency must be positive");
        if (bobs.empty())
            throw std::invalid_argument("scenario: at least one Bob is required");
        for (const auto *set : {&bobs, &willies})
            for (const auto &n : *set)
            {
                check_range(n.theta, -1.0, 1.0, "scenario: theta");
                check_range(n.range_m, std::numeric_limits<double>::min(), std::numeric_limits<double>::max(),
                            "scenario: range_m");
            }
        if (!(power_w > 0.0) || !(bob_noise_w > 0.0))
            throw std::invalid_argument("scenario: power and noise must be positive");
        covertness.validate();
        if (!(rician_kappa >= 0.0))
            throw std::invalid_argument("scenario: Rician factor must be nonnegative");
        if (!(nlos_min_range_m > 0.0))
            throw std::invalid_argument("scenario: NLoS minimum range must be positive");
        if (trials == 0)
            throw std::invalid_argument("scenario: trials must be >= 1");
        de.validate();
        fixed_layout(); // region must hold the contiguous array
    }

    Scenario default_scenario()
    {
        Scenario s;
        s.bobs = {{{0.0, 0.0}, {25.0, 35.0}, 4}, {{-0.05, 0.05}, {150.0, 160.0}, 4}};
        s.willies = {{{0.0, 0.0}, {15.0, 25.0}, 4}, {{-0.05, 0.05}, {15.0, 25.0}, 4}};
        s.covertness = {dbm_to_watt(-90.0), db_to_linear(3.0), 0.1};
        s.bob_noise_w = dbm_to_watt(-90.0);
        s.rician_kappa = db_to_linear(10.0);
        return s;
    }

    Scenario scenario_from_json(const std::string &text)
    {
        json j;
        try
        {
            j = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw std::invalid_argument(std::string("config: ") + e.what());
        }
        check_keys(j, {"array", "bobs", "willies", "power_w", "bob_noise_dbm", "covertness", "rician_kappa_db",
                       "nlos_min_range_m", "trials", "seed", "de", "sca"},
                   "config");
        Scenario s = default_scenario();
        try
        {
            if (j.contains("array"))
            {
                const auto &a = j["array"];
                check_keys(a, {"num_antennas", "num_subarrays", "frequency_ghz", "region_m"}, "array");
                if (a.contains("num_antennas"))
                    s.num_antennas = get_count(a, "num_antennas", "array");
                if (a.contains("num_subarrays"))
                    s.num_subarrays = get_count(a, "num_subarrays", "array");
                if (a.contains("frequency_ghz"))
                    s.frequency_hz = get_number(a, "frequency_ghz", "array") * 1e9;
                if (a.contains("region_m"))
                {
                    const auto r = get_range(a["region_m"], "array.region_m");
                    s.region_m = Interval{r.lo, r.hi};
                }
            }
            if (j.contains("bobs"))
                s.bobs = get_nodes(j["bobs"], "bobs");
            if (j.contains("willies"))
                s.willies = get_nodes(j["willies"], "willies");
            if (j.contains("power_w"))
                s.power_w = get_number(j, "power_w", "config");
            if (j.contains("bob_noise_dbm"))
                s.bob_noise_w = dbm_to_watt(get_number(j, "bob_noise_dbm", "config"));
            if (j.contains("covertness"))
            {
                const auto &c = j["covertness"];
                check_keys(c, {"nominal_noise_dbm", "rho_db", "varsigma"}, "covertness");
                if (c.contains("nominal_noise_dbm"))
                    s.covertness.nominal_noise_w = dbm_to_watt(get_number(c, "nominal_noise_dbm", "covertness"));
                if (c.contains("rho_db"))
                    s.covertness.rho = db_to_linear(get_number(c, "rho_db", "covertness"));
                if (c.contains("varsigma"))
                    s.covertness.varsigma = get_number(c, "varsigma", "covertness");
            }
            if (j.contains("rician_kappa_db"))
                s.rician_kappa = j["rician_kappa_db"].is_null()
                                     ? std::numeric_limits<double>::infinity()
                                     : db_to_linear(get_number(j, "rician_kappa_db", "config"));
            if (j.contains("nlos_min_range_m"))
                s.nlos_min_range_m = get_number(j, "nlos_min_range_m", "config");
            if (j.contains("trials"))
                s.trials = get_count(j, "trials", "config");
            if (j.contains("seed"))
                s.seed = get_count(j, "seed", "config");
            if (j.contains("de"))
            {
                const auto &d = j["de"];
                check_keys(d, {"population", "iterations", "mutation_factor", "crossover_rate", "penalty_scale"}, "de");
                if (d.contains("population"))
                    s.de.population = get_count(d, "population", "de");
                if (d.contains("iterations"))
                    s.de.iterations = get_count(d, "iterations", "de");
                if (d.contains("mutation_factor"))
                    s.de.mutation_factor = get_number(d, "mutation_factor", "de");
                if (d.contains("crossover_rate"))
                    s.de.crossover_rate = get_number(d, "crossover_rate", "de");
                if (d.contains("penalty_scale"))
                    s.de.penalty_scale = get_number(d, "penalty_scale", "de");
            }
            if (j.contains("sca"))
            {
                const auto &c = j["sca"];
                check_keys(c, {"max_iters", "objective_tol", "subproblem_tol"}, "sca");
                if (c.contains("max_iters"))
                    s.sca.max_iters = get_count(c, "max_iters", "sca");
                if (c.contains("objective_tol"))
                    s.sca.objective_tol = get_number(c, "objective_tol", "sca");
                if (c.contains("subproblem_tol"))
                    s.sca.subproblem_tol = get_number(c, "subproblem_tol", "sca");
            }
        }
        catch (const json::exception &e)
        {
            throw std::invalid_argument(std::string("config: ") + e.what());
        }
        s.validate();
        return s;
    }

    Scenario load_scenario(const std::string &path)
    {
        std::ifstream f(path);
        if (!f)
            throw std::invalid_argument("config: cannot open " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        return scenario_from_json(ss.str());
    }

    std::string scenario_to_json(const Scenario &s)
    {
        json j;
        j["array"] = {{"num_antennas", s.num_antennas},
                      {"num_subarrays", s.num_subarrays},
                      {"frequency_ghz", s.frequency_hz / 1e9},
                      {"region_m", {s.movement_region().lo, s.movement_region().hi}}};
        j["bobs"] = nodes_json(s.bobs);
        j["willies"] = nodes_json(s.willies);
        j["power_w"] = s.power_w;
        j["bob_noise_dbm"] = watt_to_dbm(s.bob_noise_w);
        j["covertness"] = {{"nominal_noise_dbm", watt_to_dbm(s.covertness.nominal_noise_w)},
                           {"rho_db", 10.0 * std::log10(s.covertness.rho)},
                           {"varsigma", s.covertness.varsigma}};
        j["rician_kappa_db"] = std::isinf(s.rician_kappa) ? json(nullptr) : json(10.0 * std::log10(s.rician_kappa));
        j["nlos_min_range_m"] = s.nlos_min_range_m;
        j["trials"] = s.trials;
        j["seed"] = s.seed;
        j["de"] = {{"population", s.de.population},
                   {"iterations", s.de.iterations},
                   {"mutation_factor", s.de.mutation_factor},
                   {"crossover_rate", s.de.crossover_rate},
                   {"penalty_scale", s.de.penalty_scale}};
        j["sca"] = {{"max_iters", s.sca.max_iters},
                    {"objective_tol", s.sca.objective_tol},
                    {"subproblem_tol", s.sca.subproblem_tol}};
        return j.dump(2);
    }

    double los_amplitude(double range_m, double wavelength_m, double kappa)
    {
        const double k = std::isinf(kappa) ? 1.0 : std::sqrt(kappa / (kappa + 1.0));
        return k * (wavelength_m / (4.0 * kPi)) / range_m;
    }

    std::vector<PolarLocation> Realization::bob_locations() const
    {
        std::vector<PolarLocation> out;
        for (const auto &b : bobs)
            out.push_back(b.los.location);
        return out;
    }

    std::vector<PolarLocation> Realization::willie_locations() const
    {
        std::vector<PolarLocation> out;
        for (const auto &w : willies)
            out.push_back(w.los.location);
        return out;
    }

    std::vector<ChannelVector> Realization::bob_channels(std::span<const double> positions, double lambda) const
    {
        std::vector<ChannelVector> out;
        for (std::size_t b = 0; b < bobs.size(); ++b)
            out.push_back(synth_channel(positions, lambda, bobs[b].los, bobs[b].nlos, Receiver::Bob, b));
        return out;
    }

    std::vector<ChannelVector> Realization::willie_channels(std::span<const double> positions, double lambda) const
    {
        std::vector<ChannelVector> out;
        for (std::size_t w = 0; w < willies.size(); ++w)
            out.push_back(synth_channel(positions, lambda, willies[w].los, willies[w].nlos, Receiver::Willie, w));
        return out;
    }

    Realization sample_scenario(const Scenario &s, std::size_t trial)
    {
        auto rng = substream(s.seed, trial, 0x7363656eULL);
        Realization r;
        r.trial = trial;
        const double lambda = s.wavelength();
        for (const auto &b : s.bobs)
            r.bobs.push_back(draw_node(b, lambda, s.rician_kappa, s.nlos_min_range_m, rng));
        for (const auto &w : s.willies)
            r.willies.push_back(draw_node(w, lambda, s.rician_kappa, s.nlos_min_range_m, rng));
        double total = 0.0;
        for (const auto &b : r.bobs)
            total += b.los.location.range_m;
        for (const auto &b : r.bobs)
            r.weights.push_back(b.los.location.range_m / total);
        return r;
    }
}
