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

#include "mfcovert/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mfcovert
{
    namespace
    {
        const double kLn2 = std::log(2.0);

        std::vector<double> resolve_weights(std::span<const double> weights, std::size_t n_bobs)
        {
            if (weights.empty())
                return std::vector<double>(n_bobs, 1.0 / double(n_bobs));
            if (weights.size() != n_bobs)
                throw std::invalid_argument("rate weights: one weight per Bob expected");
            for (double w : weights)
                if (!(w >= 0.0))
                    throw std::invalid_argument("rate weights must be nonnegative");
            return {weights.begin(), weights.end()};
        }

        // useful power |e_b^H f_b|^2 and interference-plus-noise of every Bob
        void sinr_terms(std::span<const CVector> e, const CMatrix &fd, double noise, std::vector<cd> &zeta,
                        std::vector<double> &theta)
        {
            const std::size_t b_count = e.size();
            zeta.assign(b_count, cd{});
            theta.assign(b_count, noise);
            for (std::size_t b = 0; b < b_count; ++b)
            {
                const Eigen::RowVectorXcd proj = e[b].adjoint() * fd;
                for (std::size_t i = 0; i < b_count; ++i)
                {
                    if (i == b)
                        zeta[b] = proj[Eigen::Index(i)];
                    else
                        theta[b] += std::norm(proj[Eigen::Index(i)]);
                }
            }
        }

        double weighted(const std::vector<double> &w, const std::vector<double> &v)
        {
            return std::inner_product(w.begin(), w.end(), v.begin(), 0.0);
        }

        double re_quad(const CMatrix &z, const CMatrix &a) { return (z.adjoint() * a * z).trace().real(); }

        // max sum_b Re(l_b^H z_b) - z_b^H Q z_b  s.t.  sum_b z_b^H A_k z_b <= 1, via log-barrier Newton
        // on the Lagrange dual (lambda > 0). The central path gives strictly feasible primal points.
        struct Subproblem
        {
            CMatrix q;
            CMatrix l;
            std::vector<CMatrix> a;
        };

        struct DualEval
        {
            bool ok = false;
            double value = 0.0;
            Eigen::VectorXd grad;
            Eigen::MatrixXd hess;
            CMatrix z;
        };

        DualEval eval_dual(const Subproblem &sp, const Eigen::VectorXd &lam, bool with_hessian)
        {
            DualEval ev;
            const auto k = sp.a.size();
            CMatrix m = sp.q;
            for (std::size_t i = 0; i < k; ++i)
                m += lam[Eigen::Index(i)] * sp.a[i];
            Eigen::LLT<CMatrix> llt(m);
            if (llt.info() != Eigen::Success)
                return ev;
            ev.z = 0.5 * llt.solve(sp.l);
            ev.value = 0.5 * (sp.l.adjoint() * ev.z).trace().real() + lam.sum();
            ev.grad.resize(Eigen::Index(k));
            for (std::size_t i = 0; i < k; ++i)
                ev.grad[Eigen::Index(i)] = 1.0 - re_quad(ev.z, sp.a[i]);
            if (with_hessian)
            {
                ev.hess.resize(Eigen::Index(k), Eigen::Index(k));
                std::vector<CMatrix> az(k), w(k);
                for (std::size_t i = 0; i < k; ++i)
                {
                    az[i] = sp.a[i] * ev.z;
                    w[i] = llt.solve(az[i]);
                }
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = i; j < k; ++j)
                    {
                        const double h = 2.0 * (az[i].adjoint() * w[j]).trace().real();
                        ev.hess(Eigen::Index(i), Eigen::Index(j)) = h;
                        ev.hess(Eigen::Index(j), Eigen::Index(i)) = h;
                    }
            }
            ev.ok = std::isfinite(ev.value);
            return ev;
        }

        // lam carries the multipliers between calls; an empty vector starts from ones and mu = 1.
        bool solve_subproblem(const Subproblem &sp, double gap_tol, Eigen::VectorXd &lam, CMatrix &z_out)
        {
            const auto k = Eigen::Index(sp.a.size());
            double mu = 1.0;
            if (lam.size() != k)
                lam = Eigen::VectorXd::Ones(k);
            else
            {
                lam = lam.cwiseMax(1e-8);
                mu = std::max(gap_tol, 1e-4 * lam.sum()) / double(k);
            }
            auto phi = [&](const DualEval &ev, const Eigen::VectorXd &l, double m) {
                return ev.value - m * l.array().log().sum();
            };
            DualEval ev = eval_dual(sp, lam, true);
            if (!ev.ok)
                return false;
            for (int outer = 0; outer < 40; ++outer)
            {
                for (int it = 0; it < 200; ++it)
                {
                    const Eigen::VectorXd g = ev.grad - mu * lam.cwiseInverse();
                    Eigen::MatrixXd h = ev.hess;
                    h.diagonal() += mu * lam.cwiseInverse().cwiseAbs2();
                    const Eigen::VectorXd dx = -h.ldlt().solve(g);
                    const double dec = -g.dot(dx);
                    const double f0 = phi(ev, lam, mu);
                    if (!(dec >= 0.0) || dec < 1e-9 * mu)
                        break;
                    double alpha = 1.0;
                    for (Eigen::Index i = 0; i < k; ++i)
                        if (dx[i] < 0.0)
                            alpha = std::min(alpha, -0.99 * lam[i] / dx[i]);
                    bool moved = false;
                    for (int ls = 0; ls < 60; ++ls, alpha *= 0.5)
                    {
                        const Eigen::VectorXd trial = lam + alpha * dx;
                        DualEval et = eval_dual(sp, trial, true);
                        if (!et.ok)
                            continue;
                        // the dual value carries a large constant, so also accept when the slope along dx is
                        // still nonpositive at the trial point (a decrease by convexity)
                        const double slope = (et.grad - mu * trial.cwiseInverse()).dot(dx);
                        if (slope <= 0.0 || phi(et, trial, mu) <= f0 - 1e-4 * alpha * dec)
                        {
                            lam = trial;
                            ev = std::move(et);
                            moved = true;
                            break;
                        }
                    }
                    if (!moved)
                        break;
                }
                if (double(k) * mu < gap_tol)
                    break;
                mu *= 0.02;
            }
            z_out = ev.z;
            return z_out.allFinite();
        }

        // orthonormal basis of the complement of span{cols}, via full SVD
        CMatrix null_complement(const CMatrix &cols, Eigen::Index dim)
        {
            if (cols.cols() == 0)
                return CMatrix::Identity(dim, dim);
            Eigen::JacobiSVD<CMatrix> svd(cols, Eigen::ComputeFullU);
            const auto &s = svd.singularValues();
            const double tol = 1e-12 * std::max(1.0, s.size() ? s[0] : 0.0);
            Eigen::Index rank = 0;
            for (Eigen::Index i = 0; i < s.size(); ++i)
                if (s[i] > tol)
                    ++rank;
            return svd.matrixU().rightCols(dim - rank);
        }

        std::vector<double> surrogate_values(std::span<const CVector> e, const CMatrix &prev, const CMatrix &var,
                                             double noise)
        {
            std::vector<cd> zk, z;
            std::vector<double> tk, t;
            sinr_terms(e, prev, noise, zk, tk);
            sinr_terms(e, var, noise, z, t);
            std::vector<double> out(e.size());
            for (std::size_t b = 0; b < e.size(); ++b)
            {
                const double gk = std::norm(zk[b]) / tk[b];
                out[b] = (std::log1p(gk) - gk + 2.0 * (std::conj(zk[b]) * z[b]).real() / tk[b] -
                          std::norm(zk[b]) * (std::norm(z[b]) + t[b]) / (tk[b] * (std::norm(zk[b]) + tk[b]))) /
                         kLn2;
            }
            return out;
        }
    }

    CMatrix analog_mrt(std::span<const double> positions, double wavelength_m, std::span<const PolarLocation> bobs)
    {
        if (bobs.empty())
            throw std::invalid_argument("analog_mrt: need at least one Bob");
        const double sqrt_n = std::sqrt(double(positions.size()));
        CMatrix fa(Eigen::Index(positions.size()), Eigen::Index(bobs.size()));
        for (std::size_t b = 0; b < bobs.size(); ++b)
            fa.col(Eigen::Index(b)) = sqrt_n * steering_vector(positions, wavelength_m, bobs[b]);
        return fa;
    }

    CMatrix analog_mrt(const ArrayLayout &layout, std::span<const PolarLocation> bobs)
    {
        const auto pos = antenna_positions(layout);
        return analog_mrt(pos, layout.wavelength(), bobs);
    }

    std::vector<CVector> effective_channels(const CMatrix &analog, std::span<const ChannelVector> channels)
    {
        std::vector<CVector> out;
        out.reserve(channels.size());
        for (const auto &h : channels)
        {
            if (h.coefficients.size() != analog.rows())
                throw std::invalid_argument("effective_channels: channel length differs from array size");
            out.emplace_back(analog.adjoint() * h.coefficients);
        }
        return out;
    }

    RateReport achievable_rate(std::span<const CVector> bob_effective, const CMatrix &digital, double noise_w,
                               std::span<const double> weights)
    {
        if (bob_effective.empty())
            throw std::invalid_argument("achievable_rate: need at least one Bob");
        if (!(noise_w > 0.0))
            throw std::invalid_argument("achievable_rate: noise power must be positive");
        if (digital.cols() != Eigen::Index(bob_effective.size()))
            throw std::invalid_argument("achievable_rate: one digital column per Bob expected");
        RateReport r;
        r.weights = resolve_weights(weights, bob_effective.size());
        std::vector<cd> zeta;
        std::vector<double> theta;
        sinr_terms(bob_effective, digital, noise_w, zeta, theta);
        r.per_bob_rate.resize(bob_effective.size());
        for (std::size_t b = 0; b < bob_effective.size(); ++b)
            r.per_bob_rate[b] = std::log2(1.0 + std::norm(zeta[b]) / theta[b]);
        r.weighted_sum = weighted(r.weights, r.per_bob_rate);
        return r;
    }

    std::vector<double> sca_surrogate(std::span<const CVector> bob_effective, const CMatrix &digital_prev,
                                      const CMatrix &digital_var, double noise_w)
    {
        if (!(noise_w > 0.0))
            throw std::invalid_argument("sca_surrogate: noise power must be positive");
        return surrogate_values(bob_effective, digital_prev, digital_var, noise_w);
    }

    double max_constraint_violation(const DigitalProblem &problem, const CMatrix &digital)
    {
        double v = (problem.analog * digital).squaredNorm() / problem.power_w - 1.0;
        if (std::isfinite(problem.covert_threshold_w))
            for (const auto &ew : problem.willie_effective)
            {
                const double leak = (ew.adjoint() * digital).squaredNorm();
                v = std::max(v, problem.covert_threshold_w > 0.0 ? leak / problem.covert_threshold_w - 1.0
                                                                 : leak / problem.power_w);
            }
        return v;
    }

    SCAResult solve_digital_sca(const DigitalProblem &pr, const SCAConfig &cfg)
    {
        const std::size_t nb = pr.bob_effective.size();
        const auto bdim = Eigen::Index(nb);
        if (nb == 0 || pr.analog.cols() != bdim)
            throw std::invalid_argument("solve_digital_sca: one analog column per Bob expected");
        if (!(pr.power_w > 0.0) || !(pr.bob_noise_w > 0.0))
            throw std::invalid_argument("solve_digital_sca: power and noise must be positive");
        if (!(pr.covert_threshold_w >= 0.0))
            throw std::invalid_argument("solve_digital_sca: covert threshold must be nonnegative");
        if (cfg.max_iters == 0 || !(cfg.objective_tol > 0.0) || !(cfg.subproblem_tol > 0.0) ||
            !(cfg.init_scale > 0.0 && cfg.init_scale <= 1.0))
            throw std::invalid_argument("solve_digital_sca: invalid SCA configuration");
        for (const auto &e : pr.bob_effective)
            if (e.size() != bdim)
                throw std::invalid_argument("solve_digital_sca: effective channel length must equal B");
        for (const auto &e : pr.willie_effective)
            if (e.size() != bdim)
                throw std::invalid_argument("solve_digital_sca: effective channel length must equal B");

        const auto weights = resolve_weights(pr.weights, nb);
        const double sigma = std::sqrt(pr.bob_noise_w);
        std::vector<CVector> e(nb);
        for (std::size_t b = 0; b < nb; ++b)
            e[b] = pr.bob_effective[b] / sigma;

        const bool covert = std::isfinite(pr.covert_threshold_w);
        std::vector<CVector> willies; // positive threshold, normalized to leakage / threshold
        CMatrix zero_cols(bdim, 0);
        if (covert)
            for (const auto &ew : pr.willie_effective)
            {
                if (pr.covert_threshold_w > 0.0)
                    willies.push_back(ew / std::sqrt(pr.covert_threshold_w));
                else
                {
                    zero_cols.conservativeResize(Eigen::NoChange, zero_cols.cols() + 1);
                    zero_cols.col(zero_cols.cols() - 1) = ew;
                }
            }
        const CMatrix u = null_complement(zero_cols, bdim); // f_b = U z_b
        const Eigen::Index dim = u.cols();

        SCAResult res;
        res.digital = CMatrix::Zero(bdim, bdim);
        auto rate_of = [&](const CMatrix &fd) { return achievable_rate(e, fd, 1.0, weights); };

        const CMatrix a0 = pr.analog.adjoint() * pr.analog / pr.power_w;
        // largest common scale that keeps power and every leakage within budget
        auto boundary_scale = [&](const CMatrix &fd) {
            const double p = (a0 * fd).cwiseProduct(fd.conjugate()).sum().real();
            if (!(p > 0.0))
                return 1.0;
            double s = 1.0 / std::sqrt(p);
            for (const auto &w : willies)
            {
                const double leak = (w.adjoint() * fd).squaredNorm();
                if (leak > 0.0)
                    s = std::min(s, std::sqrt((1.0 - 1e-12) / leak));
            }
            return s;
        };
        auto feasible_scale = [&](const CMatrix &fd) { return std::min(1.0, boundary_scale(fd)); };

        if (dim == 0)
        {
            res.rates = rate_of(res.digital);
            res.trace.push_back({0, res.rates.weighted_sum, res.rates.weighted_sum, max_constraint_violation(pr, res.digital)});
            res.converged = true;
            return res;
        }

        // equal-power MRT start inside the allowed subspace
        CMatrix fd(bdim, bdim);
        if (pr.initial_digital.size() != 0)
        {
            if (pr.initial_digital.rows() != bdim || pr.initial_digital.cols() != bdim)
                throw std::invalid_argument("solve_digital_sca: initial digital matrix must be B x B");
            fd = u * (u.adjoint() * pr.initial_digital);
        }
        else
        {
            for (std::size_t b = 0; b < nb; ++b)
            {
                CVector dir = u * (u.adjoint() * e[b]);
                if (dir.norm() <= 1e-300 * std::max(1.0, e[b].norm()))
                    dir = u.col(0);
                const double pw = (pr.analog * dir).squaredNorm();
                fd.col(Eigen::Index(b)) = dir * std::sqrt(cfg.init_scale * pr.power_w / (double(nb) * pw));
            }
        }
        fd *= feasible_scale(fd);

        // variable scaling so that the power constraint matrix has unit average eigenvalue
        const CMatrix a0r = u.adjoint() * a0 * u;
        const double a0_avg = a0r.trace().real() / double(dim);
        const double xs = 1.0 / std::sqrt(a0_avg); // f = xs * U z

        Subproblem sp;
        sp.a.push_back(a0r * xs * xs);
        for (const auto &w : willies)
        {
            const CVector wr = u.adjoint() * w;
            sp.a.push_back(wr * wr.adjoint() * xs * xs);
        }

        Eigen::VectorXd lam; // dual warm start across SCA iterations
        RateReport cur = rate_of(fd);
        double last_surrogate = cur.weighted_sum;
        res.trace.push_back({0, last_surrogate, cur.weighted_sum, max_constraint_violation(pr, fd)});

        for (std::size_t k = 1; k <= cfg.max_iters; ++k)
        {
            std::vector<cd> zk;
            std::vector<double> tk;
            sinr_terms(e, fd, 1.0, zk, tk);
            CMatrix q = CMatrix::Zero(bdim, bdim);
            CMatrix l(bdim, bdim);
            for (std::size_t b = 0; b < nb; ++b)
            {
                const double c = std::norm(zk[b]) / (tk[b] * (std::norm(zk[b]) + tk[b]));
                q += (weights[b] * c / kLn2) * e[b] * e[b].adjoint();
                l.col(Eigen::Index(b)) = (2.0 * weights[b] / (kLn2 * tk[b])) * zk[b] * e[b];
            }
            sp.q = u.adjoint() * q * u * xs * xs;
            sp.l = u.adjoint() * l * xs;

            CMatrix z;
            if (!solve_subproblem(sp, cfg.subproblem_tol, lam, z))
            {
                res.ok = false;
                res.diagnostic = "subproblem solver failed at iteration " + std::to_string(k);
                break;
            }
            CMatrix next = u * z * xs;
            next *= feasible_scale(next);

            std::vector<double> sv = surrogate_values(e, fd, next, 1.0);
            double s_next = weighted(weights, sv);
            const bool accept = s_next >= cur.weighted_sum;
            if (accept)
            {
                // Extrapolate along the subproblem step while the true rate keeps improving. A step of
                // the minorant can grow a user's SINR only by about a factor (1 + 2 / SINR), so
                // climbing back from a scaled-down start takes many iterations without this.
                const CMatrix dir = next - fd;
                double best_rate = rate_of(next).weighted_sum;
                CMatrix best = next;
                for (double t = 2.0; t <= 1048576.0; t *= 2.0)
                {
                    CMatrix trial = fd + t * dir;
                    trial *= boundary_scale(trial);
                    const double rt = rate_of(trial).weighted_sum;
                    if (!(rt > best_rate))
                        break;
                    best_rate = rt;
                    best = std::move(trial);
                }
                fd = std::move(best);

                // Per-user power search: scaling one column by 2^(+-j) and rescaling to feasibility.
                // Switching a user off costs the minorant a bounded factor per iteration otherwise.
                double rate_now = rate_of(fd).weighted_sum;
                for (std::size_t b = 0; b < nb; ++b)
                    for (double factor : {0.5, 2.0})
                    {
                        bool moved = false;
                        for (int j = 0; j < 60; ++j)
                        {
                            CMatrix trial = fd;
                            trial.col(Eigen::Index(b)) *= factor;
                            trial *= boundary_scale(trial);
                            const double rt = rate_of(trial).weighted_sum;
                            if (!(rt > rate_now))
                                break;
                            rate_now = rt;
                            fd = std::move(trial);
                            moved = true;
                        }
                        if (moved)
                            break;
                    }
            }
            else
                s_next = cur.weighted_sum; // expansion point is the best certified iterate
            cur = rate_of(fd);
            res.trace.push_back({k, s_next, cur.weighted_sum, max_constraint_violation(pr, fd)});
            res.iterations = k;

            const double change = std::abs(s_next - last_surrogate) / std::max(std::abs(last_surrogate), 1e-12);
            last_surrogate = s_next;
            if (!accept || change < cfg.objective_tol)
            {
                // stationary point reached: resume from the best point with one user switched off, if any
                CMatrix best;
                double best_rate = cur.weighted_sum;
                for (std::size_t b = 0; b < nb; ++b)
                {
                    if (fd.col(Eigen::Index(b)).squaredNorm() == 0.0)
                        continue;
                    CMatrix trial = fd;
                    trial.col(Eigen::Index(b)).setZero();
                    if (trial.squaredNorm() == 0.0)
                        continue;
                    trial *= boundary_scale(trial);
                    const double rt = rate_of(trial).weighted_sum;
                    if (rt > best_rate)
                    {
                        best_rate = rt;
                        best = std::move(trial);
                    }
                }
                if (best.size() == 0)
                {
                    res.converged = true;
                    break;
                }
                fd = std::move(best);
                cur = rate_of(fd);
                last_surrogate = cur.weighted_sum;
            }
        }
        res.digital = fd;
        res.rates = cur;
        return res;
    }

    TwoUserAllocation two_user_rates(const TwoUserInput &in, double p1, double p2)
    {
        const double n = double(in.num_antennas);
        const double g1 = n * in.gain_b1 * in.gain_b1, g2 = n * in.gain_b2 * in.gain_b2;
        const double chi2 = in.chi_b1b2 * in.chi_b1b2;
        TwoUserAllocation a;
        a.p1_w = p1;
        a.p2_w = p2;
        a.rate1 = std::log2(1.0 + p1 * g1 / (p2 * g1 * chi2 + in.bob_noise_w));
        a.rate2 = std::log2(1.0 + p2 * g2 / (p1 * g2 * chi2 + in.bob_noise_w));
        a.sum_rate = a.rate1 + a.rate2;
        a.feasible = true;
        if (in.covert)
        {
            const double chis[2] = {in.chi_w_b1, in.chi_w_b2};
            const double pw[2] = {p1, p2};
            a.feasible = covert_leakage_check(chis, pw, in.gain_w, in.num_antennas, in.spec).pass;
        }
        return a;
    }

    TwoUserAllocation power_allocation_2user(const TwoUserInput &in, std::size_t grid)
    {
        if (grid == 0)
            throw std::invalid_argument("power_allocation_2user: grid must be positive");
        TwoUserAllocation best;
        for (std::size_t i = 0; i <= grid; ++i)
        {
            const double p1 = in.power_w * double(i) / double(grid);
            const auto a = two_user_rates(in, p1, in.power_w - p1);
            if (a.feasible && (!best.feasible || a.sum_rate > best.sum_rate))
                best = a;
        }
        return best;
    }

    double two_user_upper_bound(const TwoUserInput &in, double p1, double p2)
    {
        const double n = double(in.num_antennas);
        return std::log2(1.0 + p1 * n * in.gain_b1 * in.gain_b1 / in.bob_noise_w) +
               std::log2(1.0 + p2 * n * in.gain_b2 * in.gain_b2 / in.bob_noise_w);
    }

    double weighted_waterfilling_bound(std::span<const double> a, std::span<const double> w, double power_w)
    {
        if (a.size() != w.size() || a.empty())
            throw std::invalid_argument("weighted_waterfilling_bound: size mismatch");
        auto alloc = [&](double level, std::size_t b) {
            return a[b] > 0.0 ? std::max(0.0, w[b] * level - 1.0 / a[b]) : 0.0;
        };
        double wmin = 0.0, inv_sum = 0.0;
        for (std::size_t b = 0; b < a.size(); ++b)
        {
            if (w[b] > 0.0 && a[b] > 0.0)
            {
                wmin = wmin == 0.0 ? w[b] : std::min(wmin, w[b]);
                inv_sum += 1.0 / a[b];
            }
        }
        if (wmin == 0.0)
            return 0.0;
        double lo = 0.0, hi = (power_w + inv_sum) / wmin;
        for (int it = 0; it < 200; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            double total = 0.0;
            for (std::size_t b = 0; b < a.size(); ++b)
                total += alloc(mid, b);
            (total > power_w ? hi : lo) = mid;
        }
        double r = 0.0;
        for (std::size_t b = 0; b < a.size(); ++b)
            r += w[b] * std::log2(1.0 + alloc(lo, b) * a[b]);
        return r;
    }
}
