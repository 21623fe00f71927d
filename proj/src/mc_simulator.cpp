// SPDX-License-Identifier: Apache-2.0
//
// fas-lcr: level crossing rate analysis for fluid antenna systems
// Copyright (C) 2026 The fas-lcr authors
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


#include "fas_lcr/mc_simulator.hpp"
#include "fas_lcr/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>

namespace fas
{
    namespace
    {
        // Phasors are re-seeded from the exact phase at every block start.
        constexpr std::size_t block_len = 4096;

        std::uint64_t splitmix64(std::uint64_t &state)
        {
            std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }

        double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

        // One Gaussian component: amp * sum_n cos(omega_n t + phase_n).
        struct Sinusoids
        {
            std::vector<double> omega, phase, rot_re, rot_im;
            double amp = 0.0;
            double dt = 1.0;

            Sinusoids(std::uint64_t root, std::uint64_t stream, std::size_t m, double f_doppler, double dt_)
                : omega(m), phase(m), rot_re(m), rot_im(m), amp(std::sqrt(1.0 / static_cast<double>(m))), dt(dt_)
            {
                std::mt19937_64 rng(substream_seed(root, stream));
                const double two_pi = 2.0 * std::numbers::pi;
                // Arrival angles evenly spaced over one quadrant with a common
                // random offset. Mirror angles would repeat |omega| and leave
                // slow beats in the time averages.
                const double theta = two_pi * uniform01(rng) - std::numbers::pi;
                for (std::size_t n = 0; n < m; ++n)
                {
                    const double alpha = (two_pi * static_cast<double>(n + 1) - std::numbers::pi + theta) /
                                         (4.0 * static_cast<double>(m));
                    omega[n] = two_pi * f_doppler * std::cos(alpha);
                    phase[n] = two_pi * uniform01(rng);
                    rot_re[n] = std::cos(omega[n] * dt);
                    rot_im[n] = std::sin(omega[n] * dt);
                }
            }

            // First `count` samples of block b.
            void fill_block(std::size_t b, std::size_t count, double *out, std::vector<double> &re,
                            std::vector<double> &im) const
            {
                const std::size_t m = omega.size();
                re.resize(m);
                im.resize(m);
                const double t0 = static_cast<double>(b * block_len) * dt;
                for (std::size_t n = 0; n < m; ++n)
                {
                    const double theta = omega[n] * t0 + phase[n];
                    re[n] = std::cos(theta);
                    im[n] = std::sin(theta);
                }
                for (std::size_t j = 0; j < count; ++j)
                {
                    double s = 0.0;
                    for (std::size_t n = 0; n < m; ++n)
                        s += re[n];
                    out[j] = amp * s;
                    for (std::size_t n = 0; n < m; ++n)
                    {
                        const double r = re[n] * rot_re[n] - im[n] * rot_im[n];
                        im[n] = re[n] * rot_im[n] + im[n] * rot_re[n];
                        re[n] = r;
                    }
                }
            }
        };

        std::size_t block_count(std::size_t n) { return (n + block_len - 1) / block_len; }

        // Samples [b L, b L + len) plus, when it exists, the first sample of block b + 1.
        std::size_t fill_with_overlap(const Sinusoids &s, std::size_t b, std::size_t n, std::vector<double> &out,
                                      std::vector<double> &re, std::vector<double> &im)
        {
            const std::size_t start = b * block_len;
            const std::size_t len = std::min(block_len, n - start);
            const std::size_t ext = start + len < n ? 1 : 0;
            out.resize(len + ext);
            s.fill_block(b, len, out.data(), re, im);
            if (ext)
                s.fill_block(b + 1, 1, out.data() + len, re, im);
            return len + ext;
        }

        double port_envelope(double sigma, double c, double mu, double xk, double yk, double x0, double y0)
        {
            const double re = c * xk + mu * x0;
            const double im = c * yk + mu * y0;
            return sigma * std::sqrt(re * re + im * im);
        }

        void check_profile(const FasConfig &cfg, const CorrelationProfile &profile)
        {
            if (profile.size() != cfg.n_ports)
                throw ConfigError("correlation profile has " + std::to_string(profile.size()) + " entries, expected " +
                                  std::to_string(cfg.n_ports));
            for (double mu : profile.mu)
                if (!std::isfinite(mu) || std::abs(mu) > 1.0)
                    throw ConfigError("correlation coefficients must lie in [-1, 1]");
        }

        void check_threshold(double x_th)
        {
            if (!std::isfinite(x_th) || x_th <= 0.0)
                throw ConfigError("threshold must be positive and finite");
        }

        void check_series(const EnvelopeSeries &series)
        {
            if (series.samples.size() < 2)
                throw ConfigError("envelope series needs at least 2 samples");
            if (!(series.dt > 0.0) || !std::isfinite(series.dt))
                throw ConfigError("envelope series dt must be positive");
        }

        std::uint64_t count_down(const double *r, std::size_t n, double x_th)
        {
            std::uint64_t c = 0;
            for (std::size_t i = 0; i + 1 < n; ++i)
                c += (r[i] >= x_th && r[i + 1] < x_th) ? 1 : 0;
            return c;
        }

        LcrEstimate make_estimate(double x_th, std::uint64_t crossings, double duration, double f_doppler)
        {
            LcrEstimate e;
            e.threshold = x_th;
            e.crossings = crossings;
            e.duration = duration;
            e.rate = static_cast<double>(crossings) / duration;
            e.nlcr = e.rate / f_doppler;
            return e;
        }
    }

    void SimParams::validate(const FasConfig &cfg) const
    {
        const double f = cfg.f_doppler;
        if (!std::isfinite(sample_rate) || sample_rate < 16.0 * f)
            throw ConfigError("sample_rate must be at least 16 f_doppler");
        if (!std::isfinite(duration) || duration * f < 100.0 * (1.0 - 1e-12))
            throw ConfigError("duration must cover at least 100 Doppler cycles");
        if (n_sinusoids < 8)
            throw ConfigError("n_sinusoids must be >= 8");
    }

    std::size_t SimParams::n_samples() const { return static_cast<std::size_t>(std::llround(duration * sample_rate)); }

    SimParams make_sim_params(const FasConfig &cfg, double duration_cycles, std::uint64_t seed, double rate_mult)
    {
        SimParams sim;
        sim.sample_rate = rate_mult * cfg.f_doppler;
        sim.duration = duration_cycles / cfg.f_doppler;
        sim.seed = seed;
        return sim;
    }

    double LcrEstimate::rel_stderr() const
    {
        if (crossings == 0)
            return std::numeric_limits<double>::infinity();
        return 1.0 / std::sqrt(static_cast<double>(crossings));
    }

    std::uint64_t substream_seed(std::uint64_t root, std::uint64_t stream)
    {
        std::uint64_t state = root;
        const std::uint64_t a = splitmix64(state);
        state = a ^ (stream * 0xd1b54a32d192ed03ULL);
        splitmix64(state);
        return splitmix64(state);
    }

    BaseProcesses generate_base_processes(const FasConfig &cfg, const SimParams &sim)
    {
        cfg.validate();
        sim.validate(cfg);
        const std::size_t n = sim.n_samples();
        const std::size_t n_streams = 2 * (cfg.n_ports + 1);

        BaseProcesses base;
        base.dt = sim.dt();
        base.series.resize(n_streams);
        std::vector<double> re, im;
        for (std::size_t s = 0; s < n_streams; ++s)
        {
            const Sinusoids synth(sim.seed, s, sim.n_sinusoids, cfg.f_doppler, base.dt);
            auto &out = base.series[s];
            out.resize(n);
            for (std::size_t b = 0; b < block_count(n); ++b)
            {
                const std::size_t start = b * block_len;
                synth.fill_block(b, std::min(block_len, n - start), out.data() + start, re, im);
            }
        }
        return base;
    }

    std::vector<EnvelopeSeries> assemble_port_envelopes(const FasConfig &cfg, const CorrelationProfile &profile,
                                                        const BaseProcesses &base)
    {
        check_profile(cfg, profile);
        if (base.series.size() != 2 * (cfg.n_ports + 1))
            throw ConfigError("base processes do not match n_ports");
        const std::size_t n = base.x(0).size();
        for (const auto &s : base.series)
            if (s.size() != n)
                throw ConfigError("base processes have unequal lengths");

        const double sigma = cfg.sigma();
        const auto &x0 = base.x(0);
        const auto &y0 = base.y(0);
        std::vector<EnvelopeSeries> ports(cfg.n_ports);
        for (std::size_t p = 0; p < cfg.n_ports; ++p)
        {
            // Port 1 is the reference: c = 1 on x_0 and no separate component.
            const double mu = p == 0 ? 1.0 : profile.mu[p];
            const double c = std::sqrt(1.0 - mu * mu);
            const auto &xk = base.x(p + 1);
            const auto &yk = base.y(p + 1);
            ports[p].dt = base.dt;
            ports[p].samples.resize(n);
            for (std::size_t i = 0; i < n; ++i)
                ports[p].samples[i] = port_envelope(sigma, c, mu, xk[i], yk[i], x0[i], y0[i]);
        }
        return ports;
    }

    EnvelopeSeries fas_select(const std::vector<EnvelopeSeries> &ports)
    {
        if (ports.empty())
            throw ConfigError("fas_select needs at least one port");
        EnvelopeSeries out = ports.front();
        for (std::size_t p = 1; p < ports.size(); ++p)
        {
            if (ports[p].samples.size() != out.samples.size() || ports[p].dt != out.dt)
                throw ConfigError("port series differ in length or dt");
            for (std::size_t i = 0; i < out.samples.size(); ++i)
                if (ports[p].samples[i] > out.samples[i])
                    out.samples[i] = ports[p].samples[i];
        }
        return out;
    }

    LcrEstimate count_crossings(const EnvelopeSeries &series, double x_th, double f_doppler)
    {
        check_series(series);
        check_threshold(x_th);
        const auto c = count_down(series.samples.data(), series.samples.size(), x_th);
        return make_estimate(x_th, c, series.duration(), f_doppler);
    }

    std::uint64_t count_upward_crossings(const EnvelopeSeries &series, double x_th)
    {
        check_series(series);
        check_threshold(x_th);
        std::uint64_t c = 0;
        const auto &r = series.samples;
        for (std::size_t i = 0; i + 1 < r.size(); ++i)
            c += (r[i] < x_th && r[i + 1] >= x_th) ? 1 : 0;
        return c;
    }

    std::vector<LcrEstimate> estimate_lcr(const FasConfig &cfg, const SimParams &sim,
                                          const std::vector<double> &thresholds, std::size_t threads)
    {
        cfg.validate();
        sim.validate(cfg);
        for (double x : thresholds)
            check_threshold(x);
        const std::size_t n = sim.n_samples();
        if (n < 2)
            throw ConfigError("simulation must produce at least 2 samples");

        const CorrelationProfile profile = correlation_profile(cfg);
        check_profile(cfg, profile);
        const double sigma = cfg.sigma();
        const double dt = sim.dt();

        // x_1 and y_1 do not enter any port and are skipped.
        std::vector<Sinusoids> synth;
        synth.reserve(2 * cfg.n_ports);
        synth.emplace_back(sim.seed, 0, sim.n_sinusoids, cfg.f_doppler, dt);
        synth.emplace_back(sim.seed, 1, sim.n_sinusoids, cfg.f_doppler, dt);
        for (std::size_t k = 2; k <= cfg.n_ports; ++k)
        {
            synth.emplace_back(sim.seed, 2 * k, sim.n_sinusoids, cfg.f_doppler, dt);
            synth.emplace_back(sim.seed, 2 * k + 1, sim.n_sinusoids, cfg.f_doppler, dt);
        }

        const std::size_t n_blocks = block_count(n);
        std::vector<std::uint64_t> counts(n_blocks * thresholds.size(), 0);
        std::atomic<std::size_t> next{0};

        auto worker = [&]
        {
            std::vector<double> x0, y0, xk, yk, sel, re, im;
            for (std::size_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1))
            {
                const std::size_t m = fill_with_overlap(synth[0], b, n, x0, re, im);
                fill_with_overlap(synth[1], b, n, y0, re, im);
                sel.resize(m);
                for (std::size_t j = 0; j < m; ++j)
                    sel[j] = port_envelope(sigma, 0.0, 1.0, 0.0, 0.0, x0[j], y0[j]);
                for (std::size_t p = 1; p < cfg.n_ports; ++p)
                {
                    const double mu = profile.mu[p];
                    const double c = std::sqrt(1.0 - mu * mu);
                    fill_with_overlap(synth[2 * p], b, n, xk, re, im);
                    fill_with_overlap(synth[2 * p + 1], b, n, yk, re, im);
                    for (std::size_t j = 0; j < m; ++j)
                    {
                        const double env = port_envelope(sigma, c, mu, xk[j], yk[j], x0[j], y0[j]);
                        if (env > sel[j])
                            sel[j] = env;
                    }
                }
                for (std::size_t t = 0; t < thresholds.size(); ++t)
                    counts[b * thresholds.size() + t] = count_down(sel.data(), m, thresholds[t]);
            }
        };

        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());
        threads = std::min(threads, n_blocks);
        std::vector<std::jthread> pool;
        for (std::size_t i = 1; i < threads; ++i)
            pool.emplace_back(worker);
        worker();
        pool.clear();

        const double duration = static_cast<double>(n) * dt;
        std::vector<LcrEstimate> out;
        out.reserve(thresholds.size());
        for (std::size_t t = 0; t < thresholds.size(); ++t)
        {
            std::uint64_t c = 0;
            for (std::size_t b = 0; b < n_blocks; ++b)
                c += counts[b * thresholds.size() + t];
            out.push_back(make_estimate(thresholds[t], c, duration, cfg.f_doppler));
        }
        return out;
    }

    double slope_moment_check(const EnvelopeSeries &series)
    {
        check_series(series);
        const auto &r = series.samples;
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < r.size(); ++i)
            sum += std::max(r[i + 1] - r[i], 0.0);
        return sum / (series.dt * static_cast<double>(r.size() - 1));
    }
}
