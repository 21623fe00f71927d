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


#ifndef FAS_LCR_MC_SIMULATOR_HPP
#define FAS_LCR_MC_SIMULATOR_HPP

#include "fas_lcr/channel_model.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

// Monte-Carlo estimation of the FAS level crossing rate.
//
// Every Gaussian component is a sum-of-sinusoids Clarke process. Sample i of a
// stream is a pure function of (seed, stream id, i), so results do not depend
// on how the time axis is split between threads.

namespace fas
{
    struct SimParams
    {
        double sample_rate = 64.0;       // [Hz]
        double duration = 1000.0;        // [s]
        std::size_t n_sinusoids = 64;    // per Gaussian process
        std::uint64_t seed = 1;

        // Throws ConfigError; the limits depend on cfg.f_doppler.
        void validate(const FasConfig &cfg) const;

        // round(duration * sample_rate)
        std::size_t n_samples() const;
        double dt() const { return 1.0 / sample_rate; }
    };

    // Default parameters expressed in Doppler units: duration = cycles / f_D,
    // sample_rate = rate_mult * f_D.
    SimParams make_sim_params(const FasConfig &cfg, double duration_cycles, std::uint64_t seed,
                              double rate_mult = 64.0);

    struct EnvelopeSeries
    {
        std::vector<double> samples;
        double dt = 1.0;

        double duration() const { return static_cast<double>(samples.size()) * dt; }
    };

    struct LcrEstimate
    {
        double threshold = 0.0;
        double rate = 0.0;  // crossings / duration
        double nlcr = 0.0;  // rate / f_doppler
        std::uint64_t crossings = 0;
        double duration = 0.0;

        // Relative standard error under a Poisson count model.
        double rel_stderr() const;
    };

    // x_0..x_N, y_0..y_N, each zero mean with variance 1/2.
    struct BaseProcesses
    {
        std::vector<std::vector<double>> series; // [2k] = x_k, [2k + 1] = y_k
        double dt = 1.0;

        std::size_t n_ports() const { return series.size() / 2 - 1; }
        const std::vector<double> &x(std::size_t k) const { return series[2 * k]; }
        const std::vector<double> &y(std::size_t k) const { return series[2 * k + 1]; }
    };

    // Seed of sub-stream `stream` (splitmix64 of the root seed and the index).
    std::uint64_t substream_seed(std::uint64_t root, std::uint64_t stream);

    BaseProcesses generate_base_processes(const FasConfig &cfg, const SimParams &sim);

    // Port 1 is sigma (x_0 + j y_0); port k >= 2 mixes x_k, y_k with the
    // reference components through mu_k.
    std::vector<EnvelopeSeries> assemble_port_envelopes(const FasConfig &cfg, const CorrelationProfile &profile,
                                                        const BaseProcesses &base);

    // Pointwise maximum; ties go to the lowest port index.
    EnvelopeSeries fas_select(const std::vector<EnvelopeSeries> &ports);

    // Downward crossings: samples[i] >= x_th and samples[i + 1] < x_th.
    // nlcr is rate / f_doppler.
    LcrEstimate count_crossings(const EnvelopeSeries &series, double x_th, double f_doppler = 1.0);

    // Upward crossings: samples[i] < x_th and samples[i + 1] >= x_th.
    std::uint64_t count_upward_crossings(const EnvelopeSeries &series, double x_th);

    // Whole pipeline, streamed in blocks without storing the series. Equal to
    // count_crossings(fas_select(assemble_port_envelopes(...))) sample for
    // sample. threads = 0 uses the hardware concurrency.
    std::vector<LcrEstimate> estimate_lcr(const FasConfig &cfg, const SimParams &sim,
                                          const std::vector<double> &thresholds, std::size_t threads = 0);

    // Mean of max((r[i+1] - r[i]) / dt, 0) over all differences.
    double slope_moment_check(const EnvelopeSeries &series);
}

#endif
