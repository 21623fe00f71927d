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


#ifndef FAS_LCR_HARNESS_HPP
#define FAS_LCR_HARNESS_HPP

#include "fas_lcr/channel_model.hpp"
#include "fas_lcr/lcr_analytic.hpp"
#include "fas_lcr/mc_simulator.hpp"
#include "fas_lcr/quadrature.hpp"
#include "fas_lcr/specfun.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fas
{
    // Declaration order is the row order within one grid point.
    enum class Method
    {
        theorem1,
        iid,
        identical,
        two_port_series,
        monte_carlo
    };

    std::string_view to_string(Method m);
    Method parse_method(std::string_view name); // throws ConfigError
    bool is_analytic(Method m);

    // Thresholds either as linear amplitudes or in dB relative to sigma.
    struct ThresholdGrid
    {
        std::vector<double> values;
        bool in_db = false;
    };

    struct SweepSpec
    {
        ThresholdGrid thresholds;
        std::vector<std::size_t> n_list;
        std::vector<double> w_list;
        std::vector<Method> methods;
        std::optional<SimParams> sim; // required by monte_carlo
        QuadratureSpec quad;
        specfun::Tolerance tol;                                      // Marcum Q1 in theorem1
        specfun::Tolerance series_tol = default_series_tolerance(); // two_port_series
        std::size_t threads = 0; // 0: hardware concurrency

        // Throws ConfigError naming the offending field. The template supplies
        // sigma2 and f_doppler for the simulation limits.
        void validate(const FasConfig &base) const;
    };

    struct ResultRow
    {
        std::size_t n = 1;
        double w = 0.0;
        double threshold_linear = 0.0;
        double threshold_db = 0.0;
        Method method = Method::theorem1;
        double nlcr = 0.0;
        double raw_rate = 0.0;
        std::optional<std::uint64_t> mc_crossings;
        std::optional<double> mc_duration;

        bool operator==(const ResultRow &) const = default;
    };

    // Rows ordered by (n, w, threshold, method) in the order of the sweep grids;
    // methods are deduplicated and emitted in declaration order. Every grid
    // point uses the same simulation seed.
    std::vector<ResultRow> run_sweep(const SweepSpec &spec, const FasConfig &base);

    struct ComparePoint
    {
        std::size_t n = 1;
        double w = 0.0;
        double threshold_linear = 0.0;
        double reference = 0.0; // NLCR
        double candidate = 0.0; // NLCR
        double rel_error = 0.0; // |candidate - reference| / reference
        bool gated = false;     // reference > gate
    };

    struct CompareSummary
    {
        std::vector<ComparePoint> points;
        std::size_t n_gated = 0;
        double median_rel_error = 0.0; // over gated points
        double max_rel_error = 0.0;    // over gated points

        bool within(double tolerance) const { return median_rel_error <= tolerance; }
    };

    // Pairs candidate rows with reference rows on the same (n, w, threshold).
    // Throws ConfigError when the two grids differ or no point passes the gate.
    CompareSummary compare_methods(const std::vector<ResultRow> &rows, Method reference = Method::theorem1,
                                   Method candidate = Method::monte_carlo, double gate = 0.05);

    inline constexpr std::string_view csv_header =
        "n,w,threshold_linear,threshold_db,method,nlcr,raw_rate,mc_crossings,mc_duration";

    // Shortest round-trip decimals, blank optional fields, LF line endings.
    void emit_csv(const std::vector<ResultRow> &rows, std::ostream &out);
    void emit_csv(const std::vector<ResultRow> &rows, const std::string &path); // throws IoError

    std::vector<ResultRow> parse_csv(std::istream &in); // throws ConfigError
    std::vector<ResultRow> read_csv(const std::string &path); // throws IoError

    // Everything the CLI needs, filled from a key=value file and then flags.
    struct RunConfig
    {
        FasConfig base{1, 0.1, 1.0, 1.0};
        std::vector<std::size_t> n_list{2};
        std::vector<double> w_list{0.1};
        ThresholdGrid thresholds{{0.7071067811865476}, false};
        std::vector<Method> methods{Method::theorem1};
        std::uint64_t seed = 1;
        double duration_cycles = 1e4;
        double sample_rate_mult = 64.0;
        std::size_t n_sinusoids = 64;
        std::size_t threads = 0;
        double tolerance = 0.05;
        std::string out; // empty: standard output

        // Keys are the long flag names without dashes, e.g. "thresholds-db".
        void set(std::string_view key, std::string_view value);

        SweepSpec sweep_spec() const;
    };

    // '#' starts a comment; blank lines are ignored.
    void load_config_file(RunConfig &cfg, const std::string &path);

    // "a,b,c" or "start:stop:count" (inclusive, evenly spaced).
    std::vector<double> parse_real_list(std::string_view text);
    // "a,b,c" or "first:last" (inclusive).
    std::vector<std::size_t> parse_count_list(std::string_view text);
}

#endif
