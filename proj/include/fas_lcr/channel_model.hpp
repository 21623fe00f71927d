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

#ifndef FAS_LCR_CHANNEL_MODEL_HPP
#define FAS_LCR_CHANNEL_MODEL_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace fas
{
    // Largest aperture (in wavelengths) for which 2 pi W stays below the first
    // zero of J0, so every port correlation is nonnegative.
    inline constexpr double max_admissible_aperture = 0.38;

    // |mu| at or above 1 - singular_mu_margin is treated as identical channels.
    inline constexpr double singular_mu_margin = 1e-9;

    struct FasConfig
    {
        std::size_t n_ports = 1;  // N
        double aperture = 0.0;    // W, linear span in wavelengths
        double sigma2 = 1.0;      // E[|h_k|²]
        double f_doppler = 1.0;   // maximum Doppler frequency [Hz]

        // Throws ConfigError naming the offending field.
        void validate() const;

        // Out-of-range apertures are usable but flagged.
        bool in_range() const { return aperture >= 0.0 && aperture <= max_admissible_aperture; }

        double sigma() const;
    };

    // Spatial correlation of each port with port 1; mu[0] == 0 by convention.
    struct CorrelationProfile
    {
        std::vector<double> mu;

        std::size_t size() const { return mu.size(); }

        // True when every port k >= 2 is singular (co-located with port 1).
        bool all_identical() const;

        // True when at least one port k >= 2 is singular.
        bool any_singular() const;
    };

    bool is_singular(double mu);

    // mu_k = J0(2 pi (k-1) W / (N-1)) for k = 2..N; [0] for a single port.
    CorrelationProfile correlation_profile(const FasConfig &cfg);

    // Joint density of the N port envelopes at `point` (x_1..x_N). Evaluated in
    // log space with the scaled I0 so that correlations near one do not overflow.
    // Throws SingularityError if any mu_k is singular.
    double joint_pdf(const FasConfig &cfg, const CorrelationProfile &profile, std::span<const double> point);

    // Two-port specialization of joint_pdf; symmetric in (x1, x2).
    double bivariate_pdf(double sigma2, double mu, double x1, double x2);
}

#endif
