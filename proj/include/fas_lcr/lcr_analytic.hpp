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

#ifndef FAS_LCR_LCR_ANALYTIC_HPP
#define FAS_LCR_LCR_ANALYTIC_HPP

#include "fas_lcr/channel_model.hpp"
#include "fas_lcr/quadrature.hpp"
#include "fas_lcr/specfun.hpp"

#include <cstddef>

// Analytic level crossing rates of an N-port fluid antenna system.
//
// All rates are in crossings per second and scale linearly with f_doppler;
// divide by cfg.f_doppler for the normalized LCR. Thresholds are envelope
// amplitudes in the same linear units as sigma.

namespace fas
{
    // Truncation of the two-port series. The term budget is large because at
    // mu -> 1 the significant terms sit near k ~ x_th² / (sigma² (1 - mu²)).
    inline specfun::Tolerance default_series_tolerance() { return {1e-12, 200000}; }

    // Exact N-port LCR. The inner integral of each selected-port term is
    // evaluated adaptively with the exponential factors fused into one
    // nonpositive exponent times the scaled I0.
    //
    // An all-identical profile (every mu_k ~ 1) is routed to lcr_identical; a
    // profile with only some singular ports throws SingularityError.
    double lcr_theorem1(const FasConfig &cfg, const CorrelationProfile &profile, double x_th,
                        const QuadratureSpec &quad = {}, const specfun::Tolerance &tol = {});

    // Uncorrelated ports; identical to i.i.d. selection combining.
    double lcr_iid(const FasConfig &cfg, double x_th);

    // All ports identical; independent of N.
    double lcr_identical(const FasConfig &cfg, double x_th);

    // Two-port LCR via the incomplete-gamma series in the correlation mu.
    double lcr_two_port_series(const FasConfig &cfg, double mu, double x_th,
                               const specfun::Tolerance &tol = default_series_tolerance());

    /// Product over ports k = 2..N, k != skip_index (1-based), of
    /// 1 - Q1(sqrt(2 mu_k² / s_k) x1, sqrt(2 / s_k) x_th), s_k = sigma² (1 - mu_k²):
    /// the probability that every other port stays below x_th given port 1 is at x1.
    /// skip_index = 1 skips nothing.
    double surviving_product(const CorrelationProfile &profile, double sigma2, double x1, double x_th,
                             std::size_t skip_index, const specfun::Tolerance &tol = {});

    // Threshold conversions relative to the RMS envelope sigma.
    double threshold_from_db(double sigma, double db);
    double threshold_to_db(double sigma, double x_th);
}

#endif
