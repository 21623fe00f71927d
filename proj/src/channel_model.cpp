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

#include "fas_lcr/channel_model.hpp"
#include "fas_lcr/error.hpp"
#include "fas_lcr/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fas
{
    namespace
    {
        bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

        // log of the conditional density of port k's envelope given x1:
        // 2 x_k / d * exp(-(x_k² + mu² x1²)/d) I0(2 mu x1 x_k / d), d = sigma²(1 - mu²).
        double log_conditional(double sigma2, double mu, double x1, double xk)
        {
            if (xk == 0.0)
                return -std::numeric_limits<double>::infinity();
            const double m = std::abs(mu);
            const double d = sigma2 * (1.0 - m * m);
            const double v = 2.0 * m * x1 * xk / d;
            const double dev = xk - m * x1;
            return std::log(2.0 * xk / d) - dev * dev / d + std::log(specfun::bessel_i0_scaled(v));
        }

        void check_envelope(double x, const char *what)
        {
            if (!std::isfinite(x) || x < 0.0)
                throw DomainError(std::string(what) + ": envelope values must be finite and nonnegative");
        }
    }

    void FasConfig::validate() const
    {
        if (n_ports < 1)
            throw ConfigError("n_ports must be >= 1");
        if (!std::isfinite(aperture) || aperture < 0.0)
            throw ConfigError("aperture must be finite and >= 0");
        if (!positive_finite(sigma2))
            throw ConfigError("sigma2 must be positive");
        if (!positive_finite(f_doppler))
            throw ConfigError("f_doppler must be positive");
    }

    double FasConfig::sigma() const { return std::sqrt(sigma2); }

    bool is_singular(double mu) { return std::abs(mu) >= 1.0 - singular_mu_margin; }

    bool CorrelationProfile::all_identical() const
    {
        if (mu.size() < 2)
            return false;
        for (std::size_t k = 1; k < mu.size(); ++k)
            if (!is_singular(mu[k]))
                return false;
        return true;
    }

    bool CorrelationProfile::any_singular() const
    {
        for (std::size_t k = 1; k < mu.size(); ++k)
            if (is_singular(mu[k]))
                return true;
        return false;
    }

    CorrelationProfile correlation_profile(const FasConfig &cfg)
    {
        cfg.validate();
        CorrelationProfile profile;
        profile.mu.assign(cfg.n_ports, 0.0);
        const double spacing = cfg.n_ports > 1 ? cfg.aperture / static_cast<double>(cfg.n_ports - 1) : 0.0;
        for (std::size_t k = 1; k < cfg.n_ports; ++k)
            profile.mu[k] = specfun::bessel_j0(2.0 * std::numbers::pi * static_cast<double>(k) * spacing);
        return profile;
    }

    double joint_pdf(const FasConfig &cfg, const CorrelationProfile &profile, std::span<const double> point)
    {
        cfg.validate();
        if (profile.size() != cfg.n_ports || point.size() != cfg.n_ports)
            throw ConfigError("joint_pdf: profile and point must both have n_ports entries");
        for (double x : point)
            check_envelope(x, "joint_pdf");
        if (profile.any_singular())
            throw SingularityError("joint_pdf: a port correlation equals 1; use the identical-channel LCR instead");

        // Port 1 is its own reference (mu_1 = 0), so the same factor covers it.
        const double x1 = point[0];
        double log_p = 0.0;
        for (std::size_t k = 0; k < cfg.n_ports; ++k)
            log_p += log_conditional(cfg.sigma2, k == 0 ? 0.0 : profile.mu[k], x1, point[k]);
        return std::exp(log_p);
    }

    double bivariate_pdf(double sigma2, double mu, double x1, double x2)
    {
        if (!positive_finite(sigma2))
            throw ConfigError("bivariate_pdf: sigma2 must be positive");
        check_envelope(x1, "bivariate_pdf");
        check_envelope(x2, "bivariate_pdf");
        if (!std::isfinite(mu))
            throw DomainError("bivariate_pdf: mu must be finite");
        if (is_singular(mu))
            throw SingularityError("bivariate_pdf: mu must be below 1");
        if (x1 == 0.0 || x2 == 0.0)
            return 0.0;

        const double m = std::abs(mu);
        const double d = sigma2 * (1.0 - m * m);
        const double v = 2.0 * m * x1 * x2 / d;
        // (x1² + x2² - 2 m x1 x2) without cancellation.
        const double gap = (x1 - x2) * (x1 - x2) + 2.0 * (1.0 - m) * x1 * x2;
        const double log_p = std::log(4.0 * x1 * x2 / (sigma2 * d)) - gap / d + std::log(specfun::bessel_i0_scaled(v));
        return std::exp(log_p);
    }
}
