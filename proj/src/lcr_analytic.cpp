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

#include "fas_lcr/lcr_analytic.hpp"
#include "fas_lcr/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace fas
{
    namespace
    {
        const double sqrt_two_pi = std::sqrt(2.0 * std::numbers::pi);

        void check_threshold(double x_th)
        {
            if (!std::isfinite(x_th) || x_th <= 0.0)
                throw DomainError("threshold must be positive and finite");
        }

        // Rayleigh-type crossing factor sqrt(2 pi) f_D (x/sigma) e^{-x²/sigma²}.
        double single_port_rate(const FasConfig &cfg, double x_th)
        {
            const double rho = x_th / cfg.sigma();
            return sqrt_two_pi * cfg.f_doppler * rho * std::exp(-rho * rho);
        }

        double log_add_exp(double a, double b)
        {
            constexpr double neg_inf = -std::numeric_limits<double>::infinity();
            if (a == neg_inf)
                return b;
            if (b == neg_inf)
                return a;
            return std::max(a, b) + std::log1p(std::exp(-std::abs(a - b)));
        }
    }

    double surviving_product(const CorrelationProfile &profile, double sigma2, double x1, double x_th,
                             std::size_t skip_index, const specfun::Tolerance &tol)
    {
        check_threshold(x_th);
        if (!std::isfinite(x1) || x1 < 0.0 || x1 > x_th)
            throw DomainError("surviving_product: x1 must lie in [0, x_th]");
        if (skip_index < 1 || skip_index > profile.size())
            throw ConfigError("surviving_product: skip_index must lie in 1..N");

        double product = 1.0;
        for (std::size_t k = 2; k <= profile.size() && product > 0.0; ++k)
        {
            if (k == skip_index)
                continue;
            const double mu = std::abs(profile.mu[k - 1]);
            if (is_singular(mu))
                throw SingularityError("surviving_product: port correlation equals 1");
            const double scale = std::sqrt(2.0 / (sigma2 * (1.0 - mu * mu)));
            product *= specfun::marcum_p1(mu * scale * x1, scale * x_th, tol);
        }
        return product;
    }

    double lcr_theorem1(const FasConfig &cfg, const CorrelationProfile &profile, double x_th,
                        const QuadratureSpec &quad, const specfun::Tolerance &tol)
    {
        cfg.validate();
        check_threshold(x_th);
        if (profile.size() != cfg.n_ports)
            throw ConfigError("lcr_theorem1: profile length must equal n_ports");
        if (profile.all_identical())
            return lcr_identical(cfg, x_th);
        if (profile.any_singular())
            throw SingularityError("lcr_theorem1: profile mixes identical and distinct ports");

        const double sigma2 = cfg.sigma2;
        const double prefactor = sqrt_two_pi * x_th * cfg.f_doppler / cfg.sigma();

        // Port 1 at the threshold, every other port below it.
        double bracket = std::exp(-x_th * x_th / sigma2) * surviving_product(profile, sigma2, x_th, x_th, 1, tol);

        // Port i at the threshold, port 1 integrated over [0, x_th]. The N - 1
        // integrals share one adaptive partition; every port's P1 is evaluated
        // once per node and the exclusive products come from prefix/suffix runs.
        const std::size_t n = cfg.n_ports;
        std::vector<double> mu(n), s(n), scale(n), kernel(n), p1(n), suffix(n + 1);
        for (std::size_t k = 1; k < n; ++k)
        {
            mu[k] = std::abs(profile.mu[k]);
            s[k] = sigma2 * (1.0 - mu[k] * mu[k]);
            scale[k] = std::sqrt(2.0 / s[k]);
        }

        auto integrand = [&](double x1) {
            bool any = false;
            for (std::size_t k = 1; k < n; ++k)
            {
                // e^{-x_th²/s} e^{-x1²/s} I0(2 mu x_th x1/s) = i0s(v) e^{v - u} with
                // u - v = ((x_th - x1)² + 2 (1 - mu) x_th x1) / s >= 0.
                const double v = 2.0 * mu[k] * x_th * x1 / s[k];
                const double gap = (x_th - x1) * (x_th - x1) + 2.0 * (1.0 - mu[k]) * x_th * x1;
                kernel[k] = specfun::bessel_i0_scaled(v) * std::exp(-gap / s[k]) / (1.0 - mu[k] * mu[k]);
                any = any || kernel[k] != 0.0;
            }
            if (!any)
                return 0.0;
            for (std::size_t k = 1; k < n; ++k)
                p1[k] = specfun::marcum_p1(mu[k] * scale[k] * x1, scale[k] * x_th, tol);
            suffix[n] = 1.0;
            for (std::size_t k = n - 1; k >= 1; --k)
                suffix[k] = suffix[k + 1] * p1[k];
            double sum = 0.0, prefix = 1.0;
            for (std::size_t k = 1; k < n; ++k)
            {
                sum += kernel[k] * prefix * suffix[k + 1];
                prefix *= p1[k];
            }
            return 2.0 * x1 / sigma2 * sum;
        };
        if (n > 1)
            bracket += integrate_adaptive(integrand, 0.0, x_th, quad).value;
        return prefactor * bracket;
    }

    double lcr_iid(const FasConfig &cfg, double x_th)
    {
        cfg.validate();
        check_threshold(x_th);
        const double rho2 = x_th * x_th / cfg.sigma2;
        const double below = -std::expm1(-rho2);
        return static_cast<double>(cfg.n_ports) * single_port_rate(cfg, x_th)
               * std::pow(below, static_cast<double>(cfg.n_ports - 1));
    }

    double lcr_identical(const FasConfig &cfg, double x_th)
    {
        cfg.validate();
        check_threshold(x_th);
        return single_port_rate(cfg, x_th);
    }

    double lcr_two_port_series(const FasConfig &cfg, double mu, double x_th, const specfun::Tolerance &tol)
    {
        cfg.validate();
        check_threshold(x_th);
        tol.validate();
        if (!std::isfinite(mu))
            throw DomainError("lcr_two_port_series: mu must be finite");
        mu = std::abs(mu);
        if (is_singular(mu))
            throw SingularityError("lcr_two_port_series: mu must be below 1; use lcr_identical");

        const double sigma = cfg.sigma();
        const double s = cfg.sigma2 * (1.0 - mu * mu);
        const double y = x_th * x_th / s;
        const double log_prefactor =
            std::log(2.0 * sqrt_two_pi * cfg.f_doppler * x_th / (sigma * sigma * sigma * (1.0 - mu * mu))) - y;

        // Term k: (mu x)^{2k} / ((k!)² s^{k-1}) gamma(k+1, y). Only k = 0 survives at mu = 0.
        if (mu == 0.0)
            return std::exp(log_prefactor + std::log(s) + std::log(-std::expm1(-y)));

        const double log_mux2 = 2.0 * std::log(mu * x_th);
        const double log_s = std::log(s);
        auto log_term_weight = [&](double k) {
            // Everything except the regularized P(k+1, y): gamma = k! P.
            return k * log_mux2 - (k - 1.0) * log_s - std::lgamma(k + 1.0);
        };

        // Term ratios are bounded by lambda / (k+1), lambda = (mu x)² / s, so walk
        // up from floor(lambda) until that geometric tail is negligible, then sum
        // downward where gamma(k+1, y) is accumulated without cancellation.
        const double lambda = std::exp(log_mux2 - log_s);
        const double mode = std::floor(lambda);
        const double log_cut = log_term_weight(mode) + std::log(0.01 * tol.rel_eps);
        double k = mode;
        for (std::size_t steps = 0;; ++steps)
        {
            const double r = lambda / (k + 1.0);
            if (r < 1.0 && log_term_weight(k) + std::log(r) - std::log1p(-r) <= log_cut)
                break;
            if (steps > tol.max_terms)
                throw AccuracyError("lcr_two_port_series: term window exceeded max_terms", 0.0);
            k += 1.0;
        }

        const double log_y = std::log(y);
        double log_p = specfun::log_gamma_p_int(static_cast<unsigned>(k) + 1, y);
        double log_pois = -y + k * log_y - std::lgamma(k + 1.0); // e^{-y} y^k / k!
        double log_sum = -std::numeric_limits<double>::infinity();
        double log_prev = log_sum;
        const double log_eps = std::log(tol.rel_eps);

        for (std::size_t terms = 0;; ++terms)
        {
            if (terms >= tol.max_terms)
                throw AccuracyError("lcr_two_port_series: series exceeded max_terms",
                                    std::exp(log_prefactor + log_sum));
            const double log_t = log_term_weight(k) + log_p;
            log_sum = log_add_exp(log_sum, log_t);
            if (k == 0.0)
                break;
            if (terms > 0 && k < mode && log_t - log_sum < log_eps)
            {
                const double r = std::exp(log_t - log_prev);
                if (r < 1.0 && log_t + std::log(r) - std::log1p(-r) <= log_eps + log_sum)
                    break;
            }
            log_prev = log_t;

            // P(k, y) = P(k+1, y) + e^{-y} y^k / k!
            log_p = std::min(0.0, log_add_exp(log_p, log_pois));
            log_pois += std::log(k) - log_y;
            k -= 1.0;
        }
        return std::exp(log_prefactor + log_sum);
    }

    double threshold_from_db(double sigma, double db) { return sigma * std::pow(10.0, db / 20.0); }

    double threshold_to_db(double sigma, double x_th) { return 20.0 * std::log10(x_th / sigma); }
}
