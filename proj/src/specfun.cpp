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

#include "fas_lcr/specfun.hpp"
#include "fas_lcr/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fas::specfun
{
    namespace
    {
        constexpr double neg_inf = -std::numeric_limits<double>::infinity();

        // Beyond this, J0 switches from the power series to Hankel's expansion.
        constexpr double j0_series_limit = 12.0;

        // Beyond this, the scaled I0 switches to its large-argument expansion.
        constexpr double i0_series_limit = 30.0;

        constexpr std::size_t gamma_max_iterations = 10'000'000;

        void require_finite(double x, const char *what)
        {
            if (!std::isfinite(x))
                throw DomainError(std::string(what) + ": argument must be finite");
        }

        void require_nonnegative(double x, const char *what)
        {
            require_finite(x, what);
            if (x < 0.0)
                throw DomainError(std::string(what) + ": argument must be nonnegative");
        }

        double log_poisson(double k, double lambda)
        {
            return -lambda + k * std::log(lambda) - std::lgamma(k + 1.0);
        }

        // log(r / (1 - r)) for 0 < r < 1; the geometric bound on a log-concave tail.
        double log_geometric_tail(double r)
        {
            return std::log(r) - std::log1p(-r);
        }

        // Series for P(a, x), valid and fast for x < a + 1.
        double log_gamma_p_series(double a, double x)
        {
            double ap = a;
            double del = 1.0 / a;
            double sum = del;
            for (std::size_t i = 0; i < gamma_max_iterations; ++i)
            {
                ap += 1.0;
                del *= x / ap;
                sum += del;
                if (del < sum * 1e-17)
                    return -x + a * std::log(x) - std::lgamma(a) + std::log(sum);
            }
            throw AccuracyError("incomplete gamma series did not converge",
                                std::exp(-x + a * std::log(x) - std::lgamma(a) + std::log(sum)));
        }

        // Continued fraction for Q(a, x) (modified Lentz), valid for x >= a + 1.
        double log_gamma_q_fraction(double a, double x)
        {
            constexpr double tiny = 1e-300;
            double b = x + 1.0 - a;
            double c = 1.0 / tiny;
            double d = 1.0 / b;
            double h = d;
            for (std::size_t i = 1; i < gamma_max_iterations; ++i)
            {
                const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
                b += 2.0;
                d = an * d + b;
                if (std::abs(d) < tiny)
                    d = tiny;
                c = b + an / c;
                if (std::abs(c) < tiny)
                    c = tiny;
                d = 1.0 / d;
                const double del = d * c;
                h *= del;
                if (std::abs(del - 1.0) < 1e-16)
                    return -x + a * std::log(x) - std::lgamma(a) + std::log(h);
            }
            throw AccuracyError("incomplete gamma continued fraction did not converge",
                                std::exp(-x + a * std::log(x) - std::lgamma(a) + std::log(h)));
        }

        struct LogGammaPair
        {
            double log_p;
            double log_q;
        };

        LogGammaPair log_gamma_pq(unsigned n, double x)
        {
            if (n == 0)
                throw DomainError("incomplete gamma: order must be >= 1");
            require_nonnegative(x, "incomplete gamma");
            if (x == 0.0)
                return {neg_inf, 0.0};
            if (n == 1)
                return {std::log(-std::expm1(-x)), -x};

            const double a = static_cast<double>(n);
            if (x < a + 1.0)
            {
                const double lp = log_gamma_p_series(a, x);
                return {lp, std::log1p(-std::exp(lp))};
            }
            const double lq = log_gamma_q_fraction(a, x);
            return {std::log1p(-std::exp(lq)), lq};
        }

        void check_marcum_args(double a, double b)
        {
            require_nonnegative(a, "marcum_q1 (a)");
            require_nonnegative(b, "marcum_q1 (b)");
        }

        // Edges of the Poisson(lambda) window outside of which the weight mass is
        // below exp(log_cut). Both tails are log-concave, so r/(1-r) times the
        // edge weight bounds the mass beyond it.
        double upper_window_edge(double lambda, double log_cut)
        {
            const double mode = std::floor(lambda);
            auto outside = [&](double k) {
                const double r = lambda / (k + 1.0);
                return r < 1.0 && log_poisson(k, lambda) + log_geometric_tail(r) <= log_cut;
            };
            if (outside(mode))
                return mode;
            double lo = mode, step = std::max(1.0, std::ceil(std::sqrt(lambda)));
            double hi = mode + step;
            while (!outside(hi))
            {
                lo = hi;
                step *= 2.0;
                hi = mode + step;
            }
            while (hi - lo > 1.0)
            {
                const double mid = std::floor(0.5 * (lo + hi));
                (outside(mid) ? hi : lo) = mid;
            }
            return hi;
        }

        double lower_window_edge(double lambda, double log_cut)
        {
            const double mode = std::floor(lambda);
            auto outside = [&](double k) {
                const double r = k / lambda;
                return k <= 0.0 || (r < 1.0 && log_poisson(k, lambda) + log_geometric_tail(r) <= log_cut);
            };
            if (outside(mode))
                return mode;
            double lo = mode, step = std::max(1.0, std::ceil(std::sqrt(lambda)));
            double hi = std::max(0.0, mode - step);
            while (!outside(hi))
            {
                lo = hi;
                step *= 2.0;
                hi = std::max(0.0, mode - step);
            }
            while (lo - hi > 1.0)
            {
                const double mid = std::ceil(0.5 * (lo + hi));
                (outside(mid) ? hi : lo) = mid;
            }
            return hi;
        }

        // Values inside the summation loops are kept relative to exp(log_scale)
        // and renormalized before they can overflow.
        constexpr double rescale_limit = 1e250;
        const double log_rescale = std::log(rescale_limit);

        // sum_k w_k Q(k+1, y), w_k = Poisson(k; lambda), accurate relative to its
        // own value. Q(k+1, y) grows with k, so the lower weight tail bounds the
        // truncation and the sum runs upward. Requires b > 0.
        double q_series(double a, double b, const Tolerance &tol)
        {
            const double lambda = 0.5 * a * a;
            const double y = 0.5 * b * b;
            if (lambda == 0.0)
                return std::exp(-y);

            const double mode = std::floor(lambda);
            double k = lower_window_edge(lambda, log_poisson(mode, lambda) + std::log(0.01 * tol.rel_eps));

            // t_k = w_k Q(k+1, y) and d_k = w_k e^{-y} y^{k+1}/(k+1)! obey
            //   t_{k+1} = lambda/(k+1) (t_k + d_k),  d_{k+1} = d_k lambda y / ((k+1)(k+2)),
            // so both stay on the scale of the terms themselves.
            const double log_q0 = log_gamma_q_int(static_cast<unsigned>(k) + 1, y);
            double log_scale = log_poisson(k, lambda) + log_q0;
            double t = 1.0;
            double d = std::exp(log_poisson(k + 1.0, y) - log_q0);
            double sum = 0.0, prev = 0.0;

            for (std::size_t terms = 0;; ++terms)
            {
                if (terms >= tol.max_terms)
                    throw AccuracyError("marcum series (upper) exceeded max_terms",
                                        std::min(1.0, std::exp(log_scale + std::log(sum))));
                sum += t;
                if (terms > 0 && k > mode)
                {
                    const double r = t / prev;
                    if (t == 0.0 || (r < 1.0 && t * r / (1.0 - r) <= tol.rel_eps * sum))
                        break;
                }
                prev = t;
                t = lambda / (k + 1.0) * (t + d);
                d *= lambda * y / ((k + 1.0) * (k + 2.0));
                k += 1.0;
                if (t > rescale_limit)
                {
                    t /= rescale_limit;
                    d /= rescale_limit;
                    sum /= rescale_limit;
                    prev /= rescale_limit;
                    log_scale += log_rescale;
                }
            }
            return std::min(1.0, std::exp(log_scale + std::log(sum)));
        }

        // sum_k w_k P(k+1, y), the complement of q_series. P(k+1, y) shrinks with
        // k, so the upper weight tail bounds the truncation and the sum runs
        // downward, accumulating P without cancellation. Requires b > 0.
        double p_series(double a, double b, const Tolerance &tol)
        {
            const double lambda = 0.5 * a * a;
            const double y = 0.5 * b * b;
            if (lambda == 0.0)
                return -std::expm1(-y);

            const double mode = std::floor(lambda);
            double k = upper_window_edge(lambda, log_poisson(mode, lambda) + std::log(0.01 * tol.rel_eps));

            // t_k = w_k P(k+1, y) and d_k = w_k e^{-y} y^k/k! obey
            //   t_{k-1} = k/lambda (t_k + d_k),  d_{k-1} = d_k k² / (lambda y).
            const double log_p0 = log_gamma_p_int(static_cast<unsigned>(k) + 1, y);
            double log_scale = log_poisson(k, lambda) + log_p0;
            double t = 1.0;
            double d = std::exp(log_poisson(k, y) - log_p0);
            double sum = 0.0, prev = 0.0;

            for (std::size_t terms = 0;; ++terms)
            {
                if (terms >= tol.max_terms)
                    throw AccuracyError("marcum series (lower) exceeded max_terms",
                                        std::min(1.0, std::exp(log_scale + std::log(sum))));
                sum += t;
                if (k == 0.0)
                    break;
                if (terms > 0 && k < mode)
                {
                    const double r = t / prev;
                    if (t == 0.0 || (r < 1.0 && t * r / (1.0 - r) <= tol.rel_eps * sum))
                        break;
                }
                prev = t;
                t = k / lambda * (t + d);
                d *= k * k / (lambda * y);
                k -= 1.0;
                if (t > rescale_limit)
                {
                    t /= rescale_limit;
                    d /= rescale_limit;
                    sum /= rescale_limit;
                    prev /= rescale_limit;
                    log_scale += log_rescale;
                }
            }
            return std::min(1.0, std::exp(log_scale + std::log(sum)));
        }

        // The smaller complement is always the one summed, so its truncation error
        // stays relative to a small number. b² = a² + 2 ln 2 approximates the
        // median of the Rician variable behind Q1.
        bool upper_tail_is_small(double a, double b)
        {
            return b * b > a * a + 2.0 * std::numbers::ln2;
        }
    }

    void Tolerance::validate() const
    {
        if (!(rel_eps > 0.0 && rel_eps < 1.0))
            throw ConfigError("tolerance: rel_eps must lie in (0, 1)");
        if (max_terms < 1)
            throw ConfigError("tolerance: max_terms must be >= 1");
    }

    double bessel_j0(double x)
    {
        require_finite(x, "bessel_j0");
        x = std::abs(x);

        if (x <= j0_series_limit)
        {
            // sum_k (-x²/4)^k / (k!)², all in extended precision to absorb the
            // cancellation between alternating terms.
            const long double q = -0.25L * static_cast<long double>(x) * x;
            long double term = 1.0L;
            long double sum = 1.0L;
            for (int k = 1; k < 200; ++k)
            {
                term *= q / (static_cast<long double>(k) * k);
                sum += term;
                if (std::abs(term) < 1e-22L)
                    break;
            }
            return static_cast<double>(sum);
        }

        // Hankel's expansion, J0(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi),
        // summed until the asymptotic terms stop shrinking.
        const double z = 1.0 / x;
        double p = 1.0, q = 0.0;
        double a = 1.0; // a_k = prod (2j-1)² / (k! 8^k)
        double zk = 1.0;
        double last = std::numeric_limits<double>::infinity();
        for (int k = 1; k < 60; ++k)
        {
            a *= (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k);
            zk *= z;
            const double t = a * zk;
            if (t >= last || t < 1e-17)
                break;
            last = t;
            switch (k % 4)
            {
            case 1: q -= t; break;
            case 2: p -= t; break;
            case 3: q += t; break;
            case 0: p += t; break;
            }
        }
        const double chi = x - 0.25 * std::numbers::pi;
        return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
    }

    double bessel_i0_scaled(double x)
    {
        require_finite(x, "bessel_i0_scaled");
        x = std::abs(x);

        if (x <= i0_series_limit)
        {
            const long double q = 0.25L * static_cast<long double>(x) * x;
            long double term = 1.0L;
            long double sum = 1.0L;
            for (int k = 1; k < 500; ++k)
            {
                term *= q / (static_cast<long double>(k) * k);
                sum += term;
                if (term < sum * 1e-20L)
                    break;
            }
            return static_cast<double>(sum * std::exp(-static_cast<long double>(x)));
        }

        const double z = 1.0 / x;
        double sum = 1.0;
        double t = 1.0;
        for (int k = 1; k < 60; ++k)
        {
            const double next = t * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k) * z;
            if (next >= t || next < 1e-17 * sum)
                break;
            t = next;
            sum += t;
        }
        return sum / std::sqrt(2.0 * std::numbers::pi * x);
    }

    double log_gamma_p_int(unsigned n, double x) { return log_gamma_pq(n, x).log_p; }
    double log_gamma_q_int(unsigned n, double x) { return log_gamma_pq(n, x).log_q; }
    double gamma_p_int(unsigned n, double x) { return std::exp(log_gamma_p_int(n, x)); }
    double gamma_q_int(unsigned n, double x) { return std::exp(log_gamma_q_int(n, x)); }

    double lower_gamma_int(unsigned k, double x)
    {
        require_nonnegative(x, "lower_gamma_int");
        if (x == 0.0)
            return 0.0;
        if (k == 0)
            return -std::expm1(-x);
        return std::exp(std::lgamma(k + 1.0) + log_gamma_p_int(k + 1, x));
    }

    double marcum_q1(double a, double b, const Tolerance &tol)
    {
        check_marcum_args(a, b);
        tol.validate();
        if (b == 0.0)
            return 1.0;
        if (upper_tail_is_small(a, b))
            return q_series(a, b, tol);
        try
        {
            return 1.0 - p_series(a, b, tol);
        }
        catch (const AccuracyError &e)
        {
            throw AccuracyError(e.what(), 1.0 - e.partial_value());
        }
    }

    double marcum_p1(double a, double b, const Tolerance &tol)
    {
        check_marcum_args(a, b);
        tol.validate();
        if (b == 0.0)
            return 0.0;
        if (!upper_tail_is_small(a, b))
            return p_series(a, b, tol);
        try
        {
            return 1.0 - q_series(a, b, tol);
        }
        catch (const AccuracyError &e)
        {
            throw AccuracyError(e.what(), 1.0 - e.partial_value());
        }
    }
}
