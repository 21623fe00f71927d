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

// Independent reference implementations used only by the test suites.
// None of these share code paths with the library under test.

#ifndef FAS_LCR_TESTS_ORACLES_HPP
#define FAS_LCR_TESTS_ORACLES_HPP

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle
{
    // Truncated power series of J0 with a fixed number of terms.
    inline double j0_series(double x, int terms = 60)
    {
        long double sum = 0.0L, term = 1.0L;
        const long double q = -0.25L * x * x;
        for (int k = 0; k < terms; ++k)
        {
            if (k > 0)
                term *= q / (static_cast<long double>(k) * k);
            sum += term;
        }
        return static_cast<double>(sum);
    }

    // J0(x) = (1/pi) int_0^pi cos(x sin t) dt; the integrand is smooth and
    // periodic, so the trapezoidal rule converges geometrically.
    inline double j0_quadrature(double x, int panels = 4000)
    {
        const double h = std::numbers::pi / panels;
        double sum = 0.5 * (1.0 + std::cos(x * std::sin(std::numbers::pi)));
        for (int i = 1; i < panels; ++i)
            sum += std::cos(x * std::sin(i * h));
        return sum * h / std::numbers::pi;
    }

    // e^{-x} I0(x) = (1/pi) int_0^pi exp(x (cos t - 1)) dt, x >= 0.
    inline double i0_scaled_quadrature(double x, int panels = 20000)
    {
        const double h = std::numbers::pi / panels;
        double sum = 0.5 * (1.0 + std::exp(-2.0 * x));
        for (int i = 1; i < panels; ++i)
            sum += std::exp(x * (std::cos(i * h) - 1.0));
        return sum * h / std::numbers::pi;
    }

    // Marcum Q1(a, b) = int_b^inf x exp(-(x² + a²)/2) I0(a x) dx, using the
    // library-independent Boost I0 and double-exponential quadrature.
    inline double marcum_q1_quadrature(double a, double b)
    {
        auto f = [a](double x) {
            const double ax = a * x;
            const double i0s = ax < 600.0 ? boost::math::cyl_bessel_i(0, ax) * std::exp(-ax)
                                          : 1.0 / std::sqrt(2.0 * std::numbers::pi * ax) * (1.0 + 1.0 / (8.0 * ax));
            return x * std::exp(-0.5 * (x - a) * (x - a)) * i0s;
        };
        boost::math::quadrature::exp_sinh<double> integrator;
        return integrator.integrate([&](double t) { return f(b + t); }, 1e-13);
    }

    // gamma(k+1, x) = int_0^x t^k e^{-t} dt.
    inline double lower_gamma_quadrature(unsigned k, double x)
    {
        auto f = [k](double t) { return std::pow(t, static_cast<double>(k)) * std::exp(-t); };
        return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, x, 15, 1e-14);
    }

    // Generic adaptive 1-D integral on a finite interval.
    inline double integrate(const std::function<double(double)> &f, double lo, double hi, double tol = 1e-13)
    {
        return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 20, tol);
    }

    // Direct evaluation of the two-port envelope density with Boost's I0.
    inline double bivariate_pdf_direct(double sigma2, double mu, double x1, double x2)
    {
        const double d = sigma2 * (1.0 - mu * mu);
        const double v = 2.0 * mu * x1 * x2 / d;
        const double i0s = v < 600.0 ? boost::math::cyl_bessel_i(0, v) * std::exp(-v)
                                     : 1.0 / std::sqrt(2.0 * std::numbers::pi * v);
        return 4.0 * x1 * x2 / (sigma2 * d) * std::exp(-(x1 * x1 + x2 * x2) / d + v) * i0s;
    }

    // Classical single-branch Rayleigh LCR, sqrt(2 pi) f_D rho e^{-rho²}.
    inline double rayleigh_lcr(double sigma, double fd, double x)
    {
        const double rho = x / sigma;
        return std::sqrt(2.0 * std::numbers::pi) * fd * rho * std::exp(-rho * rho);
    }
}

#endif
