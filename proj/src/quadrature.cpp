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

#include "fas_lcr/quadrature.hpp"
#include "fas_lcr/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace fas
{
    namespace
    {
        // Kronrod abscissae (descending) and weights; odd indices carry the 7-point Gauss rule.
        constexpr std::array<double, 8> xgk = {
            0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
        constexpr std::array<double, 8> wgk = {
            0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
        constexpr std::array<double, 4> wg = {
            0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
            0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

        struct Panel
        {
            double lo, hi, value, error;
            bool operator<(const Panel &other) const { return error < other.error; }
        };

        Panel gauss_kronrod_15(const std::function<double(double)> &f, double lo, double hi)
        {
            const double center = 0.5 * (lo + hi);
            const double half = 0.5 * (hi - lo);
            const double fc = f(center);
            double kronrod = fc * wgk[7];
            double gauss = fc * wg[3];
            double abs_sum = std::abs(kronrod);
            std::array<double, 7> f1{}, f2{};
            for (int j = 0; j < 7; ++j)
            {
                const double dx = half * xgk[j];
                f1[j] = f(center - dx);
                f2[j] = f(center + dx);
                kronrod += wgk[j] * (f1[j] + f2[j]);
                abs_sum += wgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
                if (j % 2 == 1)
                    gauss += wg[j / 2] * (f1[j] + f2[j]);
            }
            const double mean = 0.5 * kronrod;
            double asc = wgk[7] * std::abs(fc - mean);
            for (int j = 0; j < 7; ++j)
                asc += wgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

            const double value = kronrod * half;
            asc *= std::abs(half);
            double err = std::abs((kronrod - gauss) * half);
            if (asc != 0.0 && err != 0.0)
                err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
            const double round_off = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum * std::abs(half);
            if (round_off > std::numeric_limits<double>::min())
                err = std::max(err, round_off);
            return {lo, hi, value, err};
        }
    }

    void QuadratureSpec::validate() const
    {
        if (!(abs_eps > 0.0 && abs_eps < 1.0) || !(rel_eps > 0.0 && rel_eps < 1.0))
            throw ConfigError("quadrature: tolerances must lie in (0, 1)");
        if (max_subdivisions < 1)
            throw ConfigError("quadrature: max_subdivisions must be >= 1");
    }

    QuadratureResult integrate_adaptive(const std::function<double(double)> &f, double lo, double hi,
                                        const QuadratureSpec &spec)
    {
        spec.validate();
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw DomainError("quadrature: interval bounds must be finite");
        if (lo == hi)
            return {0.0, 0.0, 0};

        std::priority_queue<Panel> panels;
        const Panel first = gauss_kronrod_15(f, lo, hi);
        panels.push(first);
        double value = first.value;
        double error = first.error;

        auto converged = [&] { return error <= std::max(spec.abs_eps, spec.rel_eps * std::abs(value)); };

        while (!converged())
        {
            if (panels.size() >= spec.max_subdivisions)
                throw AccuracyError("quadrature: max_subdivisions reached before tolerance", value);
            const Panel worst = panels.top();
            panels.pop();
            const double mid = 0.5 * (worst.lo + worst.hi);
            const Panel left = gauss_kronrod_15(f, worst.lo, mid);
            const Panel right = gauss_kronrod_15(f, mid, worst.hi);
            value += left.value + right.value - worst.value;
            error += left.error + right.error - worst.error;
            panels.push(left);
            panels.push(right);
        }

        // Re-sum the final partition to shed the drift of incremental updates.
        QuadratureResult result{0.0, 0.0, panels.size()};
        while (!panels.empty())
        {
            result.value += panels.top().value;
            result.error += panels.top().error;
            panels.pop();
        }
        if (!std::isfinite(result.value))
            throw AccuracyError("quadrature: integrand produced a non-finite value", result.value);
        return result;
    }
}
