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

#ifndef FAS_LCR_QUADRATURE_HPP
#define FAS_LCR_QUADRATURE_HPP

#include <cstddef>
#include <functional>

namespace fas
{
    // Controls the adaptive integration of the LCR inner integral.
    struct QuadratureSpec
    {
        double abs_eps = 1e-12;
        double rel_eps = 1e-9;
        std::size_t max_subdivisions = 200;

        void validate() const;
    };

    struct QuadratureResult
    {
        double value = 0.0;
        double error = 0.0;          // estimated absolute error
        std::size_t subdivisions = 0; // number of panels in the final partition
    };

    // Globally adaptive 15-point Gauss-Kronrod integration of f over [lo, hi].
    // The panel with the largest error estimate is bisected until the total
    // estimate meets max(abs_eps, rel_eps * |value|). Throws AccuracyError with
    // the current estimate when max_subdivisions is reached first.
    QuadratureResult integrate_adaptive(const std::function<double(double)> &f, double lo, double hi,
                                        const QuadratureSpec &spec = {});
}

#endif
