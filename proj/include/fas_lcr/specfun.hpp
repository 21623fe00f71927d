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

#ifndef FAS_LCR_SPECFUN_HPP
#define FAS_LCR_SPECFUN_HPP

#include <cstddef>

// Special-function kernel for the LCR analysis.
//
// Every routine here is a pure function and safe to call concurrently.
// Arguments outside the domain throw fas::DomainError; series that exhaust
// their term budget throw fas::AccuracyError carrying the partial sum.

namespace fas::specfun
{
    // Truncation control for the Marcum-Q series.
    struct Tolerance
    {
        double rel_eps = 1e-12;
        std::size_t max_terms = 100000;

        // Throws ConfigError unless 0 < rel_eps < 1 and max_terms >= 1.
        void validate() const;
    };

    // Bessel function of the first kind, order zero.
    double bessel_j0(double x);

    // e^{-|x|} I0(x). Lies in (0, 1] and decreases in |x|.
    double bessel_i0_scaled(double x);

    // First-order Marcum Q-function Q1(a, b), a, b >= 0.
    //
    // Evaluated as the Poisson mixture
    //     Q1(a, b) = sum_k e^{-a²/2} (a²/2)^k / k! * Q(k+1, b²/2)
    // with Q the regularized upper incomplete gamma function. The sum starts
    // at the lower edge of the Poisson window and runs upward, so large
    // arguments (a²/2 in the thousands) do not underflow.
    double marcum_q1(double a, double b, const Tolerance &tol = {});

    // 1 - Q1(a, b), summed directly as sum_k w_k P(k+1, b²/2) so that it keeps
    // full relative precision when Q1 is close to one.
    double marcum_p1(double a, double b, const Tolerance &tol = {});

    // Regularized incomplete gamma functions at integer order n >= 1.
    double gamma_p_int(unsigned n, double x);
    double gamma_q_int(unsigned n, double x);
    double log_gamma_p_int(unsigned n, double x);
    double log_gamma_q_int(unsigned n, double x);

    // Lower incomplete gamma gamma(k+1, x) = k! (1 - e^{-x} sum_{j<=k} x^j/j!).
    double lower_gamma_int(unsigned k, double x);
}

#endif
