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

#ifndef FAS_LCR_ERROR_HPP
#define FAS_LCR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fas
{
    // Invalid configuration or argument shape (CLI exit code 2).
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Argument outside the mathematical domain of a function (negative, NaN, ...).
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // A series or quadrature hit its iteration cap before meeting its tolerance.
    // The best available estimate is kept so callers may still inspect it.
    class AccuracyError : public std::runtime_error
    {
    public:
        AccuracyError(const std::string &what, double partial_value)
            : std::runtime_error(what), partial_(partial_value) {}

        double partial_value() const noexcept { return partial_; }

    private:
        double partial_;
    };

    // A correlation coefficient reached 1 where the density is singular.
    class SingularityError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    class IoError : public std::runtime_error
    {
    public:
        IoError(const std::string &what, std::string path)
            : std::runtime_error(what + ": " + path), path_(std::move(path)) {}

        const std::string &path() const noexcept { return path_; }

    private:
        std::string path_;
    };
}

#endif
