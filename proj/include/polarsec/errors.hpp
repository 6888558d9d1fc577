// SPDX-License-Identifier: Apache-2.0
//
// polarsec: joint transmit beamforming and polarforming for secure links
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

#pragma once

#include <stdexcept>
#include <string>

namespace polarsec {

/// Raised when a caller breaks a documented precondition (shape, range, finiteness).
class ContractViolation : public std::invalid_argument {
public:
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// Cholesky or eigen factorization failed on input that was supposed to be definite.
class FactorizationError : public std::runtime_error {
public:
    explicit FactorizationError(const std::string& what) : std::runtime_error(what) {}
};

/// Base for every numerical-solver failure; the CLI maps these to exit code 3.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

class NonConvergenceError : public SolverError {
public:
    NonConvergenceError(const std::string& what, int iterations, double gap, double residual)
        : SolverError(what), iterations_(iterations), gap_(gap), residual_(residual) {}

    int iterations() const noexcept { return iterations_; }
    double last_gap() const noexcept { return gap_; }
    double last_residual() const noexcept { return residual_; }

private:
    int iterations_;
    double gap_;
    double residual_;
};

class InfeasibleError : public SolverError {
public:
    explicit InfeasibleError(const std::string& what) : SolverError(what) {}
};

class DegenerateSolutionError : public SolverError {
public:
    explicit DegenerateSolutionError(const std::string& what) : SolverError(what) {}
};

/// Malformed configuration file or override; the CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polarsec
