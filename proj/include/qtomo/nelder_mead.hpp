// Copyright 2026 The qtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qtomo {

struct NelderMeadOptions {
    /// Simplex diameter tolerance (max abs vertex offset from the best vertex).
    double xatol = 1e-6;
    /// Function spread tolerance across the simplex.
    double fatol = 1e-6;
    int max_iterations = 2000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double fval;
    int iterations;
    int evaluations;
    bool converged;
};

using Objective = std::function<double(std::span<const double>)>;

/// Downhill simplex minimization with the standard reflection (1),
/// expansion (2), contraction (1/2) and shrink (1/2) coefficients. The
/// initial simplex perturbs each coordinate by 5% (0.00025 when zero).
/// NaN objective values are treated as +inf.
NelderMeadResult nelder_mead(const Objective &f, std::vector<double> x0,
                             const NelderMeadOptions &opts = {});

}  // namespace qtomo
