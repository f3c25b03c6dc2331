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

#include <array>

#include "qtomo/qubit.hpp"
#include "qtomo/quadrature.hpp"

/// One-meter estimation of s_z: the system controls a phase e^{-i theta} on a
/// meter prepared in |+>, and the meter is read out in the x basis.
namespace qtomo::single {

/// Outcome probabilities (P0, P1) for meter outcomes (+, -).
std::array<double, 2> probabilities(const PureState &psi, double theta);

/// s_z = csc^2(theta/2) (P0 - P1 - cos^2(theta/2)).
/// Throws NonInformativeCoupling when sin^2(theta/2) < 1e-12 and
/// ValidationError when P0 + P1 differs from 1 by more than 1e-9.
double estimate_sz(double p0, double p1, double theta);

/// F^{-1} = 4 P0 P1 / sin^4(theta/2).
double fisher_inverse(const PureState &psi, double theta);

/// Angle form 4 sin^2(a1) (csc^2(theta/2) - sin^2(a1)); independent of a2.
double fisher_inverse_angles(double alpha1, double theta);

/// Average of F^{-1} over pure states, (2/3)(2 + cos theta) csc^2(theta/2).
ErrorFigure qttf(double theta);

/// Average of F^{-1} by quadrature (the numerical route to `qttf`).
ErrorFigure qttf_quadrature(double theta, const QuadratureRule &rule);

/// Largest F^{-1} over initial states at fixed theta in (0, pi]:
/// 4(csc^2(theta/2) - 1) for theta <= pi/2, csc^4(theta/2) above.
ErrorFigure max_error(double theta);

/// Mean of F^{-1} over the six Pauli eigenstates.
double two_design_average(double theta);

/// True when sin^2(theta/2) is below the information floor.
bool is_non_informative(double theta);

}  // namespace qtomo::single
