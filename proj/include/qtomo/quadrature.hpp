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
#include <vector>

#include "qtomo/common.hpp"

namespace qtomo {

/// One node of a pure-state quadrature rule.
struct QuadratureNode {
    double alpha1;
    double alpha2;
    double weight;
};

/// Product rule for averages over qubit pure states with the measure
/// (1/pi) sin(2 a1) da1 da2 on [0, pi/2] x [0, pi].
///
/// Gauss-Legendre in a1 (the sin(2 a1) factor folded into the weights) times
/// the composite midpoint rule in a2. The weights sum to one.
class QuadratureRule {
public:
    QuadratureRule(int n1, int n2, std::vector<QuadratureNode> nodes)
        : n1_(n1), n2_(n2), nodes_(std::move(nodes)) {}

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    const std::vector<QuadratureNode> &nodes() const { return nodes_; }

    double integrate(const std::function<double(double, double)> &f) const;

private:
    int n1_;
    int n2_;
    std::vector<QuadratureNode> nodes_;
};

inline constexpr int kDefaultQuadratureOrder = 64;

/// n1, n2 >= 2.
QuadratureRule make_quadrature(int n1 = kDefaultQuadratureOrder, int n2 = kDefaultQuadratureOrder);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double> &nodes, std::vector<double> &weights);

}  // namespace qtomo
