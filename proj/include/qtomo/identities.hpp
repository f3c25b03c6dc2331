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

#include <cstdint>
#include <string>
#include <vector>

namespace qtomo {

struct IdentityCheck {
    std::string name;
    int cases = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;

    bool passed() const { return max_deviation <= tolerance; }
};

struct IdentityReport {
    std::uint64_t seed = 0;
    std::vector<IdentityCheck> checks;

    bool all_passed() const;
    const IdentityCheck &check(const std::string &name) const;
};

enum class Fault {
    kNone,
    /// Perturb one transfer-matrix entry before comparing with simulation.
    kCorruptTransfer,
};

/// Runs every structural identity of the library on random cases drawn from
/// `seed`: coefficient forms, transfer matrix against simulation, probability
/// normalization, unitarity, Fisher symmetry and positivity, the two Fisher
/// assemblies, linear-inversion round trip, R rho R monotonicity and
/// physicality, the Bernoulli and sample-variance identities, the
/// single-outcome variance identity, and Pauli-eigenstate averages.
IdentityReport run_identity_suite(std::uint64_t seed, Fault fault = Fault::kNone);

}  // namespace qtomo
