// Copyright 2026 The loqc Authors
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

#include "loqc/targets.hpp"

#include <stdexcept>

namespace loqc {

int LogicalBasis::index_of(const FockBasisState& s) const {
    for (int i = 0; i < dimension(); ++i)
        if (fock[i] == s) return i;
    return -1;
}

CMat ContractionMap::rescaled() const {
    if (rescale_base == 1.0 || rescale_base < 1e-12) return matrix;
    CMat out = matrix;
    for (int i = 0; i < dimension(); ++i)
        out.col(i) *= std::pow(rescale_base, -photons[i]);
    return out;
}

LogicalBasis quad_rail_basis() {
    LogicalBasis b;
    b.mode_roles = {"H_A", "V_A", "HL_A1", "HR_A1", "VL_A1", "VR_A1"};
    // Invariant states first, sign-flipped states (V.VL, V.VR) last.
    struct Row {
        const char* label;
        int a_mode;   // photon A: H_A or V_A
        int a1_mode;  // photon A1: one of the four A1 modes
    };
    const Row rows[] = {
        {"H.HL", 0, 2}, {"H.HR", 0, 3}, {"H.VL", 0, 4}, {"H.VR", 0, 5},
        {"V.HL", 1, 2}, {"V.HR", 1, 3}, {"V.VL", 1, 4}, {"V.VR", 1, 5},
    };
    for (const Row& r : rows) {
        std::vector<int> occ(6, 0);
        occ[r.a_mode] = 1;
        occ[r.a1_mode] = 1;
        b.labels.emplace_back(r.label);
        b.fock.emplace_back(occ);
    }
    return b;
}

LogicalBasis reduced_sector_basis() {
    LogicalBasis b;
    b.mode_roles = {"V_A", "VR_A1", "VL_A1"};
    struct Row {
        const char* label;
        std::vector<int> occ;
    };
    const Row rows[] = {
        {"0.-", {0, 0, 0}}, {"0.R", {0, 1, 0}}, {"0.L", {0, 0, 1}},
        {"1.-", {1, 0, 0}}, {"1.R", {1, 1, 0}}, {"1.L", {1, 0, 1}},
    };
    for (const Row& r : rows) {
        b.labels.emplace_back(r.label);
        b.fock.emplace_back(r.occ);
    }
    return b;
}

TargetGate target_csign() {
    TargetGate g;
    g.basis = quad_rail_basis();
    CVec diag(8);
    diag << 1, 1, 1, 1, 1, 1, -1, -1;
    g.matrix = diag.asDiagonal();
    return g;
}

TargetGate reduced_csign() {
    TargetGate g;
    g.basis = reduced_sector_basis();
    CVec diag(6);
    // Sign flips exactly when the V_A photon coexists with an A1 V-photon.
    diag << 1, 1, 1, 1, -1, -1;
    g.matrix = diag.asDiagonal();
    return g;
}

namespace {

struct FullStateRouting {
    std::array<int, 3> spectators;  // occupations of (H_A, HL_A1, HR_A1)
    int reduced_index;              // active content in the reduced basis
};

FullStateRouting route_full_state(const FockBasisState& s, const LogicalBasis& reduced) {
    FullStateRouting r;
    r.spectators = {s[0], s[2], s[3]};
    // Active modes in reduced order (V_A, VR_A1, VL_A1) = full modes (1, 5, 4).
    const FockBasisState active({s[1], s[5], s[4]});
    r.reduced_index = reduced.index_of(active);
    if (r.reduced_index < 0)
        throw std::invalid_argument("lift_reduced_to_full: state outside the reduced sector");
    return r;
}

}  // namespace

ContractionMap lift_reduced_to_full(const ContractionMap& reduced, const SpectatorPhases& phases) {
    if (reduced.dimension() != 6)
        throw std::invalid_argument("lift_reduced_to_full: expected a 6-state reduced map");
    ContractionMap full;
    full.basis = quad_rail_basis();
    full.rescale_base = reduced.rescale_base;
    full.matrix = CMat::Zero(8, 8);
    full.photons.resize(8);

    std::vector<FullStateRouting> routing;
    routing.reserve(8);
    const LogicalBasis red = reduced_sector_basis();
    for (const FockBasisState& s : full.basis.fock) routing.push_back(route_full_state(s, red));

    for (int i = 0; i < 8; ++i)
        full.photons[i] = reduced.photons[routing[i].reduced_index];

    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) {
            if (routing[i].spectators != routing[j].spectators) continue;
            cplx phase(1.0);
            for (int k = 0; k < 3; ++k)
                for (int rep = 0; rep < routing[i].spectators[k]; ++rep) phase *= phases[k];
            full.matrix(j, i) =
                phase * reduced.matrix(routing[j].reduced_index, routing[i].reduced_index);
        }
    }
    return full;
}

}  // namespace loqc
