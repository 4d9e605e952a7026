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

#ifndef LOQC_TARGETS_HPP
#define LOQC_TARGETS_HPP

#include <array>

#include "loqc/contraction.hpp"

namespace loqc {

// Computational-mode conventions.
//
// Quad-rail (full) problem, six modes in fixed order:
//   0: H_A    1: V_A    2: HL_A1   3: HR_A1   4: VL_A1   5: VR_A1
// where H/V is polarization, L/R the +hbar/-hbar orbital angular momentum
// mode of photon A1. Ancilla modes, when present, follow the computational
// modes. The logical basis is the 8-state product {H,V}_A x {HL,HR,VL,VR}_A1
// with the two sign-flipped states (V.VL, V.VR) listed last.
//
// Reduced problem, three modes in fixed order:
//   0: V_A    1: VR_A1   2: VL_A1
// The three bypassed (spectator) modes are H_A, HL_A1, HR_A1; its 6-state
// basis enumerates n1 in {0,1} on V_A times {no A1 photon, VR, VL}.

/// A desired d x d logical unitary over a LogicalBasis.
struct TargetGate {
    LogicalBasis basis;
    CMat matrix;

    int dimension() const { return basis.dimension(); }
};

/// The 8-state quad-rail product basis over the six computational modes.
LogicalBasis quad_rail_basis();

/// The 6-state occupation basis of the reduced three-mode problem.
LogicalBasis reduced_sector_basis();

/// Controlled-sign target on the quad-rail basis: -1 on V.VL and V.VR,
/// +1 elsewhere (diagonal, Hermitian, self-inverse).
TargetGate target_csign();

/// Controlled-sign target on the reduced basis: -1 exactly when the V_A
/// photon and an A1 V-photon are simultaneously present.
TargetGate reduced_csign();

/// Spectator phases applied by lift_reduced_to_full, in mode order
/// (H_A, HL_A1, HR_A1). Passive elements on bypassed modes are lossless, so
/// physical values have unit modulus; the lift applies them verbatim.
using SpectatorPhases = std::array<cplx, 3>;

inline const SpectatorPhases kNoSpectatorPhases = {cplx(1.0), cplx(1.0), cplx(1.0)};

/// Embeds a reduced-basis contraction map into the full quad-rail basis.
/// Each full basis state routes its active content (V_A and A1 V-photons)
/// through the reduced map while spectator photons bypass the device,
/// picking up the given per-mode phase. Entries between states of different
/// spectator content are exactly zero.
ContractionMap lift_reduced_to_full(const ContractionMap& reduced,
                                    const SpectatorPhases& phases = kNoSpectatorPhases);

}  // namespace loqc

#endif
