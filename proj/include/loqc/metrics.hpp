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

#ifndef LOQC_METRICS_HPP
#define LOQC_METRICS_HPP

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "loqc/targets.hpp"

namespace loqc {

/// Heralding description of a measurement-assisted gate: which modes of the
/// parent transform are ancillas, the photons injected into them, and the
/// detection pattern that signals success.
struct MeasurementScheme {
    std::vector<int> ancilla_modes;
    std::vector<int> ancilla_input;
    std::vector<int> herald_pattern;

    int ancilla_photons() const;
    int herald_photons() const;

    /// One photon in and one detected in each of `count` trailing ancilla
    /// modes of a transform with `total_modes` modes.
    static MeasurementScheme trailing_single_photons(int total_modes, int count);
};

struct GateMetrics {
    double fidelity = 0.0;
    double success_probability = 0.0;
};

/// Success probability of the two-transform dual-rail controlled-sign
/// baseline: two gates at 2/27 each.
inline constexpr double kKnillCombinationProbability = (2.0 / 27.0) * (2.0 / 27.0);

/// Builds the heralded operator of `t` on `basis` under `scheme`:
///   A(j, i) = <fock(basis_j) (+) herald | t | fock(basis_i) (+) ancilla_in>
/// with occupations assembled in the fixed mode order (computational modes in
/// basis order, ancilla occupations scattered into scheme.ancilla_modes).
/// Output terms outside the logical basis are leakage and simply absent.
///
/// `rescale_base` overrides the stored parent scale; by default the largest
/// singular value of `t` is computed and stored.
ContractionMap contraction_map(const ModeTransform& t, const LogicalBasis& basis,
                               const MeasurementScheme& scheme,
                               std::optional<double> rescale_base = std::nullopt);

/// Process fidelity and success probability of a contraction map against a
/// target, computed on the physically rescaled map At = a.rescaled():
///   F = |tr(target^dag At)|^2 / (d tr(At^dag At)),  P = tr(At^dag At) / d.
/// The zero map scores F = 0, P = 0. When F = 1 exactly, At = c * target and
/// P = |c|^2.
GateMetrics metrics(const ContractionMap& a, const TargetGate& target);

/// Maximizes |w0 x y + w1 x + w2 y + w3| over unit-modulus x, y by
/// alternating exact single-phase alignment from four deterministic starts.
/// Returns the best (x, y) found.
std::pair<cplx, cplx> maximize_bilinear_phase(cplx w0, cplx w1, cplx w2, cplx w3);

/// Spectator phases (H_A, HL_A1, HR_A1) maximizing the fidelity of
/// lift_reduced_to_full(reduced, phases) against target_csign(). The two A1
/// spectator modes share one phase (the lifted fidelity only constrains them
/// jointly).
SpectatorPhases optimal_spectator_phases(const ContractionMap& reduced);

/// Scores a reduced-problem transform (3 active + ancilla modes) as the gate
/// it realizes on the full quad-rail basis once optimal spectator phases are
/// allowed on the bypassed modes.
GateMetrics reduced_transform_metrics(const ModeTransform& t, const MeasurementScheme& scheme);

/// Result of resolving the bundled 9-mode encoder against target_csign().
struct AppendixVerification {
    GateMetrics best;
    std::vector<double> singular_values;      // active 6x6 block, descending
    std::array<int, 3> active_columns{};      // asset columns of (V_A, VR_A1, VL_A1)
    std::array<int, 3> spectator_columns{};   // asset columns of (H_A, HL_A1, HR_A1)
    MeasurementScheme scheme;                 // resolved ancilla scheme
    int configurations_tested = 0;
    ModeTransform canonical;                  // asset permuted to canonical order
    CMat active_block;                        // rows/cols (V_A, VR, VL, anc1..3)
};

/// Brute-force search over the finite configuration space of the 9-mode
/// asset: assignments of its odd columns to the active roles and even
/// columns to the spectator roles (ancillas fixed as the trailing three),
/// crossed with all ancilla input/herald patterns of at most three photons.
/// Returns the best-scoring configuration by fidelity, then probability.
AppendixVerification verify_appendix(const ModeTransform& nine_mode);

}  // namespace loqc

#endif
