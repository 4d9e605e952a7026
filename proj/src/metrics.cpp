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

#include "loqc/metrics.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace loqc {

int MeasurementScheme::ancilla_photons() const {
    return std::accumulate(ancilla_input.begin(), ancilla_input.end(), 0);
}

int MeasurementScheme::herald_photons() const {
    return std::accumulate(herald_pattern.begin(), herald_pattern.end(), 0);
}

MeasurementScheme MeasurementScheme::trailing_single_photons(int total_modes, int count) {
    MeasurementScheme s;
    for (int k = 0; k < count; ++k) s.ancilla_modes.push_back(total_modes - count + k);
    s.ancilla_input.assign(count, 1);
    s.herald_pattern.assign(count, 1);
    return s;
}

namespace {

double largest_singular_value(const CMat& m) {
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues()(0);
}

// Scatters a logical state and an ancilla pattern into full-transform
// occupations: computational modes in ascending order carry the logical
// occupations, scheme.ancilla_modes carry `ancilla`.
FockBasisState assemble_occupations(const FockBasisState& logical,
                                    const std::vector<int>& ancilla_modes,
                                    const std::vector<int>& ancilla, int total_modes) {
    std::vector<int> occ(total_modes, -1);
    for (std::size_t k = 0; k < ancilla_modes.size(); ++k) occ[ancilla_modes[k]] = ancilla[k];
    int next = 0;
    for (int m = 0; m < total_modes; ++m) {
        if (occ[m] >= 0) continue;
        occ[m] = logical[next++];
    }
    if (next != logical.mode_count())
        throw std::invalid_argument("contraction_map: computational mode count mismatch");
    return FockBasisState(occ);
}

}  // namespace

ContractionMap contraction_map(const ModeTransform& t, const LogicalBasis& basis,
                               const MeasurementScheme& scheme,
                               std::optional<double> rescale_base) {
    const int total = t.mode_count();
    const int anc = static_cast<int>(scheme.ancilla_modes.size());
    if (scheme.ancilla_input.size() != scheme.ancilla_modes.size() ||
        scheme.herald_pattern.size() != scheme.ancilla_modes.size())
        throw std::invalid_argument("contraction_map: scheme pattern lengths mismatch");
    if (basis.mode_count() + anc != total)
        throw std::invalid_argument("contraction_map: transform does not cover basis + ancillas");

    const int d = basis.dimension();
    ContractionMap a;
    a.basis = basis;
    a.matrix = CMat::Zero(d, d);
    a.photons.resize(d);
    a.rescale_base = rescale_base ? *rescale_base : largest_singular_value(t.matrix);

    std::vector<FockBasisState> ins, outs;
    ins.reserve(d);
    outs.reserve(d);
    for (int i = 0; i < d; ++i) {
        ins.push_back(assemble_occupations(basis.fock[i], scheme.ancilla_modes,
                                           scheme.ancilla_input, total));
        outs.push_back(assemble_occupations(basis.fock[i], scheme.ancilla_modes,
                                            scheme.herald_pattern, total));
        a.photons[i] = ins.back().photon_count();
    }

    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) a.matrix(j, i) = transition_amplitude(t, ins[i], outs[j]);
    return a;
}

GateMetrics metrics(const ContractionMap& a, const TargetGate& target) {
    const int d = target.dimension();
    if (a.dimension() != d) throw std::invalid_argument("metrics: dimension mismatch");
    const CMat at = a.rescaled();
    const double s = at.squaredNorm();
    GateMetrics gm;
    if (s < 1e-300) return gm;  // zero map
    const cplx u = (target.matrix.adjoint() * at).trace();
    gm.fidelity = std::norm(u) / (d * s);
    gm.success_probability = s / d;
    return gm;
}

namespace {

cplx align_phase(cplx coeff, cplx rest) {
    const double scale = std::abs(coeff) * std::abs(rest);
    if (scale < 1e-300) return cplx(1.0);
    return std::conj(coeff) * rest / scale;
}

}  // namespace

std::pair<cplx, cplx> maximize_bilinear_phase(cplx w0, cplx w1, cplx w2, cplx w3) {
    const cplx starts[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    cplx best_x(1.0), best_y(1.0);
    double best = -1.0;
    for (const cplx& y0 : starts) {
        cplx y = y0;
        cplx x(1.0);
        double h = -1.0;
        for (int it = 0; it < 200; ++it) {
            x = align_phase(w0 * y + w1, w2 * y + w3);
            y = align_phase(w0 * x + w2, w1 * x + w3);
            const double hn = std::abs(w0 * x * y + w1 * x + w2 * y + w3);
            if (hn - h <= 1e-15 * std::max(1.0, hn)) {
                h = std::max(h, hn);
                break;
            }
            h = hn;
        }
        if (h > best) {
            best = h;
            best_x = x;
            best_y = y;
        }
    }
    return {best_x, best_y};
}

SpectatorPhases optimal_spectator_phases(const ContractionMap& reduced) {
    if (reduced.dimension() != 6)
        throw std::invalid_argument("optimal_spectator_phases: expected a reduced 6-state map");
    const CMat r = reduced.rescaled();
    // Trace of the lifted map against the full csign target, as a function of
    // the H_A phase x and the shared A1 spectator phase y:
    //   tr = w0*x*y + w1*x + w2*y + w3.
    const cplx w0 = 2.0 * r(0, 0);
    const cplx w1 = r(1, 1) + r(2, 2);
    const cplx w2 = 2.0 * r(3, 3);
    const cplx w3 = -(r(4, 4) + r(5, 5));
    const auto [x, y] = maximize_bilinear_phase(w0, w1, w2, w3);
    return {x, y, y};
}

GateMetrics reduced_transform_metrics(const ModeTransform& t, const MeasurementScheme& scheme) {
    const ContractionMap a = contraction_map(t, reduced_sector_basis(), scheme);
    const SpectatorPhases phases = optimal_spectator_phases(a);
    return metrics(lift_reduced_to_full(a, phases), target_csign());
}

AppendixVerification verify_appendix(const ModeTransform& nine_mode) {
    if (nine_mode.mode_count() != 9)
        throw std::invalid_argument("verify_appendix: expected a 9-mode transform");

    const LogicalBasis quad = quad_rail_basis();
    const TargetGate target = target_csign();
    const double sigma = largest_singular_value(nine_mode.matrix);

    // Half the asset's columns touch only themselves (pass-through modes);
    // those are the spectator candidates, the rest are active candidates.
    const std::array<int, 3> odd = {0, 2, 4};   // active candidates
    const std::array<int, 3> even = {1, 3, 5};  // spectator candidates

    // Ancilla schemes: every input/herald occupation pair of <= 3 photons
    // over the trailing three modes.
    std::vector<MeasurementScheme> schemes;
    for (int k = 0; k <= 3; ++k) {
        for (const FockBasisState& in : enumerate_basis(3, k)) {
            for (const FockBasisState& out : enumerate_basis(3, k)) {
                MeasurementScheme s;
                s.ancilla_modes = {6, 7, 8};
                s.ancilla_input = in.occupations();
                s.herald_pattern = out.occupations();
                schemes.push_back(std::move(s));
            }
        }
    }

    AppendixVerification best;
    best.best.fidelity = -1.0;

    std::array<int, 3> act = odd;
    std::sort(act.begin(), act.end());
    do {
        std::array<int, 3> spec = even;
        std::sort(spec.begin(), spec.end());
        do {
            // Canonical slot -> asset column.
            std::array<int, 9> perm = {spec[0], act[0], spec[1], spec[2],
                                       act[2],  act[1], 6,      7,     8};
            CMat canon(9, 9);
            for (int r = 0; r < 9; ++r)
                for (int c = 0; c < 9; ++c) canon(r, c) = nine_mode.matrix(perm[r], perm[c]);
            const ModeTransform tc(canon);

            for (const MeasurementScheme& scheme : schemes) {
                const ContractionMap a = contraction_map(tc, quad, scheme, sigma);
                const GateMetrics gm = metrics(a, target);
                ++best.configurations_tested;
                const bool better =
                    gm.fidelity > best.best.fidelity + 1e-12 ||
                    (gm.fidelity > best.best.fidelity - 1e-12 &&
                     gm.success_probability > best.best.success_probability + 1e-15);
                if (better) {
                    best.best = gm;
                    best.active_columns = act;
                    best.spectator_columns = spec;
                    best.scheme = scheme;
                    best.canonical = tc;
                }
            }
        } while (std::next_permutation(spec.begin(), spec.end()));
    } while (std::next_permutation(act.begin(), act.end()));

    // Active block in reduced mode order (V_A, VR_A1, VL_A1, anc1, anc2, anc3).
    const std::array<int, 6> block_modes = {1, 5, 4, 6, 7, 8};
    best.active_block.resize(6, 6);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            best.active_block(r, c) = best.canonical.matrix(block_modes[r], block_modes[c]);

    Eigen::JacobiSVD<CMat> svd(best.active_block);
    best.singular_values.assign(svd.singularValues().data(),
                                svd.singularValues().data() + svd.singularValues().size());
    return best;
}

}  // namespace loqc
