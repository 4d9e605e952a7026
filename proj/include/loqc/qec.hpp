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

#ifndef LOQC_QEC_HPP
#define LOQC_QEC_HPP

#include <array>
#include <random>
#include <stdexcept>
#include <string>

#include "loqc/fock.hpp"

namespace loqc::qec {

// Exact state-vector simulation of the hyperentanglement-assisted code at
// the logical level: an information photon A (polarization qubit) plus a
// photon pair (A1, B1) each carrying polarization x orbital angular
// momentum. Single-photon pol-OAM space in fixed order (HL, HR, VL, VR);
// the full register is 2 x 4 x 4 = 32 amplitudes indexed
// a*16 + p*4 + q (a: pol of A; p: A1; q: B1).

inline constexpr int kA1Dim = 4;
inline constexpr int kRegisterDim = 32;

enum class Bell { phi_plus, phi_minus, psi_plus, psi_minus };
enum class ErrorKind { none, x_a, x_a1, x_a_x_a1 };
enum class Recovery { identity, x, z, zx };

std::string name(Bell b);
std::string name(ErrorKind e);
std::string name(Recovery r);

using A1Vec = Eigen::Vector4cd;                 // one photon's pol-OAM space
using PairVec = Eigen::Matrix<cplx, 16, 1>;     // photons (A1, B1), index p*4+q
using PolVec = Eigen::Vector2cd;                // polarization qubit

/// Normalized 32-amplitude register state.
struct HyperState {
    Eigen::Matrix<cplx, 32, 1> amp;

    cplx& at(int a, int p, int q) { return amp(a * 16 + p * 4 + q); }
    cplx at(int a, int p, int q) const { return amp(a * 16 + p * 4 + q); }
    double squared_norm() const { return amp.squaredNorm(); }
};

/// Raised when a syndrome measurement is asked of a state outside the
/// code's reachable set (no definite Bell-type outcome).
struct AmbiguousSyndrome : std::runtime_error {
    AmbiguousSyndrome() : std::runtime_error("syndrome measurement: state not in the code's reachable set") {}
};

/// The four pair states entangled in polarization with the fixed symmetric
/// OAM factor, in order (phi+, phi-, psi+, psi-).
std::array<PairVec, 4> hyper_bell_states();

/// The four single-photon polarization-OAM analysis states, in order
/// (phi+, phi-, psi+, psi-): phi± = (HL ± VR)/sqrt2, psi± = (HR ± VL)/sqrt2.
std::array<A1Vec, 4> spoam_basis();

/// Coefficients of a two-photon state over the product analysis basis:
/// table(s, t) = <spoam_s (x) spoam_t | state>.
Eigen::Matrix4cd bell_to_spoam(const PairVec& state);

/// The Bell label a joint single-photon analysis outcome (s, t) identifies,
/// per the fixed expansion of the four pair states over the product basis.
Bell outcome_pair_bell(int s, int t);

/// |psi>_A (x) phi+_{A1 B1} followed by the controlled-sign encoding gate
/// (sign flip on V_A together with an A1 V-component). Requires
/// |alpha|^2 + |beta|^2 = 1.
HyperState encode(cplx alpha, cplx beta);

/// Polarization flip channel on photon A, photon A1, both, or neither.
/// OAM is untouched.
HyperState apply_channel(const HyperState& s, ErrorKind e);

struct DecodeOutcome {
    Bell syndrome;
    PolVec residual;  // post-measurement information-photon state, normalized
};

/// Applies the decoding gate (identical to the encoding gate) and projects
/// the photon pair onto the Bell-type set. Deterministic for every state the
/// four supported channel errors can produce; anything else raises
/// AmbiguousSyndrome.
DecodeOutcome decode_and_measure(const HyperState& s);

/// Same measurement through Born-rule sampling of the joint single-photon
/// analysis outcomes (demonstration mode; the syndrome distribution is a
/// point mass for supported errors).
DecodeOutcome decode_and_measure_sampled(const HyperState& s, std::mt19937_64& rng);

/// Applies the recovery operation Table-mandated for the syndrome.
PolVec recover(const PolVec& residual, Bell syndrome);

/// |<a|b>|^2 on normalized states (global phase quotiented out).
double state_fidelity(const PolVec& a, const PolVec& b);

struct SyndromeRecord {
    ErrorKind error;
    Bell syndrome;
    Recovery recovery;
};

/// The four (error, syndrome, recovery) associations the code realizes.
std::array<SyndromeRecord, 4> syndrome_table();

/// Full encode -> channel -> decode -> recover round trip.
struct RoundTrip {
    Bell syndrome;
    Recovery recovery;
    double fidelity;  // recovered state vs |psi>
};
RoundTrip qec_round_trip(cplx alpha, cplx beta, ErrorKind e);

/// Superdense coding: encodes a two-bit message as a Pauli on the A1
/// polarization of phi+, analyzes both photons in the spoam basis, and
/// decodes. Returns the decoded message (0..3); correct for all four.
int superdense_roundtrip(int message);

/// The encoding gate as an 8x8 matrix on the quad-rail logical order used
/// by gate-targets (for the cross-module equality check).
CMat encoding_gate_logical_matrix();

}  // namespace loqc::qec

#endif
