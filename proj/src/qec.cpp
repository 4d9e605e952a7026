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

#include "loqc/qec.hpp"

#include <cmath>

namespace loqc::qec {

namespace {

// Single-photon pol-OAM indices: 0 HL, 1 HR, 2 VL, 3 VR.
constexpr int kHL = 0, kHR = 1, kVL = 2, kVR = 3;

inline bool is_vertical(int p) { return p >= 2; }
inline int pol_flip(int p) { return is_vertical(p) ? p - 2 : p + 2; }

// The encoding/decoding controlled-sign: -1 exactly when photon A is V and
// photon A1 carries a V component. OAM untouched.
inline double csign(int a, int p) { return (a == 1 && is_vertical(p)) ? -1.0 : 1.0; }

HyperState apply_encoding_gate(const HyperState& s) {
    HyperState out = s;
    for (int a = 0; a < 2; ++a)
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) out.at(a, p, q) *= csign(a, p);
    return out;
}

}  // namespace

std::string name(Bell b) {
    switch (b) {
        case Bell::phi_plus: return "phi+";
        case Bell::phi_minus: return "phi-";
        case Bell::psi_plus: return "psi+";
        case Bell::psi_minus: return "psi-";
    }
    return "?";
}

std::string name(ErrorKind e) {
    switch (e) {
        case ErrorKind::none: return "I";
        case ErrorKind::x_a: return "XA";
        case ErrorKind::x_a1: return "XA1";
        case ErrorKind::x_a_x_a1: return "XAXA1";
    }
    return "?";
}

std::string name(Recovery r) {
    switch (r) {
        case Recovery::identity: return "I";
        case Recovery::x: return "X";
        case Recovery::z: return "Z";
        case Recovery::zx: return "ZX";
    }
    return "?";
}

std::array<PairVec, 4> hyper_bell_states() {
    std::array<PairVec, 4> bells;
    for (auto& b : bells) b.setZero();
    auto term = [](PairVec& v, int p, int q, double amp) { v(p * 4 + q) += amp; };
    // (|HH> +/- |VV>) (x) (|LR> + |RL>) / 2
    for (int k : {0, 1}) {
        const double s = k == 0 ? 0.5 : -0.5;
        term(bells[k], kHL, kHR, 0.5);
        term(bells[k], kHR, kHL, 0.5);
        term(bells[k], kVL, kVR, s);
        term(bells[k], kVR, kVL, s);
    }
    // (|HV> +/- |VH>) (x) (|LR> + |RL>) / 2
    for (int k : {2, 3}) {
        const double s = k == 2 ? 0.5 : -0.5;
        term(bells[k], kHL, kVR, 0.5);
        term(bells[k], kHR, kVL, 0.5);
        term(bells[k], kVL, kHR, s);
        term(bells[k], kVR, kHL, s);
    }
    return bells;
}

std::array<A1Vec, 4> spoam_basis() {
    const double r = 1.0 / std::sqrt(2.0);
    std::array<A1Vec, 4> b;
    b[0] << r, 0, 0, r;    // phi+ = (HL + VR)/sqrt2
    b[1] << r, 0, 0, -r;   // phi-
    b[2] << 0, r, r, 0;    // psi+ = (HR + VL)/sqrt2
    b[3] << 0, r, -r, 0;   // psi-
    return b;
}

Eigen::Matrix4cd bell_to_spoam(const PairVec& state) {
    const auto basis = spoam_basis();
    Eigen::Matrix4cd table;
    for (int s = 0; s < 4; ++s) {
        for (int t = 0; t < 4; ++t) {
            cplx coef(0.0);
            for (int p = 0; p < 4; ++p)
                for (int q = 0; q < 4; ++q)
                    coef += std::conj(basis[s](p)) * std::conj(basis[t](q)) * state(p * 4 + q);
            table(s, t) = coef;
        }
    }
    return table;
}

namespace {

// outcome pair -> Bell label, derived once from the expansion itself.
const std::array<std::array<Bell, 4>, 4>& outcome_lookup() {
    static const std::array<std::array<Bell, 4>, 4> table = [] {
        std::array<std::array<Bell, 4>, 4> t{};
        std::array<std::array<bool, 4>, 4> seen{};
        const auto bells = hyper_bell_states();
        for (int k = 0; k < 4; ++k) {
            const Eigen::Matrix4cd coef = bell_to_spoam(bells[k]);
            for (int s = 0; s < 4; ++s) {
                for (int u = 0; u < 4; ++u) {
                    if (std::abs(coef(s, u)) < 1e-12) continue;
                    if (seen[s][u]) throw std::logic_error("outcome pair maps to two Bell states");
                    seen[s][u] = true;
                    t[s][u] = static_cast<Bell>(k);
                }
            }
        }
        for (int s = 0; s < 4; ++s)
            for (int u = 0; u < 4; ++u)
                if (!seen[s][u]) throw std::logic_error("outcome pair not covered");
        return t;
    }();
    return table;
}

}  // namespace

Bell outcome_pair_bell(int s, int t) {
    if (s < 0 || s > 3 || t < 0 || t > 3)
        throw std::invalid_argument("outcome_pair_bell: index out of range");
    return outcome_lookup()[s][t];
}

HyperState encode(cplx alpha, cplx beta) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
        throw std::invalid_argument("encode: |alpha|^2 + |beta|^2 must be 1");
    const PairVec phi_plus = hyper_bell_states()[0];
    HyperState s;
    s.amp.setZero();
    const cplx psi[2] = {alpha, beta};
    for (int a = 0; a < 2; ++a)
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) s.at(a, p, q) = psi[a] * phi_plus(p * 4 + q);
    return apply_encoding_gate(s);
}

HyperState apply_channel(const HyperState& s, ErrorKind e) {
    HyperState out = s;
    if (e == ErrorKind::x_a || e == ErrorKind::x_a_x_a1) {
        HyperState t = out;
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) {
                t.at(0, p, q) = out.at(1, p, q);
                t.at(1, p, q) = out.at(0, p, q);
            }
        out = t;
    }
    if (e == ErrorKind::x_a1 || e == ErrorKind::x_a_x_a1) {
        HyperState t = out;
        for (int a = 0; a < 2; ++a)
            for (int p = 0; p < 4; ++p)
                for (int q = 0; q < 4; ++q) t.at(a, pol_flip(p), q) = out.at(a, p, q);
        out = t;
    }
    return out;
}

namespace {

PolVec project_pair(const HyperState& s, const PairVec& pair) {
    PolVec r;
    r.setZero();
    for (int a = 0; a < 2; ++a)
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) r(a) += std::conj(pair(p * 4 + q)) * s.at(a, p, q);
    return r;
}

}  // namespace

DecodeOutcome decode_and_measure(const HyperState& s) {
    const HyperState decoded = apply_encoding_gate(s);
    const auto bells = hyper_bell_states();
    int hit = -1;
    PolVec residual;
    for (int k = 0; k < 4; ++k) {
        PolVec r = project_pair(decoded, bells[k]);
        const double prob = r.squaredNorm();
        if (prob > 1e-9) {
            if (hit >= 0) throw AmbiguousSyndrome();
            hit = k;
            residual = r;
        }
    }
    if (hit < 0 || std::abs(residual.squaredNorm() - 1.0) > 1e-9) throw AmbiguousSyndrome();
    residual.normalize();
    return {static_cast<Bell>(hit), residual};
}

DecodeOutcome decode_and_measure_sampled(const HyperState& s, std::mt19937_64& rng) {
    const HyperState decoded = apply_encoding_gate(s);
    const auto basis = spoam_basis();

    double probs[4][4];
    PolVec residuals[4][4];
    double total = 0.0;
    for (int u = 0; u < 4; ++u) {
        for (int v = 0; v < 4; ++v) {
            PairVec outcome;
            for (int p = 0; p < 4; ++p)
                for (int q = 0; q < 4; ++q) outcome(p * 4 + q) = basis[u](p) * basis[v](q);
            residuals[u][v] = project_pair(decoded, outcome);
            probs[u][v] = residuals[u][v].squaredNorm();
            total += probs[u][v];
        }
    }
    std::uniform_real_distribution<double> unif(0.0, total);
    double draw = unif(rng);
    for (int u = 0; u < 4; ++u) {
        for (int v = 0; v < 4; ++v) {
            draw -= probs[u][v];
            if (draw <= 0.0) {
                PolVec r = residuals[u][v];
                r.normalize();
                return {outcome_pair_bell(u, v), r};
            }
        }
    }
    throw AmbiguousSyndrome();
}

PolVec recover(const PolVec& residual, Bell syndrome) {
    PolVec r = residual;
    switch (syndrome) {
        case Bell::phi_plus:
            break;
        case Bell::phi_minus:
            std::swap(r(0), r(1));
            break;
        case Bell::psi_plus:
            r(1) = -r(1);
            break;
        case Bell::psi_minus: {
            PolVec t;
            t(0) = r(1);   // X first ...
            t(1) = -r(0);  // ... then Z
            r = t;
            break;
        }
    }
    return r;
}

double state_fidelity(const PolVec& a, const PolVec& b) {
    const double na = a.squaredNorm();
    const double nb = b.squaredNorm();
    if (na < 1e-300 || nb < 1e-300) return 0.0;
    return std::norm(a.dot(b)) / (na * nb);
}

std::array<SyndromeRecord, 4> syndrome_table() {
    return {{{ErrorKind::none, Bell::phi_plus, Recovery::identity},
             {ErrorKind::x_a, Bell::phi_minus, Recovery::x},
             {ErrorKind::x_a1, Bell::psi_plus, Recovery::z},
             {ErrorKind::x_a_x_a1, Bell::psi_minus, Recovery::zx}}};
}

namespace {

Recovery recovery_for(Bell syndrome) {
    for (const SyndromeRecord& r : syndrome_table())
        if (r.syndrome == syndrome) return r.recovery;
    throw std::invalid_argument("unknown syndrome");
}

}  // namespace

RoundTrip qec_round_trip(cplx alpha, cplx beta, ErrorKind e) {
    const HyperState sent = apply_channel(encode(alpha, beta), e);
    const DecodeOutcome outcome = decode_and_measure(sent);
    const Recovery rec = recovery_for(outcome.syndrome);
    PolVec recovered = recover(outcome.residual, outcome.syndrome);
    PolVec psi;
    psi << alpha, beta;
    return {outcome.syndrome, rec, state_fidelity(recovered, psi)};
}

int superdense_roundtrip(int message) {
    if (message < 0 || message > 3)
        throw std::invalid_argument("superdense_roundtrip: message must be 0..3");
    PairVec pair = hyper_bell_states()[0];
    // Pauli on the first photon's polarization: bit 0 -> Z, bit 1 -> X.
    PairVec enc;
    enc.setZero();
    for (int p = 0; p < 4; ++p) {
        for (int q = 0; q < 4; ++q) {
            cplx amp = pair(p * 4 + q);
            int pp = p;
            if (message & 1) amp *= is_vertical(pp) ? -1.0 : 1.0;  // Z
            if (message & 2) pp = pol_flip(pp);                    // X
            enc(pp * 4 + q) += amp;
        }
    }
    const Eigen::Matrix4cd table = bell_to_spoam(enc);
    int bell = -1;
    for (int s = 0; s < 4; ++s) {
        for (int t = 0; t < 4; ++t) {
            if (std::abs(table(s, t)) < 1e-9) continue;
            const int k = static_cast<int>(outcome_pair_bell(s, t));
            if (bell >= 0 && bell != k) throw AmbiguousSyndrome();
            bell = k;
        }
    }
    if (bell < 0) throw AmbiguousSyndrome();
    return bell;  // Bell order matches the message order (I, Z, X, XZ)
}

CMat encoding_gate_logical_matrix() {
    CMat m = CMat::Zero(8, 8);
    for (int a = 0; a < 2; ++a)
        for (int p = 0; p < 4; ++p) m(a * 4 + p, a * 4 + p) = csign(a, p);
    return m;
}

}  // namespace loqc::qec
