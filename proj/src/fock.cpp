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

#include "loqc/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "loqc/kernels.hpp"

namespace loqc {

namespace {

constexpr std::array<double, kMaxPhotons + 1> kFactorials = [] {
    std::array<double, kMaxPhotons + 1> f{};
    f[0] = 1.0;
    for (int i = 1; i <= kMaxPhotons; ++i) f[i] = f[i - 1] * i;
    return f;
}();

}  // namespace

double factorial(int n) {
    if (n < 0 || n > kMaxPhotons)
        throw std::out_of_range("factorial: photon number outside supported range [0, 12]");
    return kFactorials[n];
}

FockBasisState::FockBasisState(std::vector<int> occupations) : occ_(std::move(occupations)) {
    if (occ_.empty()) throw std::invalid_argument("FockBasisState: at least one mode required");
    for (int n : occ_) {
        if (n < 0) throw std::invalid_argument("FockBasisState: negative occupation");
        photons_ += n;
    }
    if (photons_ > kMaxPhotons)
        throw std::invalid_argument("FockBasisState: photon number exceeds supported limit");
}

std::string FockBasisState::str() const {
    std::ostringstream os;
    os << "|";
    for (std::size_t i = 0; i < occ_.size(); ++i) {
        if (i) os << ",";
        os << occ_[i];
    }
    os << ">";
    return os.str();
}

PhotonicState::PhotonicState(int mode_count) : mode_count_(mode_count) {
    if (mode_count < 1) throw std::invalid_argument("PhotonicState: mode_count must be positive");
}

PhotonicState PhotonicState::single_term(const FockBasisState& s, cplx amplitude) {
    PhotonicState out(s.mode_count());
    out.add_term(s, amplitude);
    return out;
}

void PhotonicState::add_term(const FockBasisState& s, cplx amplitude) {
    if (s.mode_count() != mode_count_)
        throw std::invalid_argument("PhotonicState: mode count mismatch");
    terms_[s] += amplitude;
}

cplx PhotonicState::amplitude(const FockBasisState& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? cplx(0.0) : it->second;
}

double PhotonicState::squared_norm() const {
    double n = 0.0;
    for (const auto& [state, amp] : terms_) n += std::norm(amp);
    return n;
}

PhotonicState& PhotonicState::scale(cplx factor) {
    for (auto& [state, amp] : terms_) amp *= factor;
    return *this;
}

void PhotonicState::prune(double threshold) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < threshold)
            it = terms_.erase(it);
        else
            ++it;
    }
}

std::string PhotonicState::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [state, amp] : terms_) {
        if (!first) os << " + ";
        os << "(" << amp.real() << (amp.imag() < 0 ? "-" : "+") << std::abs(amp.imag()) << "i)"
           << state.str();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

ModeTransform::ModeTransform(CMat m) : matrix(std::move(m)) {
    if (matrix.rows() != matrix.cols())
        throw std::invalid_argument("ModeTransform: matrix must be square");
    if (!matrix.allFinite()) throw std::invalid_argument("ModeTransform: non-finite entries");
}

bool ModeTransform::is_unitary(double tol) const {
    const CMat g = matrix.adjoint() * matrix - CMat::Identity(matrix.rows(), matrix.cols());
    return g.cwiseAbs().maxCoeff() < tol;
}

ModeTransform ModeTransform::identity(int modes) {
    return ModeTransform(CMat::Identity(modes, modes));
}

std::vector<FockBasisState> enumerate_basis(int mode_count, int photon_count) {
    if (mode_count < 1) throw std::invalid_argument("enumerate_basis: mode_count must be >= 1");
    if (photon_count < 0 || photon_count > kMaxPhotons)
        throw std::invalid_argument("enumerate_basis: photon count outside supported range");

    std::vector<FockBasisState> out;
    std::vector<int> occ(mode_count, 0);
    // Depth-first from the highest occupation of the first mode downward
    // yields descending lexicographic order.
    auto rec = [&](auto&& self, int mode, int remaining) -> void {
        if (mode == mode_count - 1) {
            occ[mode] = remaining;
            out.emplace_back(occ);
            return;
        }
        for (int n = remaining; n >= 0; --n) {
            occ[mode] = n;
            self(self, mode + 1, remaining - n);
        }
    };
    rec(rec, 0, photon_count);
    return out;
}

namespace {

// Expands occupations to a per-photon mode list: (2,0,1) -> [0,0,2].
void expand_modes(const FockBasisState& s, std::vector<int>& modes) {
    modes.clear();
    for (int m = 0; m < s.mode_count(); ++m)
        for (int k = 0; k < s[m]; ++k) modes.push_back(m);
}

double occupation_norm(const FockBasisState& s) {
    double p = 1.0;
    for (int m = 0; m < s.mode_count(); ++m) p *= factorial(s[m]);
    return p;
}

}  // namespace

cplx transition_amplitude(const ModeTransform& t, const FockBasisState& in,
                          const FockBasisState& out) {
    if (in.mode_count() != t.mode_count() || out.mode_count() != t.mode_count())
        throw std::invalid_argument("transition_amplitude: mode count mismatch");
    if (in.photon_count() != out.photon_count()) return cplx(0.0);

    const int n = in.photon_count();
    std::vector<int> cols, rows;
    expand_modes(in, cols);
    expand_modes(out, rows);

    std::array<cplx, kMaxPhotons * kMaxPhotons> sub;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) sub[r * n + c] = t.matrix(rows[r], cols[c]);

    const cplx p = kernels::permanent(sub.data(), n);
    return p / std::sqrt(occupation_norm(in) * occupation_norm(out));
}

PhotonicState apply_transform(const ModeTransform& t, const PhotonicState& s) {
    if (t.mode_count() != s.mode_count())
        throw std::invalid_argument("apply_transform: mode count mismatch");

    PhotonicState out(s.mode_count());
    // Output candidates are shared within a photon-number sector; cache them.
    std::map<int, std::vector<FockBasisState>> sectors;
    for (const auto& [in_state, amp] : s.terms()) {
        auto [it, inserted] = sectors.try_emplace(in_state.photon_count());
        if (inserted) it->second = enumerate_basis(s.mode_count(), in_state.photon_count());
        for (const FockBasisState& out_state : it->second) {
            const cplx a = transition_amplitude(t, in_state, out_state);
            if (a != cplx(0.0)) out.add_term(out_state, amp * a);
        }
    }
    out.prune();
    return out;
}

PhotonicState postselect(const PhotonicState& s, const std::vector<int>& ancilla_modes,
                         const std::vector<int>& pattern) {
    if (ancilla_modes.size() != pattern.size())
        throw std::invalid_argument("postselect: pattern length must match ancilla mode count");
    const int m = s.mode_count();
    std::vector<bool> is_ancilla(m, false);
    for (int mode : ancilla_modes) {
        if (mode < 0 || mode >= m) throw std::invalid_argument("postselect: mode index out of range");
        if (is_ancilla[mode]) throw std::invalid_argument("postselect: duplicate ancilla mode");
        is_ancilla[mode] = true;
    }
    const int remaining = m - static_cast<int>(ancilla_modes.size());
    if (remaining < 1) throw std::invalid_argument("postselect: no computational modes left");

    PhotonicState out(remaining);
    std::vector<int> reduced;
    for (const auto& [state, amp] : s.terms()) {
        bool match = true;
        for (std::size_t k = 0; k < ancilla_modes.size(); ++k) {
            if (state[ancilla_modes[k]] != pattern[k]) {
                match = false;
                break;
            }
        }
        if (!match) continue;
        reduced.clear();
        for (int mode = 0; mode < m; ++mode)
            if (!is_ancilla[mode]) reduced.push_back(state[mode]);
        out.add_term(FockBasisState(reduced), amp);
    }
    return out;
}

}  // namespace loqc
