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

#include "loqc/reck.hpp"

#include <cmath>
#include <stdexcept>

namespace loqc {

CMat InterferometerElement::embedded(int mode_count) const {
    CMat m = CMat::Identity(mode_count, mode_count);
    if (kind == Kind::phase_shifter) {
        m(mode_a, mode_a) = std::polar(1.0, phi);
        return m;
    }
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const cplx e = std::polar(1.0, phi);
    m(mode_a, mode_a) = c;
    m(mode_a, mode_b) = -std::conj(e) * s;
    m(mode_b, mode_a) = e * s;
    m(mode_b, mode_b) = c;
    return m;
}

int Netlist::beamsplitter_count() const {
    int n = 0;
    for (const auto& e : elements)
        if (e.kind == InterferometerElement::Kind::beamsplitter) ++n;
    return n;
}

Netlist reck_decompose(const ModeTransform& u) {
    const int n = u.mode_count();
    if (!u.is_unitary(1e-9))
        throw std::invalid_argument("reck_decompose: input is not unitary");

    CMat work = u.matrix;
    struct Rotation {
        int a, b;
        double theta, phi;
    };
    std::vector<Rotation> rotations;
    rotations.reserve(n * (n - 1) / 2);

    // Null below-diagonal entries column by column, bottom up, each with a
    // rotation of the two adjacent rows (r-1, r). The rotations applied on
    // the left turn `work` into a diagonal of pure phases.
    for (int c = 0; c < n - 1; ++c) {
        for (int r = n - 1; r > c; --r) {
            const int a = r - 1;
            const cplx ua = work(a, c);
            const cplx ub = work(r, c);
            const double ma = std::abs(ua);
            const double mb = std::abs(ub);
            double theta = 0.0, phi = 0.0;
            if (mb > 0.0) {
                theta = std::atan2(mb, ma);
                phi = (ma > 0.0) ? std::arg(-ub * std::conj(ua)) : 0.0;
            }
            rotations.push_back({a, r, theta, phi});

            const double cs = std::cos(theta);
            const double sn = std::sin(theta);
            const cplx e = std::polar(1.0, phi);
            for (int col = 0; col < n; ++col) {
                const cplx ra = work(a, col);
                const cplx rb = work(r, col);
                work(a, col) = cs * ra - std::conj(e) * sn * rb;
                work(r, col) = e * sn * ra + cs * rb;
            }
            work(r, c) = 0.0;
        }
    }

    Netlist out;
    out.mode_count = n;
    out.elements.reserve(n + rotations.size());
    // Residual diagonal phases act first, then the inverted rotations in
    // reverse order: u = T_1^dag ... T_K^dag D.
    for (int m = 0; m < n; ++m) {
        InterferometerElement ps;
        ps.kind = InterferometerElement::Kind::phase_shifter;
        ps.mode_a = m;
        ps.phi = std::arg(work(m, m));
        out.elements.push_back(ps);
    }
    for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) {
        InterferometerElement bs;
        bs.kind = InterferometerElement::Kind::beamsplitter;
        bs.mode_a = it->a;
        bs.mode_b = it->b;
        bs.theta = -it->theta;  // T(theta, phi)^dag = T(-theta, phi)
        bs.phi = it->phi;
        out.elements.push_back(bs);
    }
    return out;
}

ModeTransform recompose(const Netlist& n) {
    if (n.mode_count < 1) throw std::invalid_argument("recompose: empty netlist");
    CMat m = CMat::Identity(n.mode_count, n.mode_count);
    for (const auto& e : n.elements) {
        if (e.mode_a < 0 || e.mode_a >= n.mode_count || e.mode_b < 0 || e.mode_b >= n.mode_count)
            throw std::out_of_range("recompose: element mode index out of range");
        if (e.kind == InterferometerElement::Kind::beamsplitter && e.mode_a == e.mode_b)
            throw std::invalid_argument("recompose: beamsplitter needs two distinct modes");
        m = e.embedded(n.mode_count) * m;
    }
    return ModeTransform(n.global_phase * m);
}

}  // namespace loqc
