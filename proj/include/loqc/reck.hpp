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

#ifndef LOQC_RECK_HPP
#define LOQC_RECK_HPP

#include <vector>

#include "loqc/fock.hpp"

namespace loqc {

/// One hardware element of an interferometer netlist.
///
/// A beamsplitter on modes (a, b) applies the two-parameter SU(2) block
///   [ cos(theta)              -exp(-i phi) sin(theta) ]
///   [ exp(i phi) sin(theta)    cos(theta)             ]
/// to (a, b); a phase shifter applies exp(i phi) to its single mode.
struct InterferometerElement {
    enum class Kind { beamsplitter, phase_shifter };
    Kind kind = Kind::beamsplitter;
    int mode_a = 0;
    int mode_b = 0;  // unused for phase shifters
    double theta = 0.0;
    double phi = 0.0;

    CMat embedded(int mode_count) const;  // element as an M x M matrix
};

/// Ordered element list (application order: elements[0] acts first).
struct Netlist {
    int mode_count = 0;
    std::vector<InterferometerElement> elements;
    cplx global_phase{1.0, 0.0};

    int beamsplitter_count() const;
};

/// Triangular nulling factorization of an N x N unitary into exactly
/// N(N-1)/2 beamsplitters plus N single-mode phase shifters. Columns are
/// nulled left to right, bottom up, each by a rotation of two adjacent rows;
/// the residual diagonal becomes the leading phase shifters. Throws on
/// non-unitary input (tolerance 1e-9 on ||u^dag u - I||_max).
Netlist reck_decompose(const ModeTransform& u);

/// Ordered product of the element matrices times the global phase.
ModeTransform recompose(const Netlist& n);

}  // namespace loqc

#endif
