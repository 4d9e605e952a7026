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

#ifndef LOQC_CONTRACTION_HPP
#define LOQC_CONTRACTION_HPP

#include <string>
#include <vector>

#include "loqc/fock.hpp"

namespace loqc {

/// A logical computational basis: labels, their Fock images on the
/// computational modes, and the names of those modes.
struct LogicalBasis {
    std::vector<std::string> labels;
    std::vector<FockBasisState> fock;
    std::vector<std::string> mode_roles;

    int dimension() const { return static_cast<int>(labels.size()); }
    int mode_count() const { return static_cast<int>(mode_roles.size()); }

    /// Index of a Fock state in this basis, or -1 when outside it.
    int index_of(const FockBasisState& s) const;
};

/// The heralded (Kraus) operator on a logical basis: matrix(j, i) is the
/// amplitude for logical input i to exit as logical output j with the
/// heralding pattern observed. Norm-decreasing for physical devices.
///
/// `photons[i]` counts the photons routed through the parent transform for
/// basis state i (state photons plus ancilla input photons); `rescale_base`
/// is the parent's largest singular value. rescaled() divides every column
/// by rescale_base^photons[column], which is the map the device implements
/// once the parent is brought to a physical contraction.
struct ContractionMap {
    LogicalBasis basis;
    CMat matrix;
    std::vector<int> photons;
    double rescale_base = 1.0;

    int dimension() const { return static_cast<int>(matrix.rows()); }

    CMat rescaled() const;
};

}  // namespace loqc

#endif
