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

#ifndef LOQC_DILATION_HPP
#define LOQC_DILATION_HPP

#include <vector>

#include "loqc/fock.hpp"

namespace loqc {

/// Singular values of m, descending.
std::vector<double> singular_values(const ModeTransform& m);

/// Thrown by dilate() when the input has a singular value above one; the
/// caller should rescale by the largest singular value first.
struct NotAContraction : std::invalid_argument {
    explicit NotAContraction(double sigma_max);
    double sigma_max;
};

/// Embeds a contraction into the smallest unitary obtained by adding one
/// vacuum mode per singular value below 1 - 1e-9: for m = W S V^dag the
/// result is
///   [ m                 W_k sqrt(I - S_k^2) ]
///   [ sqrt(I - S_k^2) V_k^dag    -S_k       ]
/// restricted to the k defect directions. The top-left M x M block equals m
/// exactly and the result is unitary to machine precision. A unitary input
/// is returned unchanged (k = 0).
ModeTransform dilate(const ModeTransform& m);

/// Clamps singular values: sigma > 1 is pulled down to 1, and sigma within
/// `snap_tol` below 1 is pushed up to 1. Brings a near-contraction (for
/// example a matrix printed with six digits) back onto the physical set so
/// that dilate() adds vacuum modes only for genuine defects.
ModeTransform clean_singular_values(const ModeTransform& m, double snap_tol);

}  // namespace loqc

#endif
