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

#ifndef LOQC_KERNELS_HPP
#define LOQC_KERNELS_HPP

#include <complex>
#include <string>

namespace loqc::kernels {

using cplx = std::complex<double>;

// Largest supported matrix dimension. Ryser's iteration walks 2^n subsets,
// and every photonic amplitude in this library reduces to an n x n permanent
// with n equal to the total photon number, which is capped at the same value.
inline constexpr int kMaxDim = 12;

enum class Isa { scalar, avx2 };

/// Instruction set used by the dispatched entry points. Resolved once from
/// CPUID, overridable with LOQC_KERNEL=scalar|avx2 in the environment.
Isa active_isa();
std::string isa_name(Isa isa);

/// Forces a specific implementation (used by the equivalence tests).
/// Throws std::runtime_error if the requested ISA is not available.
void set_active_isa(Isa isa);

/// Permanent of a packed row-major n x n complex matrix via Ryser's
/// inclusion-exclusion formula with Gray-code subset updates, O(2^n * n).
/// n == 0 returns 1 by convention.
cplx permanent_scalar(const cplx* a, int n);

/// Dispatched permanent (scalar reference or AVX2, per active_isa()).
cplx permanent(const cplx* a, int n);

/// Permanents of `count` independent n x n matrices (each packed row-major).
/// The SIMD path evaluates four matrices per pass in planar layout; results
/// agree with the scalar reference to floating-point reassociation level.
void permanent_batch(const cplx* const* mats, int n, int count, cplx* out);
void permanent_batch_scalar(const cplx* const* mats, int n, int count, cplx* out);

#if defined(LOQC_HAVE_AVX2)
cplx permanent_avx2(const cplx* a, int n);
void permanent_batch_avx2(const cplx* const* mats, int n, int count, cplx* out);
#endif

/// True when the AVX2 path was compiled in and the CPU reports AVX2+FMA.
bool avx2_available();

}  // namespace loqc::kernels

#endif
