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

#include "loqc/kernels.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace loqc::kernels {

// Ryser with Gray-code subset enumeration:
//
//   perm(A) = (-1)^n * sum_{S != empty} (-1)^|S| prod_r sum_{c in S} a[r][c]
//
// Row sums over the current column subset are updated incrementally; each
// step toggles exactly one column (bit ctz(k) of step counter k).
cplx permanent_scalar(const cplx* a, int n) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("permanent: dimension out of range");
    if (n == 0) return cplx(1.0, 0.0);
    if (n == 1) return a[0];
    if (n == 2) return a[0] * a[3] + a[1] * a[2];

    cplx sums[kMaxDim] = {};
    cplx total(0.0, 0.0);
    std::uint32_t mask = 0;  // columns currently in S
    int card = 0;

    const std::uint64_t steps = std::uint64_t(1) << n;
    for (std::uint64_t k = 1; k < steps; ++k) {
        const int c = std::countr_zero(k);
        const std::uint32_t bit = std::uint32_t(1) << c;
        if (mask & bit) {
            for (int r = 0; r < n; ++r) sums[r] -= a[r * n + c];
            --card;
        } else {
            for (int r = 0; r < n; ++r) sums[r] += a[r * n + c];
            ++card;
        }
        mask ^= bit;

        cplx prod = sums[0];
        for (int r = 1; r < n; ++r) prod *= sums[r];
        if (card & 1)
            total -= prod;
        else
            total += prod;
    }
    return (n & 1) ? -total : total;
}

void permanent_batch_scalar(const cplx* const* mats, int n, int count, cplx* out) {
    for (int k = 0; k < count; ++k) out[k] = permanent_scalar(mats[k], n);
}

}  // namespace loqc::kernels
