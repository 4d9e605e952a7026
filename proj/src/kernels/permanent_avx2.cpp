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

// AVX2 permanent kernel: four independent matrices per pass, planar layout
// (separate real/imaginary planes, four lanes per entry). The Gray-code walk
// is identical to the scalar reference; only the arithmetic is widened.

#include "loqc/kernels.hpp"

#if defined(LOQC_HAVE_AVX2)

#include <immintrin.h>

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace loqc::kernels {

namespace {

// Planar scratch for one group of four matrices: plane[(r*n + c)*4 + lane].
struct Lane4 {
    alignas(32) double re[kMaxDim * kMaxDim * 4];
    alignas(32) double im[kMaxDim * kMaxDim * 4];

    void pack(const cplx* const* mats, int n, int lanes) {
        for (int e = 0; e < n * n; ++e) {
            for (int l = 0; l < 4; ++l) {
                const cplx v = mats[l < lanes ? l : lanes - 1][e];
                re[e * 4 + l] = v.real();
                im[e * 4 + l] = v.imag();
            }
        }
    }
};

void perm4(const Lane4& m, int n, cplx* out4) {
    __m256d sre[kMaxDim], sim[kMaxDim];
    for (int r = 0; r < kMaxDim; ++r) {
        sre[r] = _mm256_setzero_pd();
        sim[r] = _mm256_setzero_pd();
    }
    __m256d tot_re = _mm256_setzero_pd();
    __m256d tot_im = _mm256_setzero_pd();

    std::uint32_t mask = 0;
    int card = 0;
    const std::uint64_t steps = std::uint64_t(1) << n;
    for (std::uint64_t k = 1; k < steps; ++k) {
        const int c = std::countr_zero(k);
        const std::uint32_t bit = std::uint32_t(1) << c;
        if (mask & bit) {
            for (int r = 0; r < n; ++r) {
                sre[r] = _mm256_sub_pd(sre[r], _mm256_load_pd(m.re + (r * n + c) * 4));
                sim[r] = _mm256_sub_pd(sim[r], _mm256_load_pd(m.im + (r * n + c) * 4));
            }
            --card;
        } else {
            for (int r = 0; r < n; ++r) {
                sre[r] = _mm256_add_pd(sre[r], _mm256_load_pd(m.re + (r * n + c) * 4));
                sim[r] = _mm256_add_pd(sim[r], _mm256_load_pd(m.im + (r * n + c) * 4));
            }
            ++card;
        }
        mask ^= bit;

        __m256d pr = sre[0];
        __m256d pi = sim[0];
        for (int r = 1; r < n; ++r) {
            const __m256d t = _mm256_fmsub_pd(pr, sre[r], _mm256_mul_pd(pi, sim[r]));
            pi = _mm256_fmadd_pd(pr, sim[r], _mm256_mul_pd(pi, sre[r]));
            pr = t;
        }
        if (card & 1) {
            tot_re = _mm256_sub_pd(tot_re, pr);
            tot_im = _mm256_sub_pd(tot_im, pi);
        } else {
            tot_re = _mm256_add_pd(tot_re, pr);
            tot_im = _mm256_add_pd(tot_im, pi);
        }
    }

    alignas(32) double rre[4], rim[4];
    _mm256_store_pd(rre, tot_re);
    _mm256_store_pd(rim, tot_im);
    const double sign = (n & 1) ? -1.0 : 1.0;
    for (int l = 0; l < 4; ++l) out4[l] = cplx(sign * rre[l], sign * rim[l]);
}

}  // namespace

void permanent_batch_avx2(const cplx* const* mats, int n, int count, cplx* out) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("permanent: dimension out of range");
    if (n <= 2) {
        permanent_batch_scalar(mats, n, count, out);
        return;
    }
    Lane4 scratch;
    cplx out4[4];
    for (int base = 0; base < count; base += 4) {
        const int lanes = std::min(4, count - base);
        scratch.pack(mats + base, n, lanes);
        perm4(scratch, n, out4);
        for (int l = 0; l < lanes; ++l) out[base + l] = out4[l];
    }
}

cplx permanent_avx2(const cplx* a, int n) {
    if (n <= 2) return permanent_scalar(a, n);
    const cplx* mats[1] = {a};
    cplx out;
    permanent_batch_avx2(mats, n, 1, &out);
    return out;
}

}  // namespace loqc::kernels

#endif  // LOQC_HAVE_AVX2
