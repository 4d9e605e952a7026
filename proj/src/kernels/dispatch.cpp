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

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <stdexcept>

namespace loqc::kernels {

bool avx2_available() {
#if defined(LOQC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

std::atomic<Isa> g_isa{Isa::scalar};
std::once_flag g_isa_once;

Isa resolve_isa() {
    if (const char* env = std::getenv("LOQC_KERNEL")) {
        const std::string v(env);
        if (v == "scalar") return Isa::scalar;
        if (v == "avx2") {
            if (!avx2_available()) throw std::runtime_error("LOQC_KERNEL=avx2 but AVX2 is unavailable");
            return Isa::avx2;
        }
        throw std::runtime_error("LOQC_KERNEL must be 'scalar' or 'avx2', got '" + v + "'");
    }
    return avx2_available() ? Isa::avx2 : Isa::scalar;
}

Isa current() {
    std::call_once(g_isa_once, [] { g_isa.store(resolve_isa()); });
    return g_isa.load();
}

}  // namespace

Isa active_isa() { return current(); }

std::string isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void set_active_isa(Isa isa) {
    if (isa == Isa::avx2 && !avx2_available())
        throw std::runtime_error("AVX2 kernels unavailable on this host");
    current();  // make sure the once-flag is consumed first
    g_isa.store(isa);
}

cplx permanent(const cplx* a, int n) {
#if defined(LOQC_HAVE_AVX2)
    if (current() == Isa::avx2) return permanent_avx2(a, n);
#endif
    return permanent_scalar(a, n);
}

void permanent_batch(const cplx* const* mats, int n, int count, cplx* out) {
#if defined(LOQC_HAVE_AVX2)
    if (current() == Isa::avx2) {
        permanent_batch_avx2(mats, n, count, out);
        return;
    }
#endif
    permanent_batch_scalar(mats, n, count, out);
}

}  // namespace loqc::kernels
