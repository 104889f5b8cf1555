// Copyright 2026-present the uqsd project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "uqsd/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace uqsd::kernels {

namespace scalar {

cplx cdotc(std::size_t n, const cplx* x, const cplx* y) {
    cplx sum(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        sum += std::conj(x[k]) * y[k];
    }
    return sum;
}

void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    for (std::size_t k = 0; k < n; ++k) {
        y[k] += alpha * x[k];
    }
}

void cpair_update(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y) {
    for (std::size_t k = 0; k < n; ++k) {
        const cplx xk = x[k];
        const cplx yk = y[k];
        x[k] = a * xk + b * yk;
        y[k] = c * xk + d * yk;
    }
}

}  // namespace scalar

#if defined(UQSD_HAVE_AVX2)
namespace avx2 {
cplx cdotc(std::size_t n, const cplx* x, const cplx* y);
void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);
void cpair_update(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y);
}  // namespace avx2
#endif

namespace {

struct Dispatch {
    cplx (*cdotc)(std::size_t, const cplx*, const cplx*);
    void (*caxpy)(std::size_t, cplx, const cplx*, cplx*);
    void (*cpair_update)(std::size_t, cplx, cplx, cplx, cplx, cplx*, cplx*);
    Backend backend;
};

constexpr Dispatch kScalarTable{scalar::cdotc, scalar::caxpy, scalar::cpair_update,
                                Backend::scalar};

#if defined(UQSD_HAVE_AVX2)
constexpr Dispatch kAvx2Table{avx2::cdotc, avx2::caxpy, avx2::cpair_update, Backend::avx2};
#endif

bool cpu_has_avx2() {
#if defined(UQSD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Dispatch* table_for(Backend b) {
    switch (b) {
        case Backend::scalar:
            return &kScalarTable;
        case Backend::avx2:
#if defined(UQSD_HAVE_AVX2)
            return &kAvx2Table;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

const Dispatch* select_default() {
    const char* env = std::getenv("UQSD_KERNELS");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return &kScalarTable;
#if defined(UQSD_HAVE_AVX2)
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return &kAvx2Table;
#endif
    }
#if defined(UQSD_HAVE_AVX2)
    if (cpu_has_avx2()) return &kAvx2Table;
#endif
    return &kScalarTable;
}

const Dispatch*& active_table() {
    static const Dispatch* table = select_default();
    return table;
}

}  // namespace

cplx cdotc(std::size_t n, const cplx* x, const cplx* y) {
    return active_table()->cdotc(n, x, y);
}

void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    active_table()->caxpy(n, alpha, x, y);
}

void cpair_update(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y) {
    active_table()->cpair_update(n, a, b, c, d, x, y);
}

Backend active_backend() {
    return active_table()->backend;
}

bool backend_available(Backend b) {
    if (b == Backend::avx2 && !cpu_has_avx2()) return false;
    return table_for(b) != nullptr;
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar:
            return "scalar";
        case Backend::avx2:
            return "avx2";
    }
    return "unknown";
}

void set_backend(Backend b) {
    if (!backend_available(b)) {
        throw std::invalid_argument(std::string("kernel backend unavailable: ") +
                                    backend_name(b));
    }
    active_table() = table_for(b);
}

}  // namespace uqsd::kernels
