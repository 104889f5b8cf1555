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

// AVX2+FMA kernel variants. Two interleaved complex doubles per 256-bit
// register; tails fall back to the scalar expressions.

#include "uqsd/kernels.hpp"

#include <immintrin.h>

namespace uqsd::kernels::avx2 {

namespace {

// (re + i*im) * v for broadcast scalar re/im and interleaved complex v.
inline __m256d cmul_broadcast(__m256d re, __m256d im, __m256d v) {
    const __m256d vswap = _mm256_permute_pd(v, 0x5);
    return _mm256_fmaddsub_pd(re, v, _mm256_mul_pd(im, vswap));
}

}  // namespace

cplx cdotc(std::size_t n, const cplx* x, const cplx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d vx = _mm256_loadu_pd(xp + 2 * k);
        const __m256d vy = _mm256_loadu_pd(yp + 2 * k);
        const __m256d xre = _mm256_movedup_pd(vx);
        const __m256d xim = _mm256_permute_pd(vx, 0xF);
        const __m256d yswap = _mm256_permute_pd(vy, 0x5);
        // even lane: re(x)*re(y) + im(x)*im(y); odd: re(x)*im(y) - im(x)*re(y)
        acc = _mm256_add_pd(acc, _mm256_fmsubadd_pd(xre, vy, _mm256_mul_pd(xim, yswap)));
    }
    alignas(32) double buf[4];
    _mm256_store_pd(buf, acc);
    cplx sum(buf[0] + buf[2], buf[1] + buf[3]);
    for (; k < n; ++k) {
        sum += std::conj(x[k]) * y[k];
    }
    return sum;
}

void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const __m256d are = _mm256_set1_pd(alpha.real());
    const __m256d aim = _mm256_set1_pd(alpha.imag());
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d vx = _mm256_loadu_pd(xp + 2 * k);
        const __m256d vy = _mm256_loadu_pd(yp + 2 * k);
        _mm256_storeu_pd(yp + 2 * k, _mm256_add_pd(vy, cmul_broadcast(are, aim, vx)));
    }
    for (; k < n; ++k) {
        y[k] += alpha * x[k];
    }
}

void cpair_update(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y) {
    const __m256d are = _mm256_set1_pd(a.real());
    const __m256d aim = _mm256_set1_pd(a.imag());
    const __m256d bre = _mm256_set1_pd(b.real());
    const __m256d bim = _mm256_set1_pd(b.imag());
    const __m256d cre = _mm256_set1_pd(c.real());
    const __m256d cim = _mm256_set1_pd(c.imag());
    const __m256d dre = _mm256_set1_pd(d.real());
    const __m256d dim_ = _mm256_set1_pd(d.imag());
    double* xp = reinterpret_cast<double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d vx = _mm256_loadu_pd(xp + 2 * k);
        const __m256d vy = _mm256_loadu_pd(yp + 2 * k);
        const __m256d nx = _mm256_add_pd(cmul_broadcast(are, aim, vx),
                                         cmul_broadcast(bre, bim, vy));
        const __m256d ny = _mm256_add_pd(cmul_broadcast(cre, cim, vx),
                                         cmul_broadcast(dre, dim_, vy));
        _mm256_storeu_pd(xp + 2 * k, nx);
        _mm256_storeu_pd(yp + 2 * k, ny);
    }
    for (; k < n; ++k) {
        const cplx xk = x[k];
        const cplx yk = y[k];
        x[k] = a * xk + b * yk;
        y[k] = c * xk + d * yk;
    }
}

}  // namespace uqsd::kernels::avx2
