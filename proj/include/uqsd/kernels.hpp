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

#ifndef UQSD_KERNELS_HPP
#define UQSD_KERNELS_HPP

#include <complex>
#include <cstddef>

namespace uqsd::kernels {

using cplx = std::complex<double>;

/// Vector kernels behind the dense linear algebra. Each has a scalar
/// reference implementation and, on x86-64 with AVX2+FMA, a vectorized
/// variant selected at startup. The variants are equivalence-tested
/// against the scalar reference; they may differ by FMA rounding only.
enum class Backend { scalar, avx2 };

// sum_k conj(x[k]) * y[k]
cplx cdotc(std::size_t n, const cplx* x, const cplx* y);

// y[k] += alpha * x[k]; x and y must not alias
void caxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y);

// (x[k], y[k]) <- (a*x[k] + b*y[k], c*x[k] + d*y[k]); x and y must not alias
void cpair_update(std::size_t n, cplx a, cplx b, cplx c, cplx d, cplx* x, cplx* y);

Backend active_backend();
bool backend_available(Backend b);
const char* backend_name(Backend b);

// Forces a backend (used by the equivalence tests and the UQSD_KERNELS
// env override). Throws std::invalid_argument if unavailable. Not safe
// to call concurrently with kernel use.
void set_backend(Backend b);

}  // namespace uqsd::kernels

#endif  // UQSD_KERNELS_HPP
