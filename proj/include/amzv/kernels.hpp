#pragma once

#include <cstddef>
#include <cstdint>

namespace amzv::kern {

// Byte-plane kernels over the prime field F_p, p <= 13.
//
// Truncated-series multiplication decomposes F_{p^n} coefficient arrays into
// n planes of base-p digits (one uint8_t per digit, residues in [0, p)); the
// convolution inner loop then becomes repeated fused multiply-accumulate of
// a plane by a fixed scalar.  These two routines are that inner loop.  A
// scalar reference implementation always exists; an AVX2 variant is chosen
// at runtime when the CPU supports it.  The environment variable
// AMZV_KERNEL=scalar|avx2 forces a backend (an unavailable forced backend
// falls back to scalar; active_backend() reports the truth).

/// y[i] <- (y[i] + m*x[i]) mod p for i < len.  Requires m < p <= 13.
void axpy(uint8_t* y, const uint8_t* x, size_t len, uint8_t m, uint8_t p);

/// y[i] <- (y[i] + x[i]) mod p for i < len.  Requires p <= 13.
void add(uint8_t* y, const uint8_t* x, size_t len, uint8_t p);

// Direct access to the individual backends, used by the equivalence tests.
void axpy_scalar(uint8_t* y, const uint8_t* x, size_t len, uint8_t m, uint8_t p);
void add_scalar(uint8_t* y, const uint8_t* x, size_t len, uint8_t p);
void axpy_avx2(uint8_t* y, const uint8_t* x, size_t len, uint8_t m, uint8_t p);
void add_avx2(uint8_t* y, const uint8_t* x, size_t len, uint8_t p);

/// True when the AVX2 backend is compiled in and the CPU supports it.
bool avx2_supported();

/// Name of the backend the dispatched entry points currently use.
const char* active_backend();

}  // namespace amzv::kern
