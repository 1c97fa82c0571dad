// AVX2 backend for the byte-plane kernels.  This translation unit is the
// only one compiled with -mavx2; callers reach it through the runtime
// dispatch in kernels.cpp, so binaries stay usable on CPUs without AVX2.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

namespace amzv::kern {

namespace {

// Conditional subtract of p on bytes known to lie in [0, 2p) with 2p < 256:
// min(v, v - p) picks v when v < p (v - p wraps to a large byte) and v - p
// otherwise.
inline __m256i reduce_once(__m256i v, __m256i vp) {
    return _mm256_min_epu8(v, _mm256_sub_epi8(v, vp));
}

}  // namespace

void axpy_avx2(uint8_t* y, const uint8_t* x, size_t len, uint8_t m, uint8_t p) {
    // Products m*x for x in [0, p) come from a 16-entry lookup table applied
    // with PSHUFB (digits are < p <= 13, so they are valid nibble indices).
    // Table entries are pre-reduced mod p, so the accumulate step only needs
    // one conditional subtract.
    alignas(32) uint8_t table[32];
    for (int v = 0; v < 16; ++v) {
        uint8_t prod = uint8_t((m * v) % p);
        table[v] = prod;
        table[16 + v] = prod;  // same table in both 128-bit lanes
    }
    const __m256i lut = _mm256_load_si256(reinterpret_cast<const __m256i*>(table));
    const __m256i vp = _mm256_set1_epi8(char(p));
    size_t i = 0;
    for (; i + 32 <= len; i += 32) {
        __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
        __m256i yv = _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + i));
        __m256i prod = _mm256_shuffle_epi8(lut, xv);
        __m256i sum = reduce_once(_mm256_add_epi8(yv, prod), vp);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), sum);
    }
    for (; i < len; ++i) y[i] = uint8_t((y[i] + m * x[i]) % p);
}

void add_avx2(uint8_t* y, const uint8_t* x, size_t len, uint8_t p) {
    const __m256i vp = _mm256_set1_epi8(char(p));
    size_t i = 0;
    for (; i + 32 <= len; i += 32) {
        __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
        __m256i yv = _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + i));
        __m256i sum = reduce_once(_mm256_add_epi8(yv, xv), vp);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), sum);
    }
    for (; i < len; ++i) {
        uint8_t s = uint8_t(y[i] + x[i]);
        y[i] = s >= p ? uint8_t(s - p) : s;
    }
}

}  // namespace amzv::kern
