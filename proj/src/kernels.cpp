#include "amzv/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "amzv/errors.hpp"

namespace amzv::kern {

void axpy_scalar(uint8_t* y, const uint8_t* x, size_t len, uint8_t m, uint8_t p) {
    // digits are < p <= 13, so m*x + y <= 12*12 + 12 stays well inside int.
    for (size_t i = 0; i < len; ++i) y[i] = uint8_t((y[i] + m * x[i]) % p);
}

void add_scalar(uint8_t* y, const uint8_t* x, size_t len, uint8_t p) {
    for (size_t i = 0; i < len; ++i) {
        uint8_t s = uint8_t(y[i] + x[i]);
        y[i] = s >= p ? uint8_t(s - p) : s;
    }
}

#if !defined(AMZV_HAVE_AVX2_TU)
// Non-x86 build: keep the symbols so tests link; they must never be called.
void axpy_avx2(uint8_t*, const uint8_t*, size_t, uint8_t, uint8_t) {
    throw GuardError("kernels: AVX2 backend not compiled in");
}
void add_avx2(uint8_t*, const uint8_t*, size_t, uint8_t) {
    throw GuardError("kernels: AVX2 backend not compiled in");
}
#endif

namespace {

bool cpu_has_avx2() {
#if defined(AMZV_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

struct Dispatch {
    void (*axpy)(uint8_t*, const uint8_t*, size_t, uint8_t, uint8_t);
    void (*add)(uint8_t*, const uint8_t*, size_t, uint8_t);
    const char* name;
};

Dispatch pick_backend() {
    bool want_avx2 = cpu_has_avx2();
    if (const char* env = std::getenv("AMZV_KERNEL")) {
        if (!std::strcmp(env, "scalar")) {
            want_avx2 = false;
        } else if (!std::strcmp(env, "avx2")) {
            want_avx2 = cpu_has_avx2();  // forced but unavailable -> scalar
        } else {
            throw UsageError(std::string("AMZV_KERNEL: unknown backend '") + env + "'");
        }
    }
    if (want_avx2) return {&axpy_avx2, &add_avx2, "avx2"};
    return {&axpy_scalar, &add_scalar, "scalar"};
}

const Dispatch& backend() {
    static const Dispatch d = pick_backend();
    return d;
}

}  // namespace

void axpy(uint8_t* y, const uint8_t* x, size_t len, uint8_t m, uint8_t p) {
    backend().axpy(y, x, len, m, p);
}

void add(uint8_t* y, const uint8_t* x, size_t len, uint8_t p) {
    backend().add(y, x, len, p);
}

bool avx2_supported() { return cpu_has_avx2(); }

const char* active_backend() { return backend().name; }

}  // namespace amzv::kern
