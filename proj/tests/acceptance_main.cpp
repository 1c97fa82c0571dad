// Acceptance battery: one line per criterion, nonzero exit on any failure.
#include <cstdlib>
#include <iostream>

#include "amzv/selftest.hpp"

int main() {
    uint64_t budget = uint64_t(1) << 24;
    if (const char* env = std::getenv("AMZV_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) budget = v;
    }
    auto results = amzv::run_acceptance(std::cout, budget);
    const bool ok = amzv::all_pass(results);
    std::cout << (ok ? "acceptance: all 13 criteria passed"
                     : "acceptance: FAILURES present")
              << std::endl;
    return ok ? 0 : 1;
}
