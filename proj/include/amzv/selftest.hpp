#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace amzv {

/// Outcome of one acceptance criterion: a stable number, a short name, the
/// pass/fail verdict, a metrics string, and the wall time it took.
struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the full acceptance battery in order, streaming one line per
/// criterion to `out` as it completes.  Exceptions inside a criterion fail
/// that criterion (with the message as detail) and the battery continues.
std::vector<CriterionResult> run_acceptance(std::ostream& out, uint64_t budget);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace amzv
