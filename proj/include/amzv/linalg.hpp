#pragma once

#include <cstdint>
#include <vector>

#include "amzv/field.hpp"

namespace amzv {

/// Dense row-major matrix over a table-backed finite field.
struct Mat {
    const Field* F = nullptr;
    size_t rows = 0, cols = 0;
    std::vector<Field::Code> a;

    Mat() = default;
    Mat(const Field& field, size_t r, size_t c) : F(&field), rows(r), cols(c), a(r * c, 0) {}
    Field::Code& at(size_t r, size_t c) { return a[r * cols + c]; }
    Field::Code at(size_t r, size_t c) const { return a[r * cols + c]; }
};

/// In-place reduced row echelon form; returns the pivot columns in order.
std::vector<size_t> rref(Mat& m);

/// Basis of the right kernel {x : m x = 0}, each vector of length m.cols.
std::vector<std::vector<Field::Code>> nullspace(Mat m);

struct SolveResult {
    bool consistent = false;
    bool unique = false;
    std::vector<Field::Code> x;  // one solution when consistent
};

/// Solves m x = b by elimination on the augmented matrix.
SolveResult solve(Mat m, const std::vector<Field::Code>& b);

/// Applies m to x.
std::vector<Field::Code> matvec(const Mat& m, const std::vector<Field::Code>& x);

}  // namespace amzv
