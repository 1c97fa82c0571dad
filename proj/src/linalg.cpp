#include "amzv/linalg.hpp"

#include "amzv/errors.hpp"

namespace amzv {

std::vector<size_t> rref(Mat& m) {
    const Field& F = *m.F;
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        size_t pr = row;
        while (pr < m.rows && m.at(pr, col) == 0) ++pr;
        if (pr == m.rows) continue;
        if (pr != row)
            for (size_t c = 0; c < m.cols; ++c) std::swap(m.at(pr, c), m.at(row, c));
        Field::Code inv = F.inv(m.at(row, col));
        for (size_t c = col; c < m.cols; ++c) m.at(row, c) = F.mul(m.at(row, c), inv);
        for (size_t r = 0; r < m.rows; ++r) {
            if (r == row) continue;
            Field::Code f = m.at(r, col);
            if (!f) continue;
            for (size_t c = col; c < m.cols; ++c)
                m.at(r, c) = F.sub(m.at(r, c), F.mul(f, m.at(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<Field::Code>> nullspace(Mat m) {
    const Field& F = *m.F;
    std::vector<size_t> pivots = rref(m);
    std::vector<uint8_t> is_pivot(m.cols, 0);
    for (size_t c : pivots) is_pivot[c] = 1;
    std::vector<std::vector<Field::Code>> basis;
    for (size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Field::Code> v(m.cols, 0);
        v[free] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(m.at(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

SolveResult solve(Mat m, const std::vector<Field::Code>& b) {
    if (b.size() != m.rows) throw GuardError("solve: rhs length mismatch");
    Mat aug(*m.F, m.rows, m.cols + 1);
    for (size_t r = 0; r < m.rows; ++r) {
        for (size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols) = b[r];
    }
    std::vector<size_t> pivots = rref(aug);
    SolveResult res;
    res.consistent = pivots.empty() || pivots.back() != m.cols;
    if (!res.consistent) return res;
    res.unique = pivots.size() == m.cols;
    res.x.assign(m.cols, 0);
    for (size_t i = 0; i < pivots.size(); ++i) res.x[pivots[i]] = aug.at(i, m.cols);
    return res;
}

std::vector<Field::Code> matvec(const Mat& m, const std::vector<Field::Code>& x) {
    if (x.size() != m.cols) throw GuardError("matvec: length mismatch");
    const Field& F = *m.F;
    std::vector<Field::Code> y(m.rows, 0);
    for (size_t r = 0; r < m.rows; ++r) {
        Field::Code acc = 0;
        for (size_t c = 0; c < m.cols; ++c)
            if (m.at(r, c) && x[c]) acc = F.add(acc, F.mul(m.at(r, c), x[c]));
        y[r] = acc;
    }
    return y;
}

}  // namespace amzv
