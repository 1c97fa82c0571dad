#include "amzv/relations.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "amzv/errors.hpp"
#include "amzv/shuffle.hpp"

namespace amzv {

namespace {

// Compositions of `weight` into at most max_depth positive parts.
void compositions(uint32_t rem, uint32_t max_depth, std::vector<uint32_t>& cur,
                  std::vector<std::vector<uint32_t>>& out) {
    if (rem == 0) {
        if (!cur.empty()) out.push_back(cur);
        return;
    }
    if (cur.size() == max_depth) return;
    for (uint32_t s = 1; s <= rem; ++s) {
        cur.push_back(s);
        compositions(rem - s, max_depth, cur, out);
        cur.pop_back();
    }
}

bool all_zero(const std::vector<Field::Code>& v) {
    for (Field::Code x : v)
        if (x) return false;
    return true;
}

}  // namespace

std::vector<Index> enumerate_indices(uint32_t weight, uint32_t max_depth, uint32_t q) {
    if (weight == 0) throw UsageError("index enumeration needs weight >= 1");
    if (max_depth == 0) throw UsageError("index enumeration needs depth >= 1");
    if (q < 2) throw UsageError("index enumeration needs q >= 2");
    std::vector<std::vector<uint32_t>> comps;
    std::vector<uint32_t> cur;
    compositions(weight, max_depth, cur, comps);

    const uint64_t ne = q - 1;
    std::vector<Index> out;
    for (const auto& s : comps) {
        uint64_t total = 1;
        for (size_t i = 0; i < s.size(); ++i) total *= ne;
        for (uint64_t mask = 0; mask < total; ++mask) {
            Index idx;
            idx.s = s;
            idx.eps.resize(s.size());
            uint64_t m = mask;
            for (size_t i = 0; i < s.size(); ++i) {
                idx.eps[i] = uint32_t(m % ne);
                m /= ne;
            }
            out.push_back(std::move(idx));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Index& a, const Index& b) { return IndexLess{}(a, b); });
    return out;
}

std::vector<std::pair<Index, Index>> enumerate_products(uint32_t weight, uint32_t max_depth,
                                                        uint32_t q) {
    if (weight == 0) throw UsageError("product enumeration needs weight >= 1");
    std::vector<std::pair<Index, Index>> out;
    for (uint32_t w1 = 1; 2 * w1 <= weight; ++w1) {
        const uint32_t w2 = weight - w1;
        const auto A = enumerate_indices(w1, std::min<uint32_t>(2, w1), q);
        const auto B = enumerate_indices(w2, std::min<uint32_t>(2, w2), q);
        for (const Index& a : A)
            for (const Index& b : B) {
                // Products are commutative, so each unordered pair enters once.
                if (w1 == w2 && IndexLess{}(b, a)) continue;
                // Expansion terms have depth at most depth(a)+depth(b); keep
                // only pairs whose expansion stays inside the singles basis.
                if (a.s.size() + b.s.size() > max_depth) continue;
                out.emplace_back(a, b);
            }
    }
    return out;
}

size_t RelationScan::stable_count() const {
    size_t n = 0;
    for (const auto& r : relations) n += r.stable ? 1 : 0;
    return n;
}

size_t RelationScan::certified_count() const {
    size_t n = 0;
    for (const auto& r : relations) n += r.certified ? 1 : 0;
    return n;
}

Mat digit_matrix(const Field& Fp, const Field& F, const std::vector<USeries>& values,
                 const std::vector<int>& shifts) {
    if (values.empty()) throw UsageError("relation matrix needs at least one value");
    if (shifts.size() != values.size())
        throw UsageError("relation matrix needs one shift bound per value");
    int max_shift = 0;
    for (int s : shifts) {
        if (s < 0) throw UsageError("relation matrix needs shift bounds >= 0");
        max_shift = std::max(max_shift, s);
    }
    const int64_t w = int64_t(F.q()) - 1;
    int64_t lo = std::numeric_limits<int64_t>::max();
    int64_t hi = std::numeric_limits<int64_t>::max();
    for (const auto& v : values) {
        lo = std::min(lo, v.val_floor());
        hi = std::min(hi, v.prec());
    }
    lo -= w * max_shift;
    hi -= w * max_shift;
    if (hi <= lo) throw PrecisionError("no common digit window for the relation matrix");

    const uint32_t planes = F.n();
    const uint32_t p = F.p();
    size_t cols = 0;
    for (int s : shifts) cols += size_t(s) + 1;
    const size_t rows = size_t(hi - lo) * planes;
    Mat m(Fp, rows, cols);
    size_t c = 0;
    for (size_t i = 0; i < values.size(); ++i) {
        for (int j = 0; j <= shifts[i]; ++j, ++c) {
            for (int64_t k = lo; k < hi; ++k) {
                // theta^j shifts u-exponents down by j(q-1), so row k of the
                // column reads the value's digit at k + j(q-1).
                Field::Code dig = values[i].digit(k + w * j);
                for (uint32_t t = 0; t < planes; ++t) {
                    m.at(size_t(k - lo) * planes + t, c) = dig % p;
                    dig /= p;
                }
            }
        }
    }
    return m;
}

Mat digit_matrix(const Field& Fp, const Field& F, const std::vector<USeries>& values,
                 int max_shift) {
    if (max_shift < 0) throw UsageError("relation matrix needs max_shift >= 0");
    return digit_matrix(Fp, F, values, std::vector<int>(values.size(), max_shift));
}

std::vector<std::vector<Field::Code>> shuffle_route_rows(
    uint32_t p, uint32_t e, const std::vector<Index>& indices,
    const std::vector<std::pair<Index, Index>>& products, int max_shift) {
    ShuffleEngine sh(p, e);
    std::map<Index, size_t, IndexLess> pos;
    for (size_t i = 0; i < indices.size(); ++i) pos.emplace(indices[i], i);
    const size_t stride = size_t(max_shift) + 1;
    const size_t width = indices.size() * stride + products.size();

    std::vector<std::vector<Field::Code>> rows;
    rows.reserve(products.size());
    for (size_t k = 0; k < products.size(); ++k) {
        const LinComb expansion = sh.zeta_product(products[k].first, products[k].second);
        std::vector<Field::Code> v(width, 0);
        v[indices.size() * stride + k] = 1;
        bool inside = true;
        for (const auto& [idx, cf] : expansion.terms) {
            auto it = pos.find(idx);
            if (it == pos.end()) {  // expansion escapes the scanned basis
                inside = false;
                break;
            }
            // zeta(a)*zeta(b) - sum of cf_i * zeta_i = 0: singles negated.
            v[it->second * stride] = (p - cf % p) % p;
        }
        if (inside) rows.push_back(std::move(v));
    }
    return rows;
}

bool in_row_span(const Field& Fp, const std::vector<std::vector<Field::Code>>& rows,
                 const std::vector<Field::Code>& v) {
    if (all_zero(v)) return true;
    if (rows.empty()) return false;
    const size_t cols = v.size();
    Mat base(Fp, rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw UsageError("span rows of mismatched length");
        for (size_t c = 0; c < cols; ++c) base.at(r, c) = rows[r][c];
    }
    Mat aug(Fp, rows.size() + 1, cols);
    aug.a.assign(base.a.begin(), base.a.end());
    aug.a.insert(aug.a.end(), v.begin(), v.end());
    const size_t rank0 = rref(base).size();
    const size_t rank1 = rref(aug).size();
    return rank0 == rank1;
}

RelationScan find_relations(const FieldPtr& F, uint32_t weight, uint32_t max_depth,
                            int64_t prec, uint64_t budget, int max_shift) {
    RelationScan scan;
    scan.indices = enumerate_indices(weight, max_depth, F->q());
    scan.products = enumerate_products(weight, max_depth, F->q());
    scan.max_shift = max_shift;
    scan.prec = prec;
    scan.recheck_prec = 2 * prec;
    FieldPtr Fp = make_field(F->p(), 1, 1);

    auto values_at = [&](int64_t pr) {
        PowerSumEngine eng(F, pr, budget);
        std::vector<USeries> vals;
        vals.reserve(scan.indices.size() + scan.products.size());
        for (const auto& idx : scan.indices) vals.push_back(eng.zeta(idx).value);
        for (const auto& [a, b] : scan.products)
            vals.push_back(eng.zeta(a).value * eng.zeta(b).value);
        return vals;
    };
    std::vector<int> shifts(scan.indices.size(), max_shift);
    shifts.insert(shifts.end(), scan.products.size(), 0);

    Mat m = digit_matrix(*Fp, *F, values_at(prec), shifts);
    Mat m2 = digit_matrix(*Fp, *F, values_at(scan.recheck_prec), shifts);
    const auto ker = nullspace(m);
    const auto routes =
        shuffle_route_rows(F->p(), F->e(), scan.indices, scan.products, max_shift);

    // A route the digits reject means the symbolic engine and the numeric
    // evaluator disagree; it is counted, never silently dropped, and it does
    // not enter the certified basis.
    std::vector<std::vector<Field::Code>> good;
    good.reserve(routes.size());
    for (const auto& rt : routes) {
        if (all_zero(matvec(m, rt)))
            good.push_back(rt);
        else
            ++scan.missed_symbolic;
    }

    // Re-express the kernel so the certified directions appear as explicit
    // basis vectors: first a basis of the verified route span, then numeric
    // kernel vectors extending it to the whole nullspace.
    std::vector<std::vector<Field::Code>> basis;
    auto try_add = [&](const std::vector<Field::Code>& v, bool certified) {
        if (in_row_span(*Fp, basis, v)) return;
        Relation r;
        r.v = v;
        r.stable = all_zero(matvec(m2, v));
        r.certified = certified;
        basis.push_back(v);
        scan.relations.push_back(std::move(r));
    };
    for (const auto& rt : good) try_add(rt, true);
    for (const auto& k : ker) try_add(k, false);
    return scan;
}

bool planted_dependency_found(const FieldPtr& F, uint32_t weight, uint32_t max_depth,
                              int64_t prec, uint64_t budget, int max_shift) {
    auto indices = enumerate_indices(weight, max_depth, F->q());
    if (indices.size() < 2 || max_shift < 1)
        throw UsageError("planting a dependency needs two indices and max_shift >= 1");
    FieldPtr Fp = make_field(F->p(), 1, 1);

    PowerSumEngine eng(F, prec, budget);
    std::vector<USeries> vals;
    vals.reserve(indices.size() + 1);
    for (const auto& idx : indices) vals.push_back(eng.zeta(idx).value);

    // Plant y = zeta_0 + c * theta * zeta_1 as one extra unshifted column.
    const uint32_t p = F->p();
    const Field::Code c = p > 2 ? F->from_int(2) : F->from_int(1);
    const int64_t w = int64_t(F->q()) - 1;
    vals.push_back(vals[0] + vals[1].shifted(-w).scaled(c));
    std::vector<int> shifts(indices.size(), max_shift);
    shifts.push_back(0);

    // Both kernels are read off the same matrix (the base drops the last
    // column), so they share one digit window.  The planted column is an
    // exact digitwise combination of two columns already present, hence the
    // rank cannot move and the kernel must grow by exactly one.
    const Mat mp = digit_matrix(*Fp, *F, vals, shifts);
    Mat mb(*Fp, mp.rows, mp.cols - 1);
    for (size_t r = 0; r < mp.rows; ++r)
        for (size_t cc = 0; cc + 1 < mp.cols; ++cc) mb.at(r, cc) = mp.at(r, cc);
    const size_t dim0 = nullspace(std::move(mb)).size();
    const auto ker = nullspace(mp);
    if (ker.size() != dim0 + 1) return false;

    const size_t stride = size_t(max_shift) + 1;
    std::vector<Field::Code> want(mp.cols, 0);
    want[0 * stride + 0] = 1;
    want[1 * stride + 1] = p > 2 ? 2 : 1;
    want[mp.cols - 1] = p - 1;
    return in_row_span(*Fp, ker, want);
}

}  // namespace amzv
