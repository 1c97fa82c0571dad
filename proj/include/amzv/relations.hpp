#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "amzv/index.hpp"
#include "amzv/linalg.hpp"
#include "amzv/powersums.hpp"

namespace amzv {

/// Every composite index of the given weight with depth at most max_depth,
/// characters ranging over all exponents modulo q-1, in canonical order.
std::vector<Index> enumerate_indices(uint32_t weight, uint32_t max_depth, uint32_t q);

/// Factor pairs (a, b) with wt(a) + wt(b) = weight whose evaluated products
/// zeta(a)*zeta(b) join the relation scan as extra value columns.  Factors
/// have depth <= 2 and combined depth <= max_depth, so every term of the
/// symbolic expansion of the product stays inside
/// enumerate_indices(weight, max_depth, q).  Each unordered pair appears
/// once, in deterministic order.
std::vector<std::pair<Index, Index>> enumerate_products(uint32_t weight, uint32_t max_depth,
                                                        uint32_t q);

/// One F_p[theta]-linear dependency among the scanned values.  The flat
/// vector v has one block of max_shift+1 entries per single index — entry
/// i*(max_shift+1)+j is the coefficient of theta^j * zeta(indices[i]) —
/// followed by one trailing entry per evaluated product zeta(a)*zeta(b).
struct Relation {
    std::vector<Field::Code> v;
    bool stable = false;     ///< still in the kernel at doubled precision
    bool certified = false;  ///< lies in the span of shuffle-expansion identities
};

struct RelationScan {
    std::vector<Index> indices;
    std::vector<std::pair<Index, Index>> products;
    int max_shift = 0;
    int64_t prec = 0;
    int64_t recheck_prec = 0;
    /// Kernel of the digit matrix on a basis that leads with the verified
    /// shuffle identities (certified) and completes with numeric vectors.
    std::vector<Relation> relations;
    /// Shuffle identities the numeric kernel rejected (must stay empty: a
    /// miss means the symbolic engine and the evaluator disagree).
    size_t missed_symbolic = 0;

    size_t stable_count() const;
    size_t certified_count() const;
    /// Width of every Relation::v: singles blocks plus product columns.
    size_t cols() const { return indices.size() * size_t(max_shift + 1) + products.size(); }
};

/// Digit matrix over the prime field whose right kernel consists of the
/// F_p-dependencies among theta-shifted copies of the values: value i
/// contributes the columns theta^j * values[i] for 0 <= j <= shifts[i], each
/// column holding the base-p coordinate planes of every u-digit of the
/// shifted value over a window common to all columns.
Mat digit_matrix(const Field& Fp, const Field& F, const std::vector<USeries>& values,
                 const std::vector<int>& shifts);

/// Same with one uniform shift bound: column i*(max_shift+1)+j holds the
/// digit planes of theta^j * values[i].
Mat digit_matrix(const Field& Fp, const Field& F, const std::vector<USeries>& values,
                 int max_shift);

/// Exact identities from the shuffle algebra, in Relation::v layout: for
/// each factor pair, zeta(a)*zeta(b) minus its symbolic expansion into
/// single values vanishes, giving a row with +1 on the product column and
/// the negated expansion coefficients on the theta^0 slots of the singles.
std::vector<std::vector<Field::Code>> shuffle_route_rows(
    uint32_t p, uint32_t e, const std::vector<Index>& indices,
    const std::vector<std::pair<Index, Index>>& products, int max_shift);

/// True when v lies in the F_p row span of rows.
bool in_row_span(const Field& Fp, const std::vector<std::vector<Field::Code>>& rows,
                 const std::vector<Field::Code>& v);

/// Full scan at one weight: evaluate every index and every factor-pair
/// product, extract the kernel of the digit matrix, and re-express it on a
/// basis whose leading vectors are the shuffle identities confirmed by the
/// digits (flagged certified) and whose remainder is numeric-only.  Every
/// basis vector is re-verified against values recomputed at doubled
/// precision; survivors are flagged stable, the rest stay listed as numeric
/// artifacts rather than being dropped.
RelationScan find_relations(const FieldPtr& F, uint32_t weight, uint32_t max_depth,
                            int64_t prec, uint64_t budget, int max_shift = 3);

/// Soundness probe for the scan itself: append one synthetic column built
/// as a known F_p[theta]-combination of genuine values, then compare the
/// kernels of the same digit matrix with and without that column.  True
/// when the planted dependency is recovered: the kernel grows by exactly
/// one dimension and contains the planted vector.
bool planted_dependency_found(const FieldPtr& F, uint32_t weight, uint32_t max_depth,
                              int64_t prec, uint64_t budget, int max_shift = 3);

}  // namespace amzv
