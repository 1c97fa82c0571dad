#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "amzv/index.hpp"
#include "amzv/powersums.hpp"

namespace amzv {

/// Symbolic product expansion for power sums and multizeta values.
///
/// Everything reduces to two facts.  First, a same-degree product of
/// depth-one power sums regroups as
///
///   S_d(s1;e1) S_d(s2;e2) = S_d(s1+s2; e1 e2)
///       + sum over 0 < j < s1+s2, (q-1) | j of
///           Delta^j_{s1,s2} S_d(s1+s2-j, j; e1 e2, 1),
///
/// with Delta^j_{s1,s2} = (-1)^{s1-1} C(j-1, s1-1) + (-1)^{s2-1} C(j-1, s2-1)
/// taken mod p — coefficients independent of d.  Second, products of strict
/// partial sums S_{<d} recurse on leading degrees: split the pair of top
/// layers into "a leads", "b leads", and "equal layers", where the equal
/// case feeds back into the first fact.  Both recursions are memoised; all
/// identities they emit hold for every degree d simultaneously, which is
/// what makes the zeta-level expansion exact.
///
/// Engines are cheap to construct but keep memo tables, so reuse one per
/// (p, e) when expanding many products.  Not thread-safe.
class ShuffleEngine {
  public:
    ShuffleEngine(uint32_t p, uint32_t e);

    uint32_t p() const { return p_; }
    uint32_t q() const { return q_; }

    /// Regrouping coefficient Delta^j_{s1,s2} mod p.
    uint32_t regroup_delta(uint32_t j, uint32_t s1, uint32_t s2) const;

    /// S_d(s1;e1)*S_d(s2;e2) as a combination of composite S_d terms.
    LinComb depth1_sd_product(uint32_t s1, uint32_t e1, uint32_t s2, uint32_t e2);

    /// S_{<d}(a)*S_{<d}(b) as a combination of S_{<d} terms (valid for all d).
    LinComb sless_product(const Index& a, const Index& b);

    /// S_d(a)*S_d(b) as a combination of S_d terms (valid for all d).
    LinComb sd_product(const Index& a, const Index& b);

    /// zeta(a)*zeta(b) as a combination of zeta terms.
    LinComb zeta_product(const Index& a, const Index& b);

    /// Closed-form expansion of zeta(a1,a2)*zeta(b1): independent of the
    /// recursive engine, used to cross-check it.
    LinComb closed_form_2x1(const Index& a, const Index& b);

  private:
    uint32_t p_, e_, q_;
    std::map<std::pair<Index, Index>, LinComb, bool (*)(const std::pair<Index, Index>&,
                                                        const std::pair<Index, Index>&)>
        sless_memo_;

    LinComb sless_product_uncached(const Index& a, const Index& b);
};

/// Grading facts every expansion of zeta(a)*zeta(b) must satisfy: constant
/// weight, conserved character product, depth at most depth(a)+depth(b).
bool check_grading(const Index& a, const Index& b, const LinComb& combo, uint32_t q);

/// Numeric certificate for "sum of zeta(a_i)*zeta(b_i) equals combo".
struct VerifyReport {
    int64_t product_valuation = 0;   ///< valuation floor of the product side
    int64_t residual_valuation = 0;  ///< valuation floor of product - combo
    int64_t common_prec = 0;
    int64_t significant_digits = 0;  ///< residual minus product valuation
    bool zero_to_prec = false;       ///< residual vanished through the window
};

VerifyReport verify_lincomb(PowerSumEngine& eng,
                            const std::vector<std::pair<Index, Index>>& products,
                            const LinComb& combo);

/// Convenience wrapper that builds the field tower (M from the characters
/// involved) and a fresh engine at the given precision.
VerifyReport verify_lincomb(uint32_t p, uint32_t e,
                            const std::vector<std::pair<Index, Index>>& products,
                            const LinComb& combo, int64_t prec, uint64_t budget);

/// Smallest field tower degree accommodating every character in sight.
uint32_t tower_degree_for(uint32_t p, uint32_t e,
                          const std::vector<std::pair<Index, Index>>& products,
                          const LinComb& combo);

}  // namespace amzv
