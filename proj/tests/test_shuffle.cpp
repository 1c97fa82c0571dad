#include <doctest.h>

#include <vector>

#include "amzv/field.hpp"
#include "amzv/index.hpp"
#include "amzv/powersums.hpp"
#include "amzv/shuffle.hpp"
#include "amzv/useries.hpp"

using namespace amzv;

namespace {

constexpr uint64_t kBudget = uint64_t(1) << 22;

// Evaluates a combination of S_d / S_{<d} / zeta terms numerically.
USeries eval_comb(PowerSumEngine& eng, const LinComb& c, uint32_t d, int64_t prec) {
    const FieldPtr& F = eng.field();
    USeries acc = USeries::zero(F, prec);
    for (const auto& [idx, cf] : c.terms) {
        USeries term;
        switch (c.level) {
            case Level::Sd: term = eng.sd(d, idx); break;
            case Level::Sless: term = eng.sless(d, idx); break;
            case Level::Zeta: term = eng.zeta(idx).value; break;
        }
        acc = acc + term.scaled(F->from_int(cf));
    }
    return acc;
}

}  // namespace

TEST_CASE("regrouping coefficients match their binomial definition") {
    for (uint32_t p : {2u, 3u, 5u}) {
        ShuffleEngine sh(p, 1);
        for (uint32_t s1 = 1; s1 <= 6; ++s1)
            for (uint32_t s2 = 1; s2 <= 6; ++s2)
                for (uint32_t j = 1; j < s1 + s2; ++j) {
                    uint32_t c1 = Field::lucas_binom(j - 1, s1 - 1, p);
                    uint32_t c2 = Field::lucas_binom(j - 1, s2 - 1, p);
                    if (s1 % 2 == 0) c1 = (p - c1) % p;
                    if (s2 % 2 == 0) c2 = (p - c2) % p;
                    CHECK(sh.regroup_delta(j, s1, s2) == (c1 + c2) % p);
                }
    }
}

TEST_CASE("depth-one layer products expand exactly") {
    FieldPtr F = make_field(3, 1, 2);
    PowerSumEngine eng(F, 120, kBudget);
    ShuffleEngine sh(3, 1);
    for (uint32_t d = 0; d <= 2; ++d)
        for (uint32_t s1 = 1; s1 <= 4; ++s1)
            for (uint32_t s2 = 1; s2 <= 4; ++s2)
                for (uint32_t e1 = 0; e1 <= 1; ++e1)
                    for (uint32_t e2 = 0; e2 <= 1; ++e2) {
                        USeries lhs =
                            eng.alt_sd_single(d, s1, e1) * eng.alt_sd_single(d, s2, e2);
                        LinComb c = sh.depth1_sd_product(s1, e1, s2, e2);
                        CHECK(c.level == Level::Sd);
                        CHECK(agree_on_common_window(lhs, eval_comb(eng, c, d, 120)));
                    }
}

TEST_CASE("composite layer products expand exactly") {
    FieldPtr F = make_field(3, 1, 2);
    PowerSumEngine eng(F, 100, kBudget);
    ShuffleEngine sh(3, 1);
    std::vector<std::pair<Index, Index>> pairs = {
        {Index{{1, 1}, {1, 0}}, Index{{2}, {1}}},
        {Index{{2}, {0}}, Index{{1, 2}, {1, 1}}},
        {Index{{1}, {1}}, Index{{1}, {1}}},
    };
    for (uint32_t d = 0; d <= 2; ++d)
        for (const auto& [a, b] : pairs) {
            USeries lhs = eng.sd(d, a) * eng.sd(d, b);
            LinComb c = sh.sd_product(a, b);
            CHECK(c.level == Level::Sd);
            CHECK(agree_on_common_window(lhs, eval_comb(eng, c, d, 100)));

            USeries lhs_less = eng.sless(d, a) * eng.sless(d, b);
            LinComb cl = sh.sless_product(a, b);
            CHECK(cl.level == Level::Sless);
            CHECK(agree_on_common_window(lhs_less, eval_comb(eng, cl, d, 100)));
        }
}

TEST_CASE("zeta products expand to certified identities") {
    std::vector<std::pair<Index, Index>> pairs = {
        {Index{{1}, {1}}, Index{{2}, {0}}},
        {Index{{2}, {1}}, Index{{1, 2}, {1, 1}}},
        {Index{{1, 1}, {0, 1}}, Index{{2}, {1}}},
    };
    ShuffleEngine sh(3, 1);
    for (const auto& [a, b] : pairs) {
        LinComb combo = sh.zeta_product(a, b);
        CHECK(check_grading(a, b, combo, 3));
        auto rep = verify_lincomb(3, 1, {{a, b}}, combo, 160, kBudget);
        CHECK(rep.zero_to_prec);
        CHECK(rep.significant_digits >= 120);
    }
}

TEST_CASE("product expansion is symmetric in its arguments") {
    ShuffleEngine sh(5, 1);
    Index a{{2}, {3}}, b{{1, 1}, {0, 2}};
    CHECK(sh.zeta_product(a, b).terms == sh.zeta_product(b, a).terms);
    ShuffleEngine sh3(3, 1);
    Index c{{1, 2}, {1, 0}}, d{{2}, {1}};
    CHECK(sh3.zeta_product(c, d).terms == sh3.zeta_product(d, c).terms);
}

TEST_CASE("worked product expansion over q = 3 hits the expected five terms") {
    ShuffleEngine sh(3, 1);
    LinComb got = sh.zeta_product(Index{{2}, {0}}, Index{{1, 2}, {1, 1}});
    CHECK(got.size() == 5);
    CHECK(got.coeff_of(Index{{3, 2}, {1, 1}}) == 1);
    CHECK(got.coeff_of(Index{{1, 2, 2}, {1, 1, 0}}) == 2);
    CHECK(got.coeff_of(Index{{1, 2, 2}, {1, 0, 1}}) == 1);
    CHECK(got.coeff_of(Index{{1, 4}, {1, 1}}) == 1);
    CHECK(got.coeff_of(Index{{2, 1, 2}, {0, 1, 1}}) == 1);
}

TEST_CASE("closed form for depth (2,1) products agrees with the engine") {
    for (uint32_t q : {3u, 5u}) {
        ShuffleEngine sh(q, 1);
        for (uint32_t a1 = 1; a1 <= 2; ++a1)
            for (uint32_t a2 = 1; a2 <= 2; ++a2)
                for (uint32_t b1 = 1; b1 <= 2; ++b1)
                    for (uint32_t e = 0; e + 1 < q; ++e) {
                        Index a{{a1, a2}, {e, (e + 1) % (q - 1)}};
                        Index b{{b1}, {e}};
                        CHECK(sh.closed_form_2x1(a, b).terms ==
                              sh.zeta_product(a, b).terms);
                    }
    }
}
