#include <doctest.h>

#include <map>
#include <utility>
#include <vector>

#include "amzv/errors.hpp"
#include "amzv/field.hpp"
#include "amzv/index.hpp"
#include "amzv/powersums.hpp"
#include "amzv/ring_a.hpp"
#include "amzv/useries.hpp"

using namespace amzv;

namespace {

constexpr uint64_t kBudget = uint64_t(1) << 22;

// Raw oracle: sum of a^{-s} over monic a of degree d, by literal enumeration.
USeries raw_layer(const FieldPtr& F, uint32_t d, uint32_t s, int64_t prec) {
    USeries acc = USeries::zero(F, prec);
    for (const PolyA& m : monic_enumerate(F, d, kBudget))
        acc = acc + USeries::from_poly(m.pow(s), prec).inverse();
    return acc;
}

}  // namespace

TEST_CASE("single layers match the raw monic enumeration") {
    for (uint32_t q : {2u, 3u, 5u}) {
        FieldPtr F = make_field(q, 1, 1);
        PowerSumEngine eng(F, 120, kBudget);
        for (uint32_t d = 0; d <= 3; ++d)
            for (uint32_t s = 1; s <= 5; ++s)
                CHECK(agree_on_common_window(eng.sd_single(d, s), raw_layer(F, d, s, 120)));
    }
}

TEST_CASE("layer sums of weight one are reciprocals of the carlitz ell blocks") {
    for (uint32_t q : {2u, 3u, 5u}) {
        FieldPtr F = make_field(q, 1, 1);
        PowerSumEngine eng(F, 200, kBudget);
        for (uint32_t d = 0; d <= 4; ++d) {
            USeries lhs = eng.sd_single(d, 1);
            USeries rhs = USeries::from_poly(carlitz_ell(F, d), 200).inverse();
            CHECK(agree_on_common_window(lhs, rhs));
            // Deep layers sit entirely above the working window; there the
            // reciprocal's exact valuation must confirm the vanishing.
            if (lhs.is_zero())
                CHECK(rhs.valuation() >= lhs.prec());
            else
                CHECK(lhs.valuation() == rhs.valuation());
        }
    }
}

TEST_CASE("character twist scales a layer by the d-th character power") {
    FieldPtr F = make_field(3, 1, 2);
    PowerSumEngine eng(F, 100, kBudget);
    for (uint32_t d = 0; d <= 3; ++d)
        for (uint32_t s = 1; s <= 3; ++s)
            for (uint32_t e = 0; e <= 1; ++e) {
                USeries want = eng.sd_single(d, s).scaled(F->pow(eps_embed(*F, e), d));
                CHECK(eng.alt_sd_single(d, s, e) == want);
            }
}

TEST_CASE("composite layers match the nested raw double sum") {
    FieldPtr F = make_field(3, 1, 2);
    const int64_t P = 100;
    PowerSumEngine eng(F, P, kBudget);
    for (uint32_t d = 1; d <= 2; ++d)
        for (uint32_t s1 = 1; s1 <= 3; ++s1)
            for (uint32_t s2 = 1; s2 <= 2; ++s2)
                for (uint32_t e1 = 0; e1 <= 1; ++e1)
                    for (uint32_t e2 = 0; e2 <= 1; ++e2) {
                        Index idx{{s1, s2}, {e1, e2}};
                        USeries raw = USeries::zero(F, P);
                        Field::Code c1 = F->pow(eps_embed(*F, e1), d);
                        for (const PolyA& a : monic_enumerate(F, d, kBudget))
                            for (uint32_t db = 0; db < d; ++db) {
                                Field::Code c2 = F->pow(eps_embed(*F, e2), db);
                                for (const PolyA& b : monic_enumerate(F, db, kBudget))
                                    raw = raw +
                                          (USeries::from_poly(a.pow(s1), P).inverse() *
                                           USeries::from_poly(b.pow(s2), P).inverse())
                                              .scaled(F->mul(c1, c2));
                            }
                        CHECK(agree_on_common_window(eng.sd(d, idx), raw));
                    }
}

TEST_CASE("depth-three composite layer matches the raw triple sum") {
    FieldPtr F = make_field(3, 1, 1);
    const int64_t P = 80;
    PowerSumEngine eng(F, P, kBudget);
    Index idx{{2, 1, 1}, {0, 0, 0}};
    USeries raw = USeries::zero(F, P);
    for (const PolyA& a : monic_enumerate(F, 2, kBudget))
        for (uint32_t db = 1; db < 2; ++db)
            for (const PolyA& b : monic_enumerate(F, db, kBudget))
                for (uint32_t dc = 0; dc < db; ++dc)
                    for (const PolyA& c : monic_enumerate(F, dc, kBudget))
                        raw = raw + (USeries::from_poly(a.pow(2), P).inverse() *
                                     USeries::from_poly(b, P).inverse() *
                                     USeries::from_poly(c, P).inverse());
    CHECK(agree_on_common_window(eng.sd(2, idx), raw));
}

TEST_CASE("strict partial sums accumulate the layers below d") {
    FieldPtr F = make_field(3, 1, 2);
    PowerSumEngine eng(F, 100, kBudget);
    Index idx{{1, 2}, {1, 0}};
    for (uint32_t d = 0; d <= 3; ++d) {
        USeries acc = USeries::zero(F, 100);
        for (uint32_t dd = 0; dd < d; ++dd) acc = acc + eng.sd(dd, idx);
        CHECK(agree_on_common_window(eng.sless(d, idx), acc));
    }
}

TEST_CASE("layer valuations increase strictly along d") {
    for (uint32_t q : {2u, 3u, 5u}) {
        FieldPtr F = make_field(q, 1, 1);
        PowerSumEngine eng(F, 300, kBudget);
        for (uint32_t s = 1; s <= 4; ++s) {
            int64_t prev = -1;
            for (uint32_t d = 0; d <= 3; ++d) {
                const USeries& layer = eng.sd_single(d, s);
                if (layer.is_zero()) break;  // beyond the window
                if (d > 0) CHECK(layer.valuation() > prev);
                prev = layer.valuation();
            }
        }
    }
}

TEST_CASE("zeta sums all layers that fit the window and bounds the rest") {
    FieldPtr F = make_field(3, 1, 2);
    PowerSumEngine eng(F, 150, kBudget);
    for (const Index& idx :
         {Index{{1}, {1}}, Index{{2}, {0}}, Index{{1, 2}, {1, 1}}, Index{{3, 1}, {0, 1}}}) {
        ZetaValue z = eng.zeta(idx);
        USeries acc = USeries::zero(F, 150);
        for (uint32_t d = 0; d <= z.d_max_used; ++d) acc = acc + eng.sd(d, idx);
        CHECK(agree_on_common_window(z.value, acc));
        CHECK(z.tail_valuation_bound >= z.value.prec());
        CHECK(!z.value.is_zero());
    }
}

TEST_CASE("exact fraction form matches the series rendering") {
    FieldPtr F = make_field(3, 1, 1);
    PowerSumEngine eng(F, 150, kBudget);
    for (uint32_t d = 0; d <= 2; ++d)
        for (uint32_t s = 1; s <= 4; ++s) {
            FracA f = eng.sd_fraction(d, s);
            USeries rendered = USeries::from_poly(f.num, 150) *
                               USeries::from_poly(f.den, 150).inverse();
            CHECK(agree_on_common_window(rendered, eng.sd_single(d, s)));
        }
}

TEST_CASE("nonvanishing certificates pin the leading digit of zeta") {
    FieldPtr F = make_field(3, 1, 2);
    PowerSumEngine eng(F, 150, kBudget);
    for (const Index& idx :
         {Index{{1}, {0}}, Index{{2}, {1}}, Index{{1, 1}, {1, 0}}, Index{{2, 3}, {1, 1}}}) {
        NonvanishingCert cert = eng.nonvanishing(idx);
        ZetaValue z = eng.zeta(idx);
        CHECK(!z.value.is_zero());
        CHECK(z.value.valuation() == cert.leading_valuation);
        CHECK(z.value.digit(cert.leading_valuation) == cert.leading_coeff);
    }
}

TEST_CASE("tight budgets surface as budget errors") {
    FieldPtr F = make_field(3, 1, 1);
    PowerSumEngine eng(F, 400, 10);  // far too small for the deep layers
    CHECK_THROWS_AS((void)eng.zeta(Index{{1}, {0}}), BudgetError);
}
