#include <doctest.h>

#include <random>
#include <vector>

#include "amzv/errors.hpp"
#include "amzv/field.hpp"
#include "amzv/ring_a.hpp"
#include "amzv/useries.hpp"

using namespace amzv;

namespace {

// Random series with window [lo, lo+len) built from public constructors.
USeries random_series(std::mt19937& rng, const FieldPtr& F, int64_t lo, int64_t len,
                      bool allow_zero = true) {
    USeries acc = USeries::zero(F, lo + len);
    bool any = false;
    for (int64_t i = 0; i < len; ++i) {
        Field::Code c = Field::Code(rng() % F->N());
        if (!allow_zero && !any && i + 1 == len && c == 0) c = 1;
        if (c == 0) continue;
        any = true;
        acc = acc + USeries::monomial(F, c, lo + i, lo + len);
    }
    return acc;
}

}  // namespace

TEST_CASE("window bookkeeping: zero, valuation, digits") {
    FieldPtr F = make_field(3, 1, 2);
    USeries z = USeries::zero(F, 40);
    CHECK(z.is_zero());
    CHECK(z.val_floor() == 40);
    CHECK(z.prec() == 40);
    CHECK_THROWS_AS((void)z.valuation(), PrecisionError);

    USeries m = USeries::monomial(F, 2, -5, 20);
    CHECK(m.valuation() == -5);
    CHECK(m.digit(-5) == 2);
    CHECK(m.digit(-6) == 0);   // below the window: exactly zero
    CHECK(m.digit(10) == 0);   // inside the window, unset
    CHECK_THROWS_AS((void)m.digit(20), PrecisionError);
    CHECK_THROWS_AS((void)z.inverse(), PrecisionError);
}

TEST_CASE("theta maps to u^{-(q-1)} and u^{q-1} inverts it") {
    for (uint32_t q : {2u, 3u, 5u}) {
        FieldPtr F = make_field(q, 1, 1);
        USeries th = USeries::from_poly(PolyA::theta(F), 30);
        CHECK(th.valuation() == -int64_t(q - 1));
        CHECK(th.theta_degree() == Rat::of(1, 1));
        USeries inv = th.inverse();
        CHECK(inv.valuation() == int64_t(q - 1));
        CHECK(agree_on_common_window(inv, USeries::monomial(F, 1, int64_t(q - 1), 30)));
        // theta^k valuation scales linearly
        USeries th3 = USeries::from_poly(PolyA::theta(F).pow(3), 30);
        CHECK(th3.valuation() == -3 * int64_t(q - 1));
        CHECK(th3.theta_degree() == Rat::of(3, 1));
    }
}

TEST_CASE("kernel-backed product matches the schoolbook convolution") {
    std::mt19937 rng(53);
    for (auto [p, e, M] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>{
             {2, 1, 3}, {3, 1, 2}, {5, 1, 1}, {7, 1, 2}}) {
        FieldPtr F = make_field(p, e, M);
        for (int trial = 0; trial < 30; ++trial) {
            int64_t lo_a = int64_t(rng() % 60) - 30, lo_b = int64_t(rng() % 60) - 30;
            int64_t la = 1 + rng() % 80, lb = 1 + rng() % 80;
            USeries a = random_series(rng, F, lo_a, la);
            USeries b = random_series(rng, F, lo_b, lb);
            CHECK(a * b == USeries::mul_naive(a, b));
        }
    }
}

TEST_CASE("product against a monomial shifts and scales the window") {
    FieldPtr F = make_field(3, 1, 2);
    std::mt19937 rng(59);
    USeries a = random_series(rng, F, -10, 40, false);
    USeries u5 = USeries::monomial(F, 1, 5, 60);
    CHECK(agree_on_common_window(a * u5, a.shifted(5)));
    Field::Code s = 7 % F->N();
    CHECK(a.scaled(s) == a * USeries::monomial(F, s, 0, 60));
}

TEST_CASE("inverse is a two-sided inverse to window precision") {
    std::mt19937 rng(61);
    for (uint32_t q : {2u, 3u, 5u}) {
        FieldPtr F = make_field(q, 1, 1);
        for (int trial = 0; trial < 20; ++trial) {
            USeries a = random_series(rng, F, int64_t(rng() % 20) - 10, 30, false);
            if (a.is_zero()) continue;
            USeries prod = a * a.inverse();
            CHECK(agree_on_common_window(prod, USeries::one(F, prod.prec())));
            CHECK(prod.valuation() == 0);
        }
    }
}

TEST_CASE("pow matches repeated multiplication and inversion") {
    FieldPtr F = make_field(3, 1, 2);
    std::mt19937 rng(67);
    USeries a = random_series(rng, F, -4, 25, false);
    USeries acc = USeries::one(F, a.prec() + 20);
    for (int64_t n = 0; n <= 6; ++n) {
        CHECK(agree_on_common_window(a.pow(n), acc));
        acc = acc * a;
    }
    CHECK(agree_on_common_window(a.pow(-2), a.inverse() * a.inverse()));
}

TEST_CASE("twist spreads exponents by q^d and Frobenius-powers the digits") {
    FieldPtr F = make_field(3, 1, 2);
    std::mt19937 rng(71);
    USeries a = random_series(rng, F, -6, 20, false);
    const uint32_t q = F->q();
    USeries t1 = a.twist(1, 1000);
    for (int64_t k = a.val_floor(); k < a.prec(); ++k)
        CHECK(t1.digit(k * q) == F->pow(a.digit(k), q));
    // exponents not divisible by q carry nothing
    CHECK(t1.digit(a.valuation() * q + 1) == 0);
    // twisting twice equals a double twist
    USeries t2 = a.twist(1, 5000).twist(1, 2000);
    CHECK(agree_on_common_window(t2, a.twist(2, 2000)));
    // the precision cap really clamps
    CHECK(a.twist(1, 15).prec() <= 15);
}

TEST_CASE("truncation shrinks the window without touching digits") {
    FieldPtr F = make_field(3, 1, 1);
    std::mt19937 rng(73);
    USeries a = random_series(rng, F, -5, 30, false);
    USeries t = a.truncated(10);
    CHECK(t.prec() == 10);
    for (int64_t k = a.val_floor(); k < 10; ++k) CHECK(t.digit(k) == a.digit(k));
    CHECK_THROWS_AS((void)a.truncated(a.prec() + 1), PrecisionError);
}

TEST_CASE("agreement metrics quantify matching digit spans") {
    FieldPtr F = make_field(3, 1, 1);
    USeries a = USeries::monomial(F, 1, -4, 30) + USeries::monomial(F, 2, 7, 30);
    USeries b = USeries::monomial(F, 1, -4, 30) + USeries::monomial(F, 1, 7, 30);
    CHECK(agreement_digits(a, b) == 11);   // they differ first at exponent 7
    CHECK(residual_valuation(a, b) == 7);
    CHECK(!agree_on_common_window(a, b));
    CHECK(agree_on_common_window(a, a.truncated(5)));
    CHECK(agreement_digits(a, a) == 34);   // full common window
}

TEST_CASE("series over different fields refuse to combine") {
    FieldPtr F1 = make_field(3, 1, 1), F2 = make_field(3, 1, 2);
    USeries a = USeries::one(F1, 10), b = USeries::one(F2, 10);
    CHECK_THROWS_AS((void)(a + b), GuardError);
    CHECK_THROWS_AS((void)(a * b), GuardError);
}
