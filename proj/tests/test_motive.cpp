#include <doctest.h>

#include <vector>

#include "amzv/errors.hpp"
#include "amzv/field.hpp"
#include "amzv/index.hpp"
#include "amzv/motive.hpp"
#include "amzv/powersums.hpp"
#include "amzv/ring_a.hpp"
#include "amzv/useries.hpp"

using namespace amzv;

namespace {

constexpr uint64_t kBudget = uint64_t(1) << 22;

}  // namespace

TEST_CASE("omega coefficients follow the valuation law") {
    for (uint32_t q : {2u, 3u}) {
        FieldPtr F = make_field(q, 1, 2);
        const int64_t P = 300;
        TSeries om = build_omega(F, P, 8);
        for (int j = 0; j <= 8; ++j) {
            int64_t want = 1;
            for (int i = 0; i <= j; ++i) want *= q;  // q^{j+1}
            if (want < P) {
                CHECK(om.coeff(size_t(j)).valuation() == want);
            } else {
                CHECK(om.coeff(size_t(j)).is_zero());
            }
        }
    }
}

TEST_CASE("omega satisfies its first-order twist equation") {
    FieldPtr F = make_field(3, 1, 2);
    const int64_t P = 400;
    const int T = 8;
    TSeries om = build_omega(F, P, T);
    // (t - theta^q) * om^{(1)} must reproduce om coefficient by coefficient.
    PolyA tq = PolyA::theta(F).pow(F->q());
    TSeries lin = TSeries::from_apoly(F, T, {-tq, PolyA::one(F)}, P);
    TSeries rhs = lin * om.twist(1, P);
    for (int j = 0; j <= T; ++j)
        CHECK(agree_on_common_window(om.coeff(size_t(j)), rhs.coeff(size_t(j))));
    CHECK(!om.coeff(0).is_zero());
    CHECK(!rhs.coeff(0).is_zero());
}

TEST_CASE("truncated products carry sound tail certificates") {
    FieldPtr F = make_field(3, 1, 2);
    const int64_t P = 900;
    const int T = 3, T2 = 12;
    TSeries small = build_omega(F, P, T);
    TSeries big = build_omega(F, P, T2);
    TSeries sq_small = small * small;
    TSeries sq_big = big * big;  // exact through t-degree T2
    TailCert cert = sq_small.tail();
    // near floors cover t-degrees T+1 .. 2T
    for (int j = T + 1; j <= 2 * T; ++j) {
        int64_t floor = cert.near.at(size_t(j - T - 1));
        int64_t actual = sq_big.coeff(size_t(j)).val_floor();
        CHECK(actual >= std::min(floor, sq_big.coeff(size_t(j)).prec()));
    }
    // evaluation folds the certificate into an honest precision
    USeries ev_small = sq_small.eval_theta_power(0);
    USeries ev_big = sq_big.eval_theta_power(0);
    CHECK(agree_on_common_window(ev_small, ev_big));
    CHECK(!ev_small.is_zero());
}

TEST_CASE("exact polynomials in t evaluate exactly") {
    FieldPtr F = make_field(3, 1, 1);
    const int64_t P = 120;
    PolyA th = PolyA::theta(F);
    // p(t) = t^2 + theta
    TSeries pt = TSeries::from_apoly(F, 5, {th, PolyA::zero(F), PolyA::one(F)}, P);
    CHECK(pt.tail().empty(5));
    USeries at_theta = pt.eval_theta_power(0);
    CHECK(agree_on_common_window(at_theta, USeries::from_poly(th * th + th, P)));
    USeries at_thetaq = pt.eval_theta_power(1);
    CHECK(agree_on_common_window(
        at_thetaq, USeries::from_poly(th.pow(2 * F->q()) + th, P)));
    CHECK_THROWS_AS(
        (void)TSeries::from_apoly(F, 1, {th, th, th}, P), UsageError);
}

TEST_CASE("a tail without decay refuses evaluation") {
    FieldPtr F = make_field(3, 1, 1);
    const int T = 2;
    std::vector<USeries> cs(size_t(T) + 1, USeries::one(F, 50));
    TailCert slow;
    slow.near.assign(size_t(T), TailCert::kInf);
    slow.B = 0;
    slow.G = 1;  // grows slower than any substitution point consumes
    slow.J = TailCert::kInf;
    TSeries x = TSeries::from_coeffs(F, T, cs, slow);
    CHECK_THROWS_AS((void)x.eval_theta_power(0), PrecisionError);
}

TEST_CASE("pi tilde inverts omega at t = theta") {
    MotiveSession ses(make_field(3, 1, 2), 200, 12, 5, kBudget);
    USeries prod = ses.pi_tilde() * ses.omega().eval_theta_power(0);
    CHECK(agree_on_common_window(prod, USeries::one(ses.field(), prod.prec())));
    CHECK(prod.valuation() == 0);
    CHECK(ses.pi_tilde().valuation() == -int64_t(ses.field()->q()));
}

TEST_CASE("interpolation polynomials are trivial below the field size") {
    MotiveSession ses(make_field(3, 1, 2), 200, 12, 5, kBudget);
    for (uint32_t s = 1; s <= 3; ++s) {
        const auto& h = ses.anderson_thakur_H(s);
        REQUIRE(h.size() == 1);
        CHECK(h[0] == PolyA::one(ses.field()));
    }
    // Just past the field size the polynomial is no longer trivial, but its
    // theta-degree still obeys the (s-1)q/(q-1) interpolation bound.
    const auto& h4 = ses.anderson_thakur_H(4);
    CHECK(h4.size() > 1);
    int64_t bound = int64_t(3) * 3 / (3 - 1);  // (s-1)q/(q-1) for s=4, q=3
    for (const PolyA& c : h4) CHECK(c.degree() <= bound);
    CHECK_THROWS_AS((void)ses.anderson_thakur_H(0), UsageError);
}

TEST_CASE("difference equation holds on sample indices") {
    MotiveSession ses(make_field(3, 1, 2), 200, 12, 5, kBudget);
    for (const Index& idx : {Index{{1}, {0}}, Index{{2}, {1}}, Index{{2, 1}, {1, 0}}}) {
        DiffEqReport rep = ses.check_difference_eq(idx);
        CHECK(rep.entries_ok);
        CHECK(rep.det_psi_ok);
        CHECK(rep.det_phi0_ok);
        CHECK(rep.min_checked_prec > 0);
    }
}

TEST_CASE("period identity and specialization hold on a sample index") {
    MotiveSession ses(make_field(3, 1, 2), 200, 12, 5, kBudget);
    Index idx{{1}, {1}};
    PeriodReport rep = ses.check_period(idx);
    CHECK(rep.pass);
    CHECK(rep.significant_digits >= ses.tolerance_digits());
    SpecializationReport sp = ses.check_specialization(idx, 1);
    CHECK(sp.head_ok);
    CHECK(sp.last_ok);

    Index idx2{{1, 1}, {1, 1}};
    CHECK(ses.check_period(idx2).pass);
    CHECK(ses.check_specialization(idx2, 1).pass());
}

TEST_CASE("session rejects unusable shapes") {
    CHECK_THROWS_AS(MotiveSession(make_field(3, 1, 1), 200, 0, 5, kBudget), UsageError);
    MotiveSession ses(make_field(3, 1, 2), 200, 12, 5, kBudget);
    CHECK_THROWS_AS((void)ses.check_specialization(Index{{1}, {0}}, 9), UsageError);
}
