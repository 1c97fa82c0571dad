#include "amzv/motive.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>
#include <utility>

#include "amzv/errors.hpp"
#include "amzv/linalg.hpp"

namespace amzv {
namespace {

constexpr int64_t kCertInf = TailCert::kInf;

// ---- saturating certificate arithmetic -------------------------------------
//
// Certificate values live in [-kCertInf, kCertInf]; kCertInf is sticky, so a
// "no constraint yet" floor survives composition, and products go through
// 128-bit intermediates so slope * offset terms cannot wrap.

int64_t sat_clamp(__int128 v) {
    if (v >= __int128(kCertInf)) return kCertInf;
    if (v <= -__int128(kCertInf)) return -kCertInf;
    return int64_t(v);
}

int64_t sat_add(int64_t a, int64_t b) {
    if (a >= kCertInf || b >= kCertInf) return kCertInf;
    if (a <= -kCertInf || b <= -kCertInf) return -kCertInf;
    return sat_clamp(__int128(a) + __int128(b));
}

int64_t sat_mul(int64_t a, int64_t m) {  // m >= 0
    if (m == 0 || a == 0) return 0;
    if (a >= kCertInf) return kCertInf;
    if (a <= -kCertInf) return -kCertInf;
    return sat_clamp(__int128(a) * __int128(m));
}

int64_t sat_powq(uint32_t q, int64_t k) {
    __int128 v = 1;
    for (int64_t i = 0; i < k; ++i) {
        v *= q;
        if (v >= __int128(kCertInf)) return kCertInf;
    }
    return int64_t(v);
}

int64_t floor_div(int64_t a, int64_t b) {  // b > 0
    int64_t d = a / b;
    if (a % b != 0 && a < 0) --d;
    return d;
}

int64_t clamp_floor(int64_t v) { return std::min(v, kCertInf); }

void cert_normalize(TailCert& c, int T) { c.near.resize(size_t(T), kCertInf); }

TailCert cert_add(TailCert a, const TailCert& b, int T) {
    cert_normalize(a, T);
    for (size_t k = 0; k < a.near.size(); ++k)
        a.near[k] = std::min(a.near[k], k < b.near.size() ? b.near[k] : kCertInf);
    a.B = std::min(a.B, b.B);
    a.G = std::min(a.G, b.G);
    a.J = std::max(a.J, b.J);
    for (size_t j = 0; j < a.coeff_floor.size(); ++j)
        a.coeff_floor[j] =
            std::min(a.coeff_floor[j], j < b.coeff_floor.size() ? b.coeff_floor[j] : kCertInf);
    return a;
}

// Scaling by a series of valuation >= v shifts every floor by v.
TailCert cert_shift(TailCert c, int64_t v) {
    v = clamp_floor(v);
    for (auto& x : c.near) x = sat_add(x, v);
    c.B = sat_add(c.B, v);
    for (auto& x : c.coeff_floor) x = sat_add(x, v);
    return c;
}

// The q^d-power Frobenius multiplies every valuation by q^d.
TailCert cert_twist(TailCert c, int64_t qd) {
    for (auto& x : c.near) x = sat_mul(x, qd);
    c.B = sat_mul(c.B, qd);
    c.G = sat_mul(c.G, qd);
    for (auto& x : c.coeff_floor) x = sat_mul(x, qd);
    return c;
}

// Certificate of a product.  The factors' coeff_floor vectors bound their
// mathematical coefficients by t-degree, so every floor assembled here is a
// statement about the true product, not about what the stored windows see.
//
// Every output degree past T receives mass from bounded combinations
// (stored x stored, stored x spill, spill x spill, and the prefix of the far
// lines), so explicit floors are assembled pointwise for degrees in (T, 4T].
// Beyond 4T only far-line combinations remain, all of which are genuinely
// linear.  The explicit floors past 2T are then folded back into a single
// line whose slope they can actually support; without that cap, the steep
// far line would force the folded offset far below the true spill floors.
TailCert cert_mul(const TailCert& ca, const TailCert& cb, int T) {
    const std::vector<int64_t>& sa = ca.coeff_floor;
    const std::vector<int64_t>& sb = cb.coeff_floor;
    TailCert r;
    r.near.assign(size_t(T), kCertInf);
    r.J = sat_add(ca.J, cb.J);
    r.coeff_floor.assign(size_t(T) + 1, kCertInf);
    for (int64_t j = 0; j <= T; ++j)
        for (int64_t i = 0; i <= j; ++i)
            r.coeff_floor[size_t(j)] = std::min(
                r.coeff_floor[size_t(j)], sat_add(sa[size_t(i)], sb[size_t(j - i)]));
    const int64_t twoT = 2 * int64_t(T);
    const bool la = ca.J > twoT;  // a's far line carries mass
    const bool lb = cb.J > twoT;

    std::vector<int64_t> ex(size_t(3 * T), kCertInf);  // floors for j in (T, 4T]
    auto fold = [&](int64_t j, int64_t v) {
        if (j > int64_t(T) && j <= int64_t(T) + int64_t(ex.size())) {
            auto& slot = ex[size_t(j - T - 1)];
            slot = std::min(slot, v);
        }
    };

    for (int64_t i = 0; i <= T; ++i) {
        if (sa[size_t(i)] >= kCertInf) continue;
        for (int64_t i2 = 0; i2 <= T; ++i2) {
            if (sb[size_t(i2)] >= kCertInf) continue;
            fold(i + i2, sat_add(sa[size_t(i)], sb[size_t(i2)]));
        }
    }
    for (int64_t i = 0; i <= T; ++i) {
        if (sa[size_t(i)] < kCertInf)
            for (int64_t k = 1; k <= T; ++k)
                fold(i + T + k, sat_add(sa[size_t(i)], cb.near[size_t(k - 1)]));
        if (sb[size_t(i)] < kCertInf)
            for (int64_t k = 1; k <= T; ++k)
                fold(i + T + k, sat_add(sb[size_t(i)], ca.near[size_t(k - 1)]));
    }
    for (int64_t k1 = 1; k1 <= T; ++k1)
        for (int64_t k2 = 1; k2 <= T; ++k2)
            fold(twoT + k1 + k2, sat_add(ca.near[size_t(k1 - 1)], cb.near[size_t(k2 - 1)]));
    // far-line mass combined with a bounded part of the partner
    auto fold_line = [&](int64_t deg, int64_t base, int64_t B, int64_t G) {
        for (int64_t j = deg + twoT + 1; j <= int64_t(T) + int64_t(ex.size()); ++j)
            fold(j, sat_add(sat_add(base, B), sat_mul(G, j - deg - twoT - 1)));
    };
    if (lb) {
        for (int64_t i = 0; i <= T; ++i)
            if (sa[size_t(i)] < kCertInf) fold_line(i, sa[size_t(i)], cb.B, cb.G);
        for (int64_t k = 1; k <= T; ++k)
            if (ca.near[size_t(k - 1)] < kCertInf)
                fold_line(T + k, ca.near[size_t(k - 1)], cb.B, cb.G);
    }
    if (la) {
        for (int64_t i = 0; i <= T; ++i)
            if (sb[size_t(i)] < kCertInf) fold_line(i, sb[size_t(i)], ca.B, ca.G);
        for (int64_t k = 1; k <= T; ++k)
            if (cb.near[size_t(k - 1)] < kCertInf)
                fold_line(T + k, cb.near[size_t(k - 1)], ca.B, ca.G);
    }
    // Mass families past 4T, each a line anchored at its own first degree.
    // The far x far family grows at the smaller of the two slopes because the
    // degree split can put all of its growth on that side.
    struct FamilyLine {
        int64_t anchor;  // first t-degree carrying this family's mass
        int64_t value;   // valuation floor at the anchor
        int64_t slope;   // certified growth per degree past the anchor
    };
    std::vector<FamilyLine> fam;
    if (lb && cb.B < kCertInf) {
        for (int64_t i = 0; i <= T; ++i)
            if (sa[size_t(i)] < kCertInf)
                fam.push_back({i + twoT + 1, sat_add(sa[size_t(i)], cb.B), cb.G});
        for (int64_t k = 1; k <= T; ++k)
            if (ca.near[size_t(k - 1)] < kCertInf)
                fam.push_back({T + k + twoT + 1, sat_add(ca.near[size_t(k - 1)], cb.B), cb.G});
    }
    if (la && ca.B < kCertInf) {
        for (int64_t i = 0; i <= T; ++i)
            if (sb[size_t(i)] < kCertInf)
                fam.push_back({i + twoT + 1, sat_add(sb[size_t(i)], ca.B), ca.G});
        for (int64_t k = 1; k <= T; ++k)
            if (cb.near[size_t(k - 1)] < kCertInf)
                fam.push_back({T + k + twoT + 1, sat_add(cb.near[size_t(k - 1)], ca.B), ca.G});
    }
    if (la && lb && ca.B < kCertInf && cb.B < kCertInf)
        fam.push_back({2 * (twoT + 1), sat_add(ca.B, cb.B), std::min(ca.G, cb.G)});

    // slope the explicit floors past 2T can support relative to their anchor
    int64_t anchor = kCertInf, anchor_j = 0;
    for (size_t k = size_t(T); k < ex.size(); ++k)
        if (ex[k] < kCertInf) {
            anchor = ex[k];
            anchor_j = int64_t(T) + 1 + int64_t(k);
            break;
        }
    int64_t gsup = kCertInf;
    if (anchor < kCertInf)
        for (size_t k = size_t(T); k < ex.size(); ++k) {
            if (ex[k] >= kCertInf) continue;
            int64_t j = int64_t(T) + 1 + int64_t(k);
            if (j > anchor_j) gsup = std::min(gsup, floor_div(ex[k] - anchor, j - anchor_j));
        }

    // The folded line may not outgrow any family, so its slope is the
    // smallest on offer; with the slope fixed, each family pins the offset
    // through its own anchor.  Extrapolating a steep family back to 2T+1
    // with its own slope would sink the offset far below any real mass.
    int64_t G = gsup;
    for (const auto& f : fam) G = std::min(G, f.slope);
    const bool far_mass = !fam.empty() || anchor < kCertInf;
    if (G >= kCertInf) G = far_mass ? 0 : kCertInf;
    int64_t B = kCertInf;
    if (far_mass) {
        for (const auto& f : fam)
            B = std::min(B, sat_add(f.value, -sat_mul(G, f.anchor - twoT - 1)));
        for (size_t k = size_t(T); k < ex.size(); ++k) {
            if (ex[k] >= kCertInf) continue;
            B = std::min(B, sat_add(ex[k], -sat_mul(G, int64_t(k) - T)));
        }
    }

    r.near.assign(ex.begin(), ex.begin() + T);
    r.B = B;
    r.G = G;
    return r;
}

// Lowest possible valuation of the dropped tail after substituting
// t = theta^{q^N}, i.e. after weighting coeff_j by u^{-S j} with
// S = (q-1) q^N.  PrecisionError when an unbounded tail decays slower than
// the substitution point amplifies it.
int64_t cert_eval_floor(const TailCert& c, int T, int64_t S) {
    int64_t fl = kCertInf;
    for (int64_t k = 1; k <= T; ++k) {
        if (int64_t(T) + k > c.J) break;  // structurally zero from here on
        int64_t f = c.near[size_t(k - 1)];
        if (f >= kCertInf) continue;
        fl = std::min(fl, sat_add(f, -sat_mul(S, int64_t(T) + k)));
    }
    const int64_t twoT = 2 * int64_t(T);
    if (c.J > twoT) {
        if (c.B >= kCertInf) {
            // far tail certified invisible
        } else if (c.G >= S) {
            fl = std::min(fl, sat_add(c.B, -sat_mul(S, twoT + 1)));
        } else if (c.J < kCertInf) {
            int64_t at_end =
                sat_add(sat_add(c.B, sat_mul(c.G, c.J - twoT - 1)), -sat_mul(S, c.J));
            fl = std::min(fl, at_end);
        } else {
            throw PrecisionError(
                "t-series tail does not decay fast enough for this substitution point");
        }
    }
    return fl;
}

// ---- generic helpers -------------------------------------------------------

template <typename E>
E det_laplace(const std::vector<std::vector<E>>& m, const E& zero_elem) {
    const size_t n = m.size();
    if (n == 0) throw GuardError("determinant of an empty matrix");
    if (n == 1) return m[0][0];
    E acc = zero_elem;
    for (size_t c = 0; c < n; ++c) {
        std::vector<std::vector<E>> minor;
        minor.reserve(n - 1);
        for (size_t r = 1; r < n; ++r) {
            std::vector<E> row;
            row.reserve(n - 1);
            for (size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            minor.push_back(std::move(row));
        }
        E term = m[0][c] * det_laplace(minor, zero_elem);
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// Polynomials in t with coefficients in A, low t-degree first.
using TPoly = std::vector<PolyA>;

TPoly tpoly_trim(TPoly a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
    return a;
}

TPoly tpoly_mul(const TPoly& a, const TPoly& b, const FieldPtr& F) {
    if (a.empty() || b.empty()) return {};
    TPoly r(a.size() + b.size() - 1, PolyA::zero(F));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return tpoly_trim(std::move(r));
}

TPoly tpoly_pow(const TPoly& base, uint64_t k, const FieldPtr& F) {
    TPoly r{PolyA::one(F)};
    for (uint64_t i = 0; i < k; ++i) r = tpoly_mul(r, base, F);
    return r;
}

}  // namespace

// ---- TSeries ----------------------------------------------------------------

TSeries TSeries::zero(FieldPtr F, int T) {
    if (T < 0) throw UsageError("TSeries: negative truncation order");
    TSeries r;
    r.F_ = std::move(F);
    r.T_ = T;
    r.c_.assign(size_t(T) + 1, USeries::zero(r.F_, kExactZeroPrec));
    r.tail_ = TailCert::none(T);
    r.tail_.coeff_floor.assign(size_t(T) + 1, kCertInf);
    return r;
}

TSeries TSeries::constant(FieldPtr F, int T, USeries c0) {
    TSeries r = zero(std::move(F), T);
    if (c0.field().get() != r.F_.get())
        throw GuardError("TSeries: constant from a different field instance");
    r.tail_.coeff_floor[0] = clamp_floor(c0.val_floor());
    r.c_[0] = std::move(c0);
    return r;
}

TSeries TSeries::from_coeffs(FieldPtr F, int T, std::vector<USeries> cs, TailCert tail) {
    if (cs.size() != size_t(T) + 1) throw GuardError("TSeries: wrong coefficient count");
    for (const auto& c : cs)
        if (c.field().get() != F.get())
            throw GuardError("TSeries: coefficient from a different field instance");
    TSeries r;
    r.F_ = std::move(F);
    r.T_ = T;
    r.c_ = std::move(cs);
    cert_normalize(tail, T);
    // Callers that know the true coefficient valuations (a construction law,
    // an exact polynomial) pass them in; everyone else gets the windows,
    // which are the best honest floor available.
    if (tail.coeff_floor.size() != size_t(T) + 1) {
        tail.coeff_floor.assign(size_t(T) + 1, kCertInf);
        for (int64_t j = 0; j <= T; ++j)
            tail.coeff_floor[size_t(j)] = clamp_floor(r.c_[size_t(j)].val_floor());
    }
    r.tail_ = std::move(tail);
    return r;
}

TSeries TSeries::from_apoly(const FieldPtr& F, int T, const std::vector<PolyA>& tcoeffs,
                            int64_t prec) {
    if (int64_t(tcoeffs.size()) - 1 > int64_t(T))
        throw UsageError("TSeries: t-polynomial degree exceeds the truncation order");
    TSeries r = zero(F, T);
    for (size_t j = 0; j < tcoeffs.size(); ++j)
        if (!tcoeffs[j].is_zero()) {
            r.c_[j] = USeries::from_poly(tcoeffs[j], prec);
            // Exact polynomial coefficient: its valuation is its floor.
            r.tail_.coeff_floor[j] = clamp_floor(r.c_[j].val_floor());
        }
    return r;
}

bool TSeries::is_zero_to_prec() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

int64_t TSeries::min_coeff_prec() const {
    int64_t m = std::numeric_limits<int64_t>::max();
    for (const auto& c : c_) m = std::min(m, c.prec());
    return m;
}

static void check_compat(const TSeries& a, const TSeries& b) {
    if (a.field().get() != b.field().get())
        throw GuardError("TSeries: operands belong to different field instances");
    if (a.T() != b.T()) throw GuardError("TSeries: operands have different truncation orders");
}

TSeries TSeries::operator+(const TSeries& o) const {
    check_compat(*this, o);
    TSeries r = *this;
    for (size_t j = 0; j < c_.size(); ++j) r.c_[j] = c_[j] + o.c_[j];
    r.tail_ = cert_add(tail_, o.tail_, T_);
    return r;
}

TSeries TSeries::operator-() const {
    TSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

TSeries TSeries::operator-(const TSeries& o) const { return *this + (-o); }

TSeries TSeries::operator*(const TSeries& o) const {
    check_compat(*this, o);
    TSeries r = zero(F_, T_);
    for (int64_t k = 0; k <= T_; ++k) {
        USeries acc = USeries::zero(F_, kExactZeroPrec);
        for (int64_t i = 0; i <= k; ++i) acc = acc + c_[size_t(i)] * o.c_[size_t(k - i)];
        r.c_[size_t(k)] = std::move(acc);
    }
    r.tail_ = cert_mul(tail_, o.tail_, T_);
    return r;
}

TSeries TSeries::scaled_code(Field::Code s) const {
    TSeries r = *this;
    for (auto& c : r.c_) c = c.scaled(s);
    return r;
}

TSeries TSeries::scaled(const USeries& x) const {
    if (x.field().get() != F_.get())
        throw GuardError("TSeries: scaling series from a different field instance");
    TSeries r = *this;
    for (auto& c : r.c_) c = c * x;
    r.tail_ = cert_shift(tail_, x.val_floor());
    return r;
}

TSeries TSeries::pow(uint64_t k) const {
    if (k == 0) {
        int64_t p = std::min(min_coeff_prec(), int64_t(1) << 20);
        return constant(F_, T_, USeries::one(F_, p));
    }
    std::optional<TSeries> res;
    TSeries base = *this;
    while (true) {
        if (k & 1) res = res ? (*res * base) : base;
        k >>= 1;
        if (!k) break;
        base = base * base;
    }
    return *res;
}

TSeries TSeries::twist(uint32_t d, int64_t prec_cap) const {
    // Clamp the symbolic "exact zero" windows so the stride multiplication
    // inside the coefficient twist cannot overflow.
    constexpr int64_t kWindowClamp = int64_t(1) << 38;
    TSeries r = *this;
    for (auto& c : r.c_) {
        USeries cc = c.prec() > kWindowClamp ? c.truncated(kWindowClamp) : c;
        c = cc.twist(d, prec_cap);
    }
    r.tail_ = cert_twist(tail_, sat_powq(F_->q(), int64_t(d)));
    return r;
}

USeries TSeries::eval_theta_power(uint32_t N) const {
    if (N > 8) throw UsageError("TSeries: substitution depth q^N out of range");
    const int64_t S = (int64_t(F_->q()) - 1) * sat_powq(F_->q(), int64_t(N));
    USeries acc = USeries::zero(F_, kExactZeroPrec);
    for (int64_t j = 0; j <= T_; ++j) {
        const USeries& cj = c_[size_t(j)];
        int64_t fj = tail_.coeff_floor[size_t(j)];
        // A coefficient that vanished through its window and carries a
        // deeper certified floor is known to vanish through the floor too,
        // so it must not drag the evaluation window down to its own.
        if (cj.is_zero() && fj > cj.prec()) {
            acc = acc + USeries::zero(F_, fj).shifted(-S * j);
            continue;
        }
        acc = acc + cj.shifted(-S * j);
    }
    int64_t fl = cert_eval_floor(tail_, T_, S);
    return acc.truncated(std::min(acc.prec(), fl));
}

std::string TSeries::to_string(size_t max_deg) const {
    std::ostringstream os;
    size_t shown = 0;
    for (size_t j = 0; j < c_.size() && shown <= max_deg; ++j) {
        if (c_[j].is_zero()) continue;
        if (shown) os << " + ";
        os << "t^" << j << "*(" << c_[j].to_string(4) << ")";
        ++shown;
    }
    if (!shown) os << "0";
    os << " + O(t^" << c_.size() << ")";
    return os.str();
}

// ---- Omega -------------------------------------------------------------------

TSeries build_omega(const FieldPtr& F, int64_t prec, int T) {
    if (prec < 8) throw UsageError("omega: working precision too small");
    if (T < 1) throw UsageError("omega: truncation order must be at least 1");
    const uint32_t q = F->q();
    const int64_t w = int64_t(q) - 1;

    Field::Code pref = F->pow(F->eta(), -int64_t(q));
    TSeries acc = TSeries::constant(F, T, USeries::monomial(F, pref, int64_t(q), prec));
    for (int64_t i = 1;; ++i) {
        // Dropping factor i perturbs every remaining digit by at least
        // q + (q-1) q^i, so the product may stop once that clears the window.
        int64_t stride = sat_mul(w, sat_powq(q, i));
        if (sat_add(int64_t(q), stride) >= prec) break;
        std::vector<USeries> fc(size_t(T) + 1, USeries::zero(F, kExactZeroPrec));
        fc[0] = USeries::one(F, prec);
        fc[1] = USeries::monomial(F, F->neg(1), stride, prec);
        acc = acc * TSeries::from_coeffs(F, T, std::move(fc), TailCert::none(T));
    }

    // Dropped factors perturb every remaining digit at or above the window,
    // so no coefficient is trustworthy past the working precision; clamping
    // there turns the truncated product's spurious "exactly zero" high
    // coefficients into honest zero-to-precision values.
    std::vector<USeries> cs;
    cs.reserve(size_t(T) + 1);
    for (int64_t j = 0; j <= T; ++j) {
        USeries cj = acc.coeff(size_t(j));
        cs.push_back(cj.truncated(std::min(cj.prec(), prec)));
    }

    // The coefficient of t^j has valuation exactly q^{j+1}; reseed the tail
    // certificate from that law and verify it against every visible digit.
    for (int64_t j = 0; j <= T; ++j) {
        int64_t expect = sat_powq(q, j + 1);
        const USeries& cj = cs[size_t(j)];
        if (expect < cj.prec()) {
            if (cj.is_zero() || cj.valuation() != expect)
                throw GuardError("omega: coefficient valuation law failed");
        } else if (!cj.is_zero()) {
            throw GuardError("omega: coefficient mass appeared below its valuation law");
        }
    }
    TailCert cert;
    cert.near.assign(size_t(T), kCertInf);
    for (int64_t k = 1; k <= T; ++k) cert.near[size_t(k - 1)] = sat_powq(q, T + k + 1);
    cert.B = sat_powq(q, 2 * int64_t(T) + 2);
    cert.G = sat_mul(cert.B, w);
    cert.J = kCertInf;
    // The same law floors the stored coefficients themselves, including the
    // ones the window can no longer see; products built on top of this
    // series keep the geometric growth instead of flattening at the window.
    cert.coeff_floor.resize(size_t(T) + 1);
    for (int64_t j = 0; j <= T; ++j) cert.coeff_floor[size_t(j)] = sat_powq(q, j + 1);
    return TSeries::from_coeffs(F, T, std::move(cs), std::move(cert));
}

// ---- interpolation polynomial solver ----------------------------------------

namespace {

// One solve attempt at a fixed t-degree budget Jmax.  Reads the digits of
// R_d = Gamma_s S_d(s) Omega(theta)^s / (Omega^s)^{(d)}(theta) for d = 0..2,
// which must assemble the theta-digits of H^{(d)}(theta) at exponents
// i + j q^d, and solves the resulting linear system for the coefficients
// c_{ij} of H = sum_i (sum_j c_{ij} theta^j) t^i.  Any digit outside the
// expected support, or a solution that leaves the subfield, means the ansatz
// is too small: the caller escalates Jmax.
std::optional<std::vector<PolyA>> attempt_H(const FieldPtr& F, int T, uint64_t budget,
                                            uint32_t s, int64_t Jmax) {
    const uint32_t q = F->q();
    const int64_t w = int64_t(q) - 1;
    const int64_t Bs = int64_t((uint64_t(s - 1) * q) / (q - 1));
    const int64_t W = w * (Jmax + Bs * int64_t(q) * int64_t(q)) + 128;
    const int64_t P = int64_t(s) * q + W + 64 + w * T + 128;

    TSeries om = build_omega(F, P, T);
    USeries om_theta = om.eval_theta_power(0);
    USeries om_theta_s = om_theta.pow(int64_t(s));  // = pitilde^{-s}
    TSeries om_s = om.pow(s);
    PowerSumEngine eng(F, P, budget);
    USeries gser = USeries::from_poly(carlitz_gamma(F, s), P);

    const size_t cols = size_t(Jmax + 1) * size_t(Bs + 1);
    std::vector<std::vector<Field::Code>> rows;
    std::vector<Field::Code> rhs;
    for (uint32_t d = 0; d <= 2; ++d) {
        const int64_t qd = sat_powq(q, d);
        const int64_t m_max = Jmax + Bs * qd;
        const int64_t capV = int64_t(s) * sat_powq(q, d + 1) + W + 64;
        USeries Vd = om_s.twist(d, capV).eval_theta_power(0);
        if (Vd.is_zero() || Vd.valuation() != int64_t(s) * sat_powq(q, d + 1))
            throw GuardError("omega power lost its leading digit under twist");
        USeries Rd = gser * eng.sd_single(d, s) * om_theta_s * Vd.inverse();
        if (Rd.prec() < 1) return std::nullopt;
        // Support check: digits only at u-exponents -(q-1)m for m <= m_max.
        for (int64_t k = Rd.val_floor(); k < Rd.prec(); ++k) {
            Field::Code dig = k < Rd.prec() ? Rd.digit(k) : 0;
            if (!dig) continue;
            if (k > 0) return std::nullopt;
            if ((-k) % w != 0) return std::nullopt;
            if ((-k) / w > m_max) return std::nullopt;
            if (!F->in_subfield(dig)) return std::nullopt;
        }
        for (int64_t m = 0; m <= m_max; ++m) {
            Field::Code dig = -w * m < Rd.prec() ? Rd.digit(-w * m) : 0;
            std::vector<Field::Code> row(cols, 0);
            for (int64_t i = 0; i <= Jmax; ++i) {
                for (int64_t j = 0; j <= Bs; ++j)
                    if (i + j * qd == m) row[size_t(i) * size_t(Bs + 1) + size_t(j)] = 1;
            }
            rows.push_back(std::move(row));
            rhs.push_back(dig);
        }
    }

    Mat m(*F, rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
    SolveResult sol = solve(m, rhs);
    if (!sol.consistent) return std::nullopt;
    for (Field::Code x : sol.x)
        if (!F->in_subfield(x)) return std::nullopt;

    std::vector<PolyA> h;
    for (int64_t i = 0; i <= Jmax; ++i) {
        std::vector<Field::Code> cs(size_t(Bs + 1), 0);
        for (int64_t j = 0; j <= Bs; ++j)
            cs[size_t(j)] = sol.x[size_t(i) * size_t(Bs + 1) + size_t(j)];
        h.push_back(PolyA::from_coeffs(F, std::move(cs)));
    }
    while (h.size() > 1 && h.back().is_zero()) h.pop_back();
    return h;
}

// Independent confirmation of a candidate: (H Omega^s)^{(d)}(theta) must
// reproduce Gamma_s S_d(s) / pitilde^s for d = 0..3 well past the digit
// window the solve used.
bool verify_H(const FieldPtr& F, int T, uint64_t budget, uint32_t s,
              const std::vector<PolyA>& h, int64_t tol) {
    const uint32_t q = F->q();
    const int64_t w = int64_t(q) - 1;
    const int64_t Rv = tol + 192;
    // The deepest check below (d = 3) compares series whose common valuation
    // is s*q^4, so every input must carry that many digits plus the demanded
    // agreement margin; anything shorter leaves a vacuously tiny window.
    const int64_t P =
        std::max<int64_t>(512, int64_t(s) * sat_powq(q, 4) + Rv + w * T + 128);
    if (int64_t(h.size()) - 1 > int64_t(T)) return false;

    TSeries om = build_omega(F, P, T);
    TSeries Hom = TSeries::from_apoly(F, T, h, P) * om.pow(s);
    USeries om_theta_s = om.eval_theta_power(0).pow(int64_t(s));
    PowerSumEngine eng(F, P, budget);
    USeries gser = USeries::from_poly(carlitz_gamma(F, s), P);
    for (uint32_t d = 0; d <= 3; ++d) {
        const int64_t cap = int64_t(s) * sat_powq(q, d + 1) + Rv + w * T + 128;
        USeries lhs = Hom.twist(d, cap).eval_theta_power(0);
        USeries rhs = gser * eng.sd_single(d, s) * om_theta_s;
        if (agreement_digits(lhs, rhs) < tol) return false;
    }
    return true;
}

std::vector<Index> expand_factors(const std::vector<KronFactor>& factors) {
    std::vector<Index> out;
    for (const auto& f : factors) {
        if (f.index.empty()) throw UsageError("tensor factor with an empty index");
        if (f.mult == 0) throw UsageError("tensor factor with multiplicity zero");
        for (uint32_t m = 0; m < f.mult; ++m) out.push_back(f.index);
    }
    if (out.empty()) throw UsageError("tensor product needs at least one factor");
    return out;
}

std::vector<std::vector<TSeries>> kron_mat(const std::vector<std::vector<TSeries>>& A,
                                           const std::vector<std::vector<TSeries>>& B,
                                           const TSeries& zero_elem) {
    const size_t na = A.size(), nb = B.size();
    std::vector<std::vector<TSeries>> C(na * nb, std::vector<TSeries>(na * nb, zero_elem));
    for (size_t i1 = 0; i1 < na; ++i1)
        for (size_t j1 = 0; j1 < na; ++j1)
            for (size_t i2 = 0; i2 < nb; ++i2)
                for (size_t j2 = 0; j2 < nb; ++j2)
                    C[i1 * nb + i2][j1 * nb + j2] = A[i1][j1] * B[i2][j2];
    return C;
}

std::vector<TSeries> kron_vec(const std::vector<TSeries>& a, const std::vector<TSeries>& b) {
    std::vector<TSeries> c;
    c.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) c.push_back(x * y);
    return c;
}

}  // namespace

// ---- MotiveSession -----------------------------------------------------------

MotiveSession::MotiveSession(FieldPtr F, int64_t prec, int T, uint32_t D, uint64_t budget)
    : F_(std::move(F)), prec_(prec), T_(T), D_(D), budget_(budget), eng_(F_, prec, budget) {
    if (T_ < 1 || T_ > 64) throw UsageError("truncation order out of range");
    // Raise the layer cap until the first dropped layer is invisible: a layer
    // d contributes coefficient mass of valuation at least q^{d+1}.
    while (sat_powq(F_->q(), int64_t(D_) + 2) < prec_) {
        if (++D_ > 30) throw BudgetError("layer cap exceeds any workable depth");
    }
}

const TSeries& MotiveSession::omega() {
    if (!omega_built_) {
        omega_ = build_omega(F_, prec_, T_);
        omega_built_ = true;
    }
    return omega_;
}

const USeries& MotiveSession::pi_tilde() {
    if (!pi_built_) {
        pi_tilde_ = omega().eval_theta_power(0).inverse();
        pi_built_ = true;
    }
    return pi_tilde_;
}

const std::vector<PolyA>& MotiveSession::anderson_thakur_H(uint32_t s) {
    if (s == 0) throw UsageError("interpolation polynomial needs weight >= 1");
    auto it = h_cache_.find(s);
    if (it != h_cache_.end()) return it->second;
    auto h = solve_H(s);
    return h_cache_.emplace(s, std::move(h)).first->second;
}

std::vector<PolyA> MotiveSession::solve_H(uint32_t s) {
    for (int64_t Jmax = 0; Jmax <= 8; ++Jmax) {
        auto cand = attempt_H(F_, T_, budget_, s, Jmax);
        if (!cand) continue;
        if (verify_H(F_, T_, budget_, s, *cand, tolerance_digits())) return *cand;
    }
    throw BudgetError("interpolation polynomial not found within t-degree 8");
}

TSeries MotiveSession::h_omega_pow(uint32_t s) {
    TSeries H = TSeries::from_apoly(F_, T_, anderson_thakur_H(s), prec_);
    return H * omega().pow(s);
}

const TSeries& MotiveSession::h_omega_twist(uint32_t s, uint32_t d) {
    auto key = std::make_pair(s, d);
    auto it = homega_twist_cache_.find(key);
    if (it != homega_twist_cache_.end()) return it->second;
    TSeries v = (d == 0) ? h_omega_pow(s) : h_omega_twist(s, 0).twist(d, prec_);
    return homega_twist_cache_.emplace(std::move(key), std::move(v)).first->second;
}

TSeries MotiveSession::l_dp(const Index& idx, size_t pos, uint32_t bound,
                            std::map<std::pair<size_t, uint32_t>, TSeries>& memo) {
    if (pos == idx.depth()) return TSeries::constant(F_, T_, USeries::one(F_, prec_));
    auto key = std::make_pair(pos, bound);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    TSeries acc = TSeries::zero(F_, T_);
    const Field::Code eps = eps_embed(*F_, idx.eps[pos]);
    for (uint32_t d = 0; d < bound; ++d) {
        TSeries term = h_omega_twist(idx.s[pos], d).scaled_code(F_->pow(eps, int64_t(d)));
        acc = acc + term * l_dp(idx, pos + 1, d, memo);
    }
    memo.emplace(std::move(key), acc);
    return acc;
}

const TSeries& MotiveSession::l_series(const Index& idx) {
    auto it = l_cache_.find(idx);
    if (it != l_cache_.end()) return it->second;
    TSeries val = TSeries::zero(F_, T_);
    if (idx.empty()) {
        val = TSeries::constant(F_, T_, USeries::one(F_, prec_));
    } else {
        std::map<std::pair<size_t, uint32_t>, TSeries> memo;
        val = l_dp(idx, 0, D_ + 1, memo);
    }
    return l_cache_.emplace(idx, std::move(val)).first->second;
}

std::vector<std::vector<TSeries>> MotiveSession::build_phi_fwd(const Index& idx) {
    if (idx.empty()) throw UsageError("matrix build needs a nonempty index");
    const int r = int(idx.depth());
    std::vector<int64_t> dsuf(size_t(r) + 2, 0);
    for (int i = r; i >= 1; --i) dsuf[size_t(i)] = dsuf[size_t(i) + 1] + idx.s[size_t(i) - 1];

    const size_t n = size_t(r) + 1;
    std::vector<std::vector<TSeries>> m(n, std::vector<TSeries>(n, TSeries::zero(F_, T_)));
    const TPoly t_minus = {-(PolyA::theta(F_).pow(F_->q())), PolyA::one(F_)};
    for (int i = 1; i <= r; ++i) {
        TPoly diag = tpoly_pow(t_minus, uint64_t(dsuf[size_t(i)]), F_);
        m[size_t(i) - 1][size_t(i) - 1] = TSeries::from_apoly(F_, T_, diag, prec_);
        TPoly hs(anderson_thakur_H(idx.s[size_t(i) - 1]));
        TPoly sub = tpoly_mul(diag, hs, F_);
        Field::Code g = F_->unit_root_gamma(eps_embed(*F_, idx.eps[size_t(i) - 1]));
        m[size_t(i)][size_t(i) - 1] = TSeries::from_apoly(F_, T_, sub, prec_).scaled_code(g);
    }
    m[n - 1][n - 1] = TSeries::constant(F_, T_, USeries::one(F_, prec_));
    return m;
}

std::vector<std::vector<TSeries>> MotiveSession::build_psi(const Index& idx) {
    if (idx.empty()) throw UsageError("matrix build needs a nonempty index");
    const int r = int(idx.depth());
    std::vector<int64_t> dsuf(size_t(r) + 2, 0);
    for (int i = r; i >= 1; --i) dsuf[size_t(i)] = dsuf[size_t(i) + 1] + idx.s[size_t(i) - 1];

    std::map<int64_t, TSeries> ompow;
    auto om_pow = [&](int64_t e) -> const TSeries& {
        auto it = ompow.find(e);
        if (it == ompow.end()) it = ompow.emplace(e, omega().pow(uint64_t(e))).first;
        return it->second;
    };
    auto slice = [&](int j, int i) {  // positions j..i, 1-based inclusive
        Index sl;
        sl.s.assign(idx.s.begin() + (j - 1), idx.s.begin() + i);
        sl.eps.assign(idx.eps.begin() + (j - 1), idx.eps.begin() + i);
        return sl;
    };

    const size_t n = size_t(r) + 1;
    std::vector<std::vector<TSeries>> m(n, std::vector<TSeries>(n, TSeries::zero(F_, T_)));
    for (int i = 1; i <= r + 1; ++i) {
        for (int j = 1; j <= i; ++j) {
            if (i == r + 1 && j == r + 1) {
                m[size_t(i) - 1][size_t(j) - 1] =
                    TSeries::constant(F_, T_, USeries::one(F_, prec_));
                continue;
            }
            Field::Code g = 1;
            for (int nn = j; nn <= i - 1; ++nn)
                g = F_->mul(g, F_->unit_root_gamma(eps_embed(*F_, idx.eps[size_t(nn) - 1])));
            const TSeries& L = l_series(i == j ? Index{} : slice(j, i - 1));
            TSeries e = L.scaled_code(g);
            if (i <= r) e = e * om_pow(dsuf[size_t(i)]);
            m[size_t(i) - 1][size_t(j) - 1] = std::move(e);
        }
    }
    return m;
}

std::vector<TSeries> MotiveSession::psi_column(const Index& idx) {
    auto m = build_psi(idx);
    std::vector<TSeries> col;
    col.reserve(m.size());
    for (auto& row : m) col.push_back(std::move(row[0]));
    return col;
}

DiffEqReport MotiveSession::diff_eq_on(const std::vector<std::vector<TSeries>>& phi,
                                       const std::vector<std::vector<TSeries>>& psi,
                                       int64_t sum_d) {
    const size_t n = psi.size();
    DiffEqReport rep;
    rep.checked_tdeg = std::min(T_, 15);

    std::vector<std::vector<TSeries>> tw(n, std::vector<TSeries>(n, TSeries::zero(F_, T_)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) tw[i][j] = psi[i][j].twist(1, prec_);

    bool ok = true;
    int64_t minprec = std::numeric_limits<int64_t>::max();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            TSeries acc = TSeries::zero(F_, T_);
            for (size_t k = 0; k < n; ++k) acc = acc + phi[i][k] * tw[k][j];
            TSeries res = psi[i][j] - acc;
            for (int deg = 0; deg <= rep.checked_tdeg; ++deg) {
                const USeries& c = res.coeff(size_t(deg));
                if (!c.is_zero()) ok = false;
                minprec = std::min(minprec, c.prec());
            }
        }
    }
    rep.entries_ok = ok;
    rep.min_checked_prec = minprec;

    TSeries dpsi = det_laplace(psi, TSeries::zero(F_, T_));
    TSeries dres = dpsi - omega().pow(uint64_t(sum_d));
    rep.det_psi_ok = true;
    for (int deg = 0; deg <= T_; ++deg)
        if (!dres.coeff(size_t(deg)).is_zero()) rep.det_psi_ok = false;

    std::vector<std::vector<USeries>> p0(n,
                                         std::vector<USeries>(n, USeries::zero(F_, kExactZeroPrec)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) p0[i][j] = phi[i][j].coeff(0);
    USeries dphi = det_laplace(p0, USeries::zero(F_, kExactZeroPrec));
    PolyA mtq = -(PolyA::theta(F_).pow(F_->q()));
    USeries expected = USeries::from_poly(mtq.pow(uint64_t(sum_d)), prec_);
    rep.det_phi0_ok = (dphi - expected).is_zero() && !dphi.is_zero();
    return rep;
}

DiffEqReport MotiveSession::check_difference_eq(const Index& idx) {
    // sum of the suffix sums d_i = s_i + ... + s_r: entry s_k appears in
    // d_1, ..., d_k, hence with weight k.
    int64_t sum_d = 0;
    for (size_t i = 0; i < idx.s.size(); ++i) sum_d += int64_t(i + 1) * idx.s[i];
    return diff_eq_on(build_phi_fwd(idx), build_psi(idx), sum_d);
}

PeriodReport MotiveSession::check_period(const Index& idx) {
    auto col = psi_column(idx);
    USeries lhs = col.back().eval_theta_power(0) * pi_tilde().pow(int64_t(idx.weight()));
    USeries z = eng_.zeta(idx).value;
    PolyA gam = PolyA::one(F_);
    Field::Code g = 1;
    for (size_t i = 0; i < idx.s.size(); ++i) {
        gam = gam * carlitz_gamma(F_, idx.s[i]);
        g = F_->mul(g, F_->unit_root_gamma(eps_embed(*F_, idx.eps[i])));
    }
    USeries rhs = (z * USeries::from_poly(gam, prec_)).scaled(g);

    PeriodReport rep;
    rep.significant_digits = agreement_digits(lhs, rhs);
    rep.residual_valuation = residual_valuation(lhs, rhs);
    rep.zeta_valuation = z.val_floor();
    rep.pass = rep.significant_digits >= tolerance_digits();
    return rep;
}

SpecializationReport MotiveSession::check_specialization(const Index& idx, uint32_t N) {
    if (N < 1 || N > 4) throw UsageError("specialization depth N must be in [1, 4]");
    auto col = psi_column(idx);
    SpecializationReport rep;
    rep.N = N;
    rep.head_ok = true;
    for (size_t i = 0; i + 1 < col.size(); ++i) {
        USeries h = col[i].eval_theta_power(N);
        rep.head_prec.push_back(h.prec());
        if (!h.is_zero()) rep.head_ok = false;
    }
    USeries last = col.back().eval_theta_power(N);

    PolyA gam = PolyA::one(F_);
    Field::Code g = 1, ep = 1;
    for (size_t i = 0; i < idx.s.size(); ++i) {
        gam = gam * carlitz_gamma(F_, idx.s[i]);
        g = F_->mul(g, F_->unit_root_gamma(eps_embed(*F_, idx.eps[i])));
        ep = F_->mul(ep, eps_embed(*F_, idx.eps[i]));
    }
    USeries X = eng_.zeta(idx).value * USeries::from_poly(gam, prec_) *
                pi_tilde().pow(-int64_t(idx.weight()));
    Field::Code scale = F_->mul(g, F_->pow(ep, int64_t(N)));
    USeries expected = X.twist(N, prec_).scaled(scale);

    rep.last_significant_digits = agreement_digits(last, expected);
    rep.last_ok = rep.last_significant_digits >= tolerance_digits();
    return rep;
}

DiffEqReport MotiveSession::check_difference_eq_kron(const std::vector<KronFactor>& factors) {
    auto idxs = expand_factors(factors);
    std::vector<std::vector<std::vector<TSeries>>> phis, psis;
    std::vector<int64_t> es, ns;
    int64_t ntot = 1;
    for (const auto& idx : idxs) {
        phis.push_back(build_phi_fwd(idx));
        psis.push_back(build_psi(idx));
        int64_t e = 0;
        for (size_t i = 0; i < idx.s.size(); ++i) e += int64_t(i + 1) * idx.s[i];
        es.push_back(e);
        ns.push_back(int64_t(idx.depth()) + 1);
        ntot *= ns.back();
        if (ntot > 32) throw UsageError("tensor product grew past 32 rows");
    }
    int64_t E = 0;
    for (size_t k = 0; k < es.size(); ++k) E += es[k] * (ntot / ns[k]);

    auto phiT = phis[0];
    auto psiT = psis[0];
    const TSeries z = TSeries::zero(F_, T_);
    for (size_t k = 1; k < phis.size(); ++k) {
        phiT = kron_mat(phiT, phis[k], z);
        psiT = kron_mat(psiT, psis[k], z);
    }
    return diff_eq_on(phiT, psiT, E);
}

PeriodReport MotiveSession::check_period_kron(const std::vector<KronFactor>& factors) {
    auto idxs = expand_factors(factors);
    std::vector<TSeries> colT;
    USeries rhs = USeries::one(F_, prec_);
    uint64_t w_tot = 0;
    for (const auto& idx : idxs) {
        auto col = psi_column(idx);
        colT = colT.empty() ? std::move(col) : kron_vec(colT, col);
        PolyA gam = PolyA::one(F_);
        Field::Code g = 1;
        for (size_t i = 0; i < idx.s.size(); ++i) {
            gam = gam * carlitz_gamma(F_, idx.s[i]);
            g = F_->mul(g, F_->unit_root_gamma(eps_embed(*F_, idx.eps[i])));
        }
        rhs = rhs * (eng_.zeta(idx).value * USeries::from_poly(gam, prec_)).scaled(g);
        w_tot += idx.weight();
        if (colT.size() > 32) throw UsageError("tensor product grew past 32 rows");
    }
    USeries lhs = colT.back().eval_theta_power(0) * pi_tilde().pow(int64_t(w_tot));

    PeriodReport rep;
    rep.significant_digits = agreement_digits(lhs, rhs);
    rep.residual_valuation = residual_valuation(lhs, rhs);
    rep.zeta_valuation = rhs.val_floor();
    rep.pass = rep.significant_digits >= tolerance_digits();
    return rep;
}

SpecializationReport MotiveSession::check_specialization_kron(
    const std::vector<KronFactor>& factors, uint32_t N) {
    if (N < 1 || N > 4) throw UsageError("specialization depth N must be in [1, 4]");
    auto idxs = expand_factors(factors);
    std::vector<TSeries> colT;
    USeries zg = USeries::one(F_, prec_);
    Field::Code g = 1, ep = 1;
    uint64_t w_tot = 0;
    for (const auto& idx : idxs) {
        auto col = psi_column(idx);
        colT = colT.empty() ? std::move(col) : kron_vec(colT, col);
        PolyA gam = PolyA::one(F_);
        for (size_t i = 0; i < idx.s.size(); ++i) {
            gam = gam * carlitz_gamma(F_, idx.s[i]);
            g = F_->mul(g, F_->unit_root_gamma(eps_embed(*F_, idx.eps[i])));
            ep = F_->mul(ep, eps_embed(*F_, idx.eps[i]));
        }
        zg = zg * eng_.zeta(idx).value * USeries::from_poly(gam, prec_);
        w_tot += idx.weight();
        if (colT.size() > 32) throw UsageError("tensor product grew past 32 rows");
    }

    SpecializationReport rep;
    rep.N = N;
    rep.head_ok = true;
    for (size_t i = 0; i + 1 < colT.size(); ++i) {
        USeries h = colT[i].eval_theta_power(N);
        rep.head_prec.push_back(h.prec());
        if (!h.is_zero()) rep.head_ok = false;
    }
    USeries last = colT.back().eval_theta_power(N);
    USeries X = zg * pi_tilde().pow(-int64_t(w_tot));
    USeries expected = X.twist(N, prec_).scaled(F_->mul(g, F_->pow(ep, int64_t(N))));
    rep.last_significant_digits = agreement_digits(last, expected);
    rep.last_ok = rep.last_significant_digits >= tolerance_digits();
    return rep;
}

}  // namespace amzv
