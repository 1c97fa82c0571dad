#include "amzv/useries.hpp"

#include <algorithm>
#include <sstream>

#include "amzv/kernels.hpp"

namespace amzv {

namespace {

// Windows at or past this bound mean "known exactly to all orders"; only
// zero-to-precision values carry them.  Window bookkeeping saturates here so
// those sentinels flow through products without overflowing 64-bit math.
constexpr int64_t kPrecSat = int64_t(1) << 62;

int64_t sat_add(int64_t a, int64_t b) {
    if (a >= kPrecSat || b >= kPrecSat) return kPrecSat;
    return a + b;  // genuine windows stay far below the saturation bound
}

// Any window this wide is a bookkeeping bug, not a real request.
constexpr int64_t kMaxDigits = int64_t(1) << 32;

}  // namespace

USeries::USeries(FieldPtr F, int64_t lo, std::vector<Field::Code> dg)
    : F_(std::move(F)), lo_(lo), dg_(std::move(dg)) {
    strip_leading_zeros();
}

void USeries::strip_leading_zeros() {
    size_t k = 0;
    while (k < dg_.size() && dg_[k] == 0) ++k;
    if (k) {
        dg_.erase(dg_.begin(), dg_.begin() + k);
        lo_ += int64_t(k);
    }
}

void USeries::check_same_field(const USeries& a, const USeries& b) {
    if (a.F_.get() != b.F_.get())
        throw GuardError("USeries: operands belong to different field instances");
}

USeries USeries::zero(FieldPtr F, int64_t prec) { return USeries(std::move(F), prec, {}); }

USeries USeries::one(FieldPtr F, int64_t prec) { return monomial(std::move(F), 1, 0, prec); }

USeries USeries::monomial(FieldPtr F, Field::Code a, int64_t k, int64_t prec) {
    if (a == 0 || k >= prec) return zero(std::move(F), prec);
    if (prec - k > kMaxDigits)
        throw GuardError("USeries: digit window too large to materialize");
    std::vector<Field::Code> dg(size_t(prec - k), 0);
    dg[0] = a;
    return USeries(std::move(F), k, std::move(dg));
}

USeries USeries::from_poly(const PolyA& f, int64_t prec) {
    const FieldPtr& F = f.F;
    if (f.is_zero()) return zero(F, prec);
    int64_t w = int64_t(F->q()) - 1;
    int64_t lo = -w * f.degree();
    if (lo >= prec) return zero(F, prec);
    if (prec - lo > kMaxDigits)
        throw GuardError("USeries: digit window too large to materialize");
    std::vector<Field::Code> dg(size_t(prec - lo), 0);
    for (size_t i = 0; i < f.c.size(); ++i) {
        int64_t pos = -w * int64_t(i);
        if (f.c[i] && pos < prec) dg[size_t(pos - lo)] = f.c[i];
    }
    return USeries(F, lo, std::move(dg));
}

int64_t USeries::valuation() const {
    if (dg_.empty())
        throw PrecisionError("USeries: valuation of a series that is zero to precision " +
                             std::to_string(lo_));
    return lo_;
}

Field::Code USeries::digit(int64_t k) const {
    if (k >= prec())
        throw PrecisionError("USeries: digit " + std::to_string(k) + " beyond precision " +
                             std::to_string(prec()));
    if (k < lo_) return 0;
    return dg_[size_t(k - lo_)];
}

Rat USeries::theta_degree() const { return Rat::of(-valuation(), int64_t(F_->q()) - 1); }

USeries USeries::operator+(const USeries& o) const {
    check_same_field(*this, o);
    int64_t hi = std::min(prec(), o.prec());
    int64_t lo = std::min(lo_, o.lo_);
    if (lo >= hi) return zero(F_, hi);
    std::vector<Field::Code> dg(size_t(hi - lo), 0);
    for (int64_t k = std::max(lo, lo_); k < std::min(hi, prec()); ++k) dg[size_t(k - lo)] = digit(k);
    for (int64_t k = std::max(lo, o.lo_); k < std::min(hi, o.prec()); ++k)
        dg[size_t(k - lo)] = F_->add(dg[size_t(k - lo)], o.digit(k));
    return USeries(F_, lo, std::move(dg));
}

USeries USeries::operator-() const {
    USeries r = *this;
    for (auto& d : r.dg_) d = F_->neg(d);
    return r;
}

USeries USeries::operator-(const USeries& o) const { return *this + (-o); }

USeries USeries::scaled(Field::Code s) const {
    if (s == 0) return zero(F_, prec());
    USeries r = *this;
    for (auto& d : r.dg_) d = F_->mul(d, s);
    return r;
}

USeries USeries::shifted(int64_t k) const {
    USeries r = *this;
    r.lo_ += k;
    return r;
}

USeries USeries::truncated(int64_t new_prec) const {
    if (new_prec > prec())
        throw PrecisionError("USeries: cannot raise precision by truncation");
    if (new_prec <= lo_) return zero(F_, new_prec);
    std::vector<Field::Code> dg(dg_.begin(), dg_.begin() + size_t(new_prec - lo_));
    return USeries(F_, lo_, std::move(dg));
}

USeries USeries::mul_naive(const USeries& a, const USeries& b) {
    check_same_field(a, b);
    const FieldPtr& F = a.F_;
    int64_t rlo = sat_add(a.lo_, b.lo_);
    int64_t rhi = std::min(sat_add(a.lo_, b.prec()), sat_add(b.lo_, a.prec()));
    if (a.is_zero() || b.is_zero()) return zero(F, rhi);
    size_t len = size_t(rhi - rlo);
    std::vector<Field::Code> dg(len, 0);
    for (size_t i = 0; i < a.dg_.size() && i < len; ++i) {
        if (!a.dg_[i]) continue;
        size_t jmax = std::min(b.dg_.size(), len - i);
        for (size_t j = 0; j < jmax; ++j) {
            if (!b.dg_[j]) continue;
            dg[i + j] = F->add(dg[i + j], F->mul(a.dg_[i], b.dg_[j]));
        }
    }
    return USeries(F, rlo, std::move(dg));
}

USeries USeries::operator*(const USeries& o) const {
    check_same_field(*this, o);
    const FieldPtr& F = F_;
    const uint32_t p = F->p(), n = F->n();
    int64_t rlo = sat_add(lo_, o.lo_);
    int64_t rhi = std::min(sat_add(lo_, o.prec()), sat_add(o.lo_, prec()));
    if (is_zero() || o.is_zero()) return zero(F, rhi);
    size_t len = size_t(rhi - rlo);
    // The byte-plane path needs digits that fit the kernels' nibble tables.
    if (p > 13 || len < 8) return mul_naive(*this, o);

    const USeries& a = (dg_.size() <= o.dg_.size()) ? *this : o;  // fewer scalar rows outside
    const USeries& b = (dg_.size() <= o.dg_.size()) ? o : *this;

    // Split b and the accumulator into base-p digit planes.
    const size_t blen = b.dg_.size();
    std::vector<uint8_t> bp(size_t(n) * blen);
    for (size_t j = 0; j < blen; ++j) {
        uint32_t v = b.dg_[j];
        for (uint32_t r = 0; r < n; ++r) {
            bp[r * blen + j] = uint8_t(v % p);
            v /= p;
        }
    }
    std::vector<uint8_t> op(size_t(n) * len, 0);

    // Multiplication by a fixed code c is F_p-linear on digit planes; its
    // matrix columns are the digit vectors of c * x^s.
    std::vector<uint8_t> mat(size_t(n) * n);
    uint32_t cached_code = 0;
    auto load_matrix = [&](uint32_t c) {
        if (c == cached_code) return;
        cached_code = c;
        uint64_t basis = 1;
        for (uint32_t s = 0; s < n; ++s) {
            uint32_t v = F->mul(c, Field::Code(basis));
            for (uint32_t r = 0; r < n; ++r) {
                mat[r * n + s] = uint8_t(v % p);
                v /= p;
            }
            basis *= p;
        }
    };

    for (size_t i = 0; i < a.dg_.size() && i < len; ++i) {
        uint32_t c = a.dg_[i];
        if (!c) continue;
        load_matrix(c);
        size_t take = std::min(blen, len - i);
        for (uint32_t r = 0; r < n; ++r)
            for (uint32_t s = 0; s < n; ++s) {
                uint8_t m = mat[r * n + s];
                if (m) kern::axpy(&op[r * len + i], &bp[s * blen], take, m, uint8_t(p));
            }
    }

    std::vector<Field::Code> dg(len, 0);
    for (size_t k = 0; k < len; ++k) {
        uint64_t code = 0;
        for (uint32_t r = n; r-- > 0;) code = code * p + op[r * len + k];
        dg[k] = Field::Code(code);
    }
    return USeries(F, rlo, std::move(dg));
}

USeries USeries::inverse() const {
    if (is_zero())
        throw PrecisionError("USeries: inverse of a series that is zero to precision " +
                             std::to_string(prec()));
    const size_t K = dg_.size();
    std::vector<Field::Code> r(K, 0);
    Field::Code b0 = F_->inv(dg_[0]);
    r[0] = b0;
    for (size_t k = 1; k < K; ++k) {
        Field::Code acc = 0;
        for (size_t i = 1; i <= k; ++i)
            if (dg_[i] && r[k - i]) acc = F_->add(acc, F_->mul(dg_[i], r[k - i]));
        r[k] = F_->mul(F_->neg(acc), b0);
    }
    return USeries(F_, -lo_, std::move(r));
}

USeries USeries::pow(int64_t nexp) const {
    if (nexp < 0) return inverse().pow(-nexp);
    if (is_zero()) {
        if (nexp == 0) return one(F_, prec());
        return zero(F_, prec());  // conservative: true valuation >= prec
    }
    // The number of known digits past the valuation is invariant under
    // multiplication, so powers keep this series' relative precision.
    USeries r = one(F_, int64_t(dg_.size()));
    USeries base = *this;
    uint64_t k = uint64_t(nexp);
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

USeries USeries::twist(uint32_t d, int64_t prec_cap) const {
    uint64_t qd = 1;
    for (uint32_t i = 0; i < d; ++i) {
        qd *= F_->q();
        if (qd > (uint64_t(1) << 40)) throw BudgetError("USeries: twist stride overflow");
    }
    if (is_zero() && prec() >= kPrecSat) return *this;  // exact zero twists to itself
    auto scale = [&](int64_t v) { return v * int64_t(qd); };
    int64_t rhi = std::min(scale(prec()), prec_cap);
    if (is_zero()) return zero(F_, rhi);
    int64_t rlo = scale(lo_);
    if (rlo >= rhi) return zero(F_, rhi);
    std::vector<Field::Code> dg(size_t(rhi - rlo), 0);
    for (size_t i = 0; i < dg_.size(); ++i) {
        int64_t pos = scale(lo_ + int64_t(i));
        if (pos >= rhi) break;
        if (dg_[i]) dg[size_t(pos - rlo)] = F_->frobenius(dg_[i], uint64_t(F_->e()) * d);
    }
    return USeries(F_, rlo, std::move(dg));
}

std::string USeries::to_string(size_t max_terms) const {
    if (is_zero()) return "O(u^" + std::to_string(prec()) + ")";
    std::ostringstream os;
    size_t shown = 0;
    for (size_t i = 0; i < dg_.size() && shown < max_terms; ++i) {
        if (!dg_[i]) continue;
        if (shown) os << " + ";
        std::string cs = F_->to_string(dg_[i]);
        os << (cs.find('+') != std::string::npos ? "(" + cs + ")" : cs);
        int64_t k = lo_ + int64_t(i);
        if (k != 0) os << "*u^" << k;
        ++shown;
    }
    os << " + O(u^" << prec() << ")";
    return os.str();
}

int64_t residual_valuation(const USeries& a, const USeries& b) {
    USeries d = a - b;
    return d.is_zero() ? d.prec() : d.valuation();
}

bool agree_on_common_window(const USeries& a, const USeries& b) { return (a - b).is_zero(); }

int64_t agreement_digits(const USeries& a, const USeries& b) {
    int64_t ref = std::min(a.val_floor(), b.val_floor());
    return residual_valuation(a, b) - ref;
}

}  // namespace amzv
