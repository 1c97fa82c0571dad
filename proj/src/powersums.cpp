#include "amzv/powersums.hpp"

#include <algorithm>

namespace amzv {

PowerSumEngine::PowerSumEngine(FieldPtr F, int64_t prec, uint64_t budget)
    : F_(std::move(F)), prec_(prec), budget_(budget) {
    if (prec_ < 8) throw UsageError("PowerSumEngine: precision must be at least 8 digits");
}

const USeries& PowerSumEngine::sd_single(uint32_t d, uint32_t s) {
    if (s == 0) throw UsageError("PowerSumEngine: weights must be positive");
    auto key = std::make_pair(d, s);
    auto it = sd_cache_.find(key);
    if (it != sd_cache_.end()) return it->second;
    USeries acc = USeries::zero(F_, kExactZeroPrec);
    for (const PolyA& a : monic_enumerate(F_, d, budget_)) {
        // a^{-s} as the series inverse of the exact polynomial a^s; the
        // window extends past prec_ for free because a^s has negative
        // valuation, which keeps later truncations from biting early.
        acc = acc + USeries::from_poly(a.pow(s), prec_).inverse();
    }
    return sd_cache_.emplace(key, std::move(acc)).first->second;
}

USeries PowerSumEngine::alt_sd_single(uint32_t d, uint32_t s, uint32_t eps_exp) {
    const USeries& base = sd_single(d, s);
    Field::Code eps = eps_embed(*F_, eps_exp);
    return base.scaled(F_->pow(eps, d));
}

USeries PowerSumEngine::sd(uint32_t d, const Index& idx) {
    if (idx.empty()) return USeries::one(F_, prec_);
    if (idx.depth() - 1 > d) return USeries::zero(F_, kExactZeroPrec);
    USeries head = alt_sd_single(d, idx.s[0], idx.eps[0]);
    // The empty tail sum is exactly 1; skipping the product keeps the head's
    // full window instead of cutting it at a materialized identity.
    if (idx.depth() == 1) return head;
    return head * sless(d, idx.tail());
}

const USeries& PowerSumEngine::sless(uint32_t d, const Index& idx) {
    SlessKey key{d, idx};
    auto it = sless_cache_.find(key);
    if (it != sless_cache_.end()) return it->second;
    USeries value = USeries::zero(F_, kExactZeroPrec);
    if (idx.empty()) {
        value = USeries::one(F_, prec_);
    } else if (d > 0) {
        value = sless(d - 1, idx) + sd(d - 1, idx);
    }
    return sless_cache_.emplace(std::move(key), std::move(value)).first->second;
}

ZetaValue PowerSumEngine::zeta(const Index& idx) {
    auto it = zeta_cache_.find(idx);
    if (it != zeta_cache_.end()) return it->second;
    if (idx.empty()) throw UsageError("zeta: empty index");

    ZetaValue out;
    out.index = idx;
    USeries acc = USeries::zero(F_, kExactZeroPrec);
    int64_t last_val = INT64_MIN;
    uint32_t d = idx.depth() - 1;
    for (;; ++d) {
        if (d > 200) throw GuardError("zeta: degree loop failed to terminate");
        USeries term = sd(d, idx);
        if (term.is_zero()) {
            // Zero to its window: everything from this layer on sits at or
            // above that window's precision.
            out.tail_valuation_bound = std::min(term.prec(), kExactZeroPrec);
            break;
        }
        int64_t v = term.valuation();
        if (v <= last_val)
            throw GuardError("zeta: layer valuations must increase strictly (layer " +
                             std::to_string(d) + ")");
        last_val = v;
        if (v >= prec_) {
            out.tail_valuation_bound = v;
            break;
        }
        acc = acc + term;
        out.d_max_used = d;
    }
    if (out.tail_valuation_bound < prec_)
        throw GuardError("zeta: tail bound below working precision");
    out.value = acc.is_zero() && acc.prec() > prec_ ? USeries::zero(F_, prec_)
                                                    : acc.truncated(std::min(acc.prec(), prec_));
    zeta_cache_.emplace(idx, out);
    return out;
}

NonvanishingCert PowerSumEngine::nonvanishing(const Index& idx) {
    ZetaValue z = zeta(idx);
    USeries lead = sd(idx.depth() - 1, idx);
    if (z.value.is_zero())
        throw GuardError("nonvanishing: evaluated value vanished to precision");
    if (lead.valuation() != z.value.valuation())
        throw GuardError("nonvanishing: leading layer does not dominate");
    NonvanishingCert cert;
    cert.index = idx;
    cert.leading_valuation = z.value.valuation();
    cert.leading_coeff = z.value.digits().front();
    cert.d_max_used = z.d_max_used;
    cert.tail_valuation_bound = z.tail_valuation_bound;
    return cert;
}

FracA PowerSumEngine::sd_fraction(uint32_t d, uint32_t s) {
    if (d > 2) throw UsageError("sd_fraction: exact fraction mode supports d <= 2");
    if (s == 0) throw UsageError("sd_fraction: weights must be positive");
    FracA acc = FracA::zero(F_);
    for (const PolyA& a : monic_enumerate(F_, d, budget_))
        acc = acc + FracA::of(PolyA::one(F_), a.pow(s));
    return acc;
}

}  // namespace amzv
