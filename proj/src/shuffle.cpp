#include "amzv/shuffle.hpp"

#include <algorithm>

namespace amzv {

namespace {

bool pair_less(const std::pair<Index, Index>& x, const std::pair<Index, Index>& y) {
    IndexLess less;
    if (less(x.first, y.first)) return true;
    if (less(y.first, x.first)) return false;
    return less(x.second, y.second);
}

}  // namespace

ShuffleEngine::ShuffleEngine(uint32_t p, uint32_t e)
    : p_(p), e_(e), sless_memo_(&pair_less) {
    if (!Field::is_prime(p)) throw UsageError("ShuffleEngine: p must be prime");
    if (e < 1) throw UsageError("ShuffleEngine: e must be >= 1");
    uint64_t qv = 1;
    for (uint32_t i = 0; i < e; ++i) qv *= p;
    if (qv > 4096) throw BudgetError("ShuffleEngine: q unreasonably large");
    q_ = uint32_t(qv);
}

uint32_t ShuffleEngine::regroup_delta(uint32_t j, uint32_t s1, uint32_t s2) const {
    if (j == 0 || j >= s1 + s2) throw UsageError("regroup_delta: need 0 < j < s1+s2");
    auto signed_binom = [&](uint32_t s) -> uint64_t {
        uint64_t c = Field::lucas_binom(j - 1, s - 1, p_);
        // (-1)^{s-1} * c mod p
        return (s % 2 == 1) ? c : (uint64_t(p_) - c) % p_;
    };
    return uint32_t((signed_binom(s1) + signed_binom(s2)) % p_);
}

LinComb ShuffleEngine::depth1_sd_product(uint32_t s1, uint32_t e1, uint32_t s2, uint32_t e2) {
    LinComb out;
    out.level = Level::Sd;
    uint32_t qm1 = q_ - 1;
    uint32_t emul = q_ == 2 ? 0 : (e1 + e2) % qm1;
    out.add_term(Index{{s1 + s2}, {emul}}, 1, p_);
    for (uint32_t j = qm1; j < s1 + s2; j += qm1) {
        uint32_t delta = regroup_delta(j, s1, s2);
        if (delta) out.add_term(Index{{s1 + s2 - j, j}, {emul, 0}}, delta, p_);
    }
    return out;
}

LinComb ShuffleEngine::sless_product(const Index& a, const Index& b) {
    auto key = std::make_pair(a, b);
    auto it = sless_memo_.find(key);
    if (it != sless_memo_.end()) return it->second;
    LinComb out = sless_product_uncached(a, b);
    sless_memo_.emplace(std::move(key), out);
    return out;
}

LinComb ShuffleEngine::sless_product_uncached(const Index& a, const Index& b) {
    LinComb out;
    out.level = Level::Sless;
    if (a.empty()) {
        out.add_term(b.empty() ? Index{} : b, 1, p_);
        return out;
    }
    if (b.empty()) {
        out.add_term(a, 1, p_);
        return out;
    }
    const uint32_t a1 = a.s[0], al = a.eps[0];
    const uint32_t b1 = b.s[0], bl = b.eps[0];
    const uint32_t qm1 = q_ - 1;
    const uint32_t emul = q_ == 2 ? 0 : (al + bl) % qm1;
    const Index at = a.tail(), bt = b.tail();

    // a's top layer strictly leads: a1 rides in front of S_{<}(tail(a)) * S_{<}(b).
    for (const auto& [c, f] : sless_product(at, b).terms) out.add_term(Index::cons(a1, al, c), f, p_);
    // b's top layer strictly leads.
    for (const auto& [c, f] : sless_product(bt, a).terms) out.add_term(Index::cons(b1, bl, c), f, p_);
    // Equal top layers: collide the heads, then merge the remaining tails.
    LinComb tails = sless_product(at, bt);
    for (const auto& [e, g] : tails.terms) {
        out.add_term(Index::cons(a1 + b1, emul, e), g, p_);
        for (uint32_t j = qm1; j < a1 + b1; j += qm1) {
            uint32_t delta = regroup_delta(j, a1, b1);
            if (!delta) continue;
            // the collision's second slot (j; 1) still has to be merged
            // with the tail combination e
            for (const auto& [w, h] : sless_product(Index{{j}, {0}}, e).terms)
                out.add_term(Index::cons(a1 + b1 - j, emul, w), uint64_t(delta) * g % p_ * h, p_);
        }
    }
    return out;
}

LinComb ShuffleEngine::sd_product(const Index& a, const Index& b) {
    LinComb out;
    out.level = Level::Sd;
    if (a.empty()) {
        out.add_term(b.empty() ? Index{} : b, 1, p_);
        return out;
    }
    if (b.empty()) {
        out.add_term(a, 1, p_);
        return out;
    }
    const uint32_t a1 = a.s[0], al = a.eps[0];
    const uint32_t b1 = b.s[0], bl = b.eps[0];
    const uint32_t qm1 = q_ - 1;
    const uint32_t emul = q_ == 2 ? 0 : (al + bl) % qm1;
    LinComb tails = sless_product(a.tail(), b.tail());
    for (const auto& [e, g] : tails.terms) {
        out.add_term(Index::cons(a1 + b1, emul, e), g, p_);
        for (uint32_t j = qm1; j < a1 + b1; j += qm1) {
            uint32_t delta = regroup_delta(j, a1, b1);
            if (!delta) continue;
            for (const auto& [w, h] : sless_product(Index{{j}, {0}}, e).terms)
                out.add_term(Index::cons(a1 + b1 - j, emul, w), uint64_t(delta) * g % p_ * h, p_);
        }
    }
    return out;
}

LinComb ShuffleEngine::zeta_product(const Index& a, const Index& b) {
    if (a.empty() || b.empty()) throw UsageError("zeta_product: empty index");
    LinComb out;
    out.level = Level::Zeta;
    // Equal top degrees: the S_d * S_d expansion, summed over d.
    LinComb diag = sd_product(a, b);
    for (const auto& [c, f] : diag.terms) out.add_term(c, f, p_);
    // a's top degree strictly larger: a1 leads S_{<}(tail(a)) * S_{<}(b).
    for (const auto& [c, f] : sless_product(a.tail(), b).terms)
        out.add_term(Index::cons(a.s[0], a.eps[0], c), f, p_);
    // b's top degree strictly larger.
    for (const auto& [c, f] : sless_product(b.tail(), a).terms)
        out.add_term(Index::cons(b.s[0], b.eps[0], c), f, p_);
    return out;
}

LinComb ShuffleEngine::closed_form_2x1(const Index& a, const Index& b) {
    if (a.depth() != 2 || b.depth() != 1)
        throw UsageError("closed_form_2x1: need a depth-2 left factor and depth-1 right factor");
    const uint32_t a1 = a.s[0], a2 = a.s[1], b1 = b.s[0];
    const uint32_t e1 = a.eps[0], e2 = a.eps[1], l1 = b.eps[0];
    const uint32_t qm1 = q_ - 1;
    auto emul = [&](uint32_t x, uint32_t y) { return q_ == 2 ? 0u : (x + y) % qm1; };

    LinComb out;
    out.level = Level::Zeta;
    // Top layers of a and b collide.
    for (uint32_t j1 = qm1; j1 < a1 + b1; j1 += qm1) {
        uint32_t d1 = regroup_delta(j1, a1, b1);
        if (!d1) continue;
        // ... and the freed slot j1 collides again with a2:
        for (uint32_t j2 = qm1; j2 < j1 + a2; j2 += qm1) {
            uint32_t d2 = regroup_delta(j2, j1, a2);
            if (!d2) continue;
            out.add_term(Index{{a1 + b1 - j1, j1 + a2 - j2, j2}, {emul(e1, l1), e2, 0}},
                         uint64_t(d1) * d2, p_);
        }
        out.add_term(Index{{a1 + b1 - j1, j1 + a2}, {emul(e1, l1), e2}}, d1, p_);
        out.add_term(Index{{a1 + b1 - j1, j1, a2}, {emul(e1, l1), 0, e2}}, d1, p_);
        out.add_term(Index{{a1 + b1 - j1, a2, j1}, {emul(e1, l1), e2, 0}}, d1, p_);
    }
    out.add_term(Index{{a1 + b1, a2}, {emul(e1, l1), e2}}, 1, p_);
    // b collides with the lower layer of a.
    for (uint32_t j3 = qm1; j3 < a2 + b1; j3 += qm1) {
        uint32_t d3 = regroup_delta(j3, a2, b1);
        if (d3) out.add_term(Index{{a1, a2 + b1 - j3, j3}, {e1, emul(e2, l1), 0}}, d3, p_);
    }
    out.add_term(Index{{a1, a2 + b1}, {e1, emul(e2, l1)}}, 1, p_);
    // b's layer strictly between / below / above the layers of a.
    out.add_term(Index{{a1, a2, b1}, {e1, e2, l1}}, 1, p_);
    out.add_term(Index{{a1, b1, a2}, {e1, l1, e2}}, 1, p_);
    out.add_term(Index{{b1, a1, a2}, {l1, e1, e2}}, 1, p_);
    return out;
}

bool check_grading(const Index& a, const Index& b, const LinComb& combo, uint32_t q) {
    uint64_t w = a.weight() + b.weight();
    uint32_t dep = a.depth() + b.depth();
    uint32_t ep = q == 2 ? 0 : (a.eps_product(q) + b.eps_product(q)) % (q - 1);
    for (const auto& [idx, c] : combo.terms) {
        (void)c;
        if (idx.weight() != w) return false;
        if (idx.depth() > dep) return false;
        if (idx.eps_product(q) != ep) return false;
    }
    return true;
}

VerifyReport verify_lincomb(PowerSumEngine& eng,
                            const std::vector<std::pair<Index, Index>>& products,
                            const LinComb& combo) {
    if (combo.level != Level::Zeta)
        throw UsageError("verify_lincomb: combination must be at zeta level");
    if (products.empty()) throw UsageError("verify_lincomb: no products given");
    const FieldPtr& F = eng.field();
    USeries lhs = USeries::zero(F, kExactZeroPrec);
    for (const auto& [a, b] : products) lhs = lhs + eng.zeta(a).value * eng.zeta(b).value;
    USeries rhs = USeries::zero(F, kExactZeroPrec);
    for (const auto& [idx, c] : combo.terms)
        rhs = rhs + eng.zeta(idx).value.scaled(F->from_int(c));
    USeries diff = lhs - rhs;
    VerifyReport rep;
    rep.product_valuation = lhs.val_floor();
    rep.common_prec = diff.prec();
    rep.zero_to_prec = diff.is_zero();
    rep.residual_valuation = diff.is_zero() ? diff.prec() : diff.valuation();
    rep.significant_digits = rep.residual_valuation - rep.product_valuation;
    return rep;
}

uint32_t tower_degree_for(uint32_t p, uint32_t e,
                          const std::vector<std::pair<Index, Index>>& products,
                          const LinComb& combo) {
    std::vector<uint32_t> exps;
    for (const auto& [a, b] : products) {
        exps.insert(exps.end(), a.eps.begin(), a.eps.end());
        exps.insert(exps.end(), b.eps.begin(), b.eps.end());
    }
    for (const auto& [idx, c] : combo.terms) {
        (void)c;
        exps.insert(exps.end(), idx.eps.begin(), idx.eps.end());
    }
    return Field::choose_M(p, e, exps);
}

VerifyReport verify_lincomb(uint32_t p, uint32_t e,
                            const std::vector<std::pair<Index, Index>>& products,
                            const LinComb& combo, int64_t prec, uint64_t budget) {
    FieldPtr F = make_field(p, e, tower_degree_for(p, e, products, combo));
    PowerSumEngine eng(F, prec, budget);
    return verify_lincomb(eng, products, combo);
}

}  // namespace amzv
