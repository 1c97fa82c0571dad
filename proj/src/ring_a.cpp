#include "amzv/ring_a.hpp"

#include <algorithm>
#include <sstream>

namespace amzv {

namespace {
void normalize(std::vector<Field::Code>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}
}  // namespace

PolyA PolyA::constant(FieldPtr F, Field::Code a) {
    PolyA r{std::move(F), {}};
    if (a) r.c.push_back(a);
    return r;
}

PolyA PolyA::from_coeffs(FieldPtr F, std::vector<Field::Code> cs) {
    normalize(cs);
    return {std::move(F), std::move(cs)};
}

PolyA PolyA::operator+(const PolyA& o) const {
    std::vector<Field::Code> r(std::max(c.size(), o.c.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F->add(coeff(i), o.coeff(i));
    normalize(r);
    return {F, std::move(r)};
}

PolyA PolyA::operator-(const PolyA& o) const { return *this + (-o); }

PolyA PolyA::operator-() const {
    PolyA r{F, c};
    for (auto& x : r.c) x = F->neg(x);
    return r;
}

PolyA PolyA::operator*(const PolyA& o) const {
    if (is_zero() || o.is_zero()) return zero(F);
    std::vector<Field::Code> r(c.size() + o.c.size() - 1, 0);
    for (size_t i = 0; i < c.size(); ++i) {
        if (!c[i]) continue;
        for (size_t j = 0; j < o.c.size(); ++j)
            r[i + j] = F->add(r[i + j], F->mul(c[i], o.c[j]));
    }
    normalize(r);
    return {F, std::move(r)};
}

PolyA PolyA::scaled(Field::Code s) const {
    if (!s) return zero(F);
    PolyA r{F, c};
    for (auto& x : r.c) x = F->mul(x, s);
    return r;
}

PolyA PolyA::pow(uint64_t k) const {
    PolyA r = one(F), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

PolyA PolyA::pow_q(uint32_t times) const {
    uint64_t qt = 1;
    for (uint32_t i = 0; i < times; ++i) qt *= F->q();
    if (is_zero() || qt == 1) return *this;
    std::vector<Field::Code> r((c.size() - 1) * qt + 1, 0);
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i]) r[i * qt] = F->pow(c[i], int64_t(qt));
    return {F, std::move(r)};
}

Field::Code PolyA::eval(Field::Code x) const {
    Field::Code acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = F->add(F->mul(acc, x), c[i]);
    return acc;
}

std::pair<PolyA, PolyA> PolyA::divmod(const PolyA& o) const {
    if (o.is_zero()) throw UsageError("PolyA: division by zero");
    PolyA rem = *this;
    std::vector<Field::Code> quo;
    if (degree() >= o.degree()) quo.assign(size_t(degree() - o.degree()) + 1, 0);
    Field::Code lead_inv = F->inv(o.leading());
    while (!rem.is_zero() && rem.degree() >= o.degree()) {
        size_t shift = size_t(rem.degree() - o.degree());
        Field::Code f = F->mul(rem.leading(), lead_inv);
        quo[shift] = f;
        for (size_t j = 0; j < o.c.size(); ++j)
            rem.c[shift + j] = F->sub(rem.c[shift + j], F->mul(f, o.c[j]));
        normalize(rem.c);
    }
    normalize(quo);
    return {PolyA{F, std::move(quo)}, std::move(rem)};
}

std::string PolyA::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c.size(); i-- > 0;) {
        if (!c[i]) continue;
        if (!first) os << "+";
        first = false;
        std::string cs = F->to_string(c[i]);
        bool unit = (c[i] == 1);
        if (i == 0) {
            os << (cs.find('+') != std::string::npos ? "(" + cs + ")" : cs);
        } else {
            if (!unit) os << (cs.find('+') != std::string::npos ? "(" + cs + ")" : cs) << "*";
            os << "theta";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

PolyA poly_gcd(PolyA a, PolyA b) {
    while (!b.is_zero()) {
        PolyA r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero() && !a.is_monic()) a = a.scaled(a.F->inv(a.leading()));
    return a;
}

FracA FracA::of(PolyA n, PolyA d) {
    if (d.is_zero()) throw UsageError("FracA: zero denominator");
    if (n.is_zero()) return zero(n.F);
    PolyA g = poly_gcd(n, d);
    if (g.degree() > 0) {
        n = n.divmod(g).first;
        d = d.divmod(g).first;
    }
    if (!d.is_monic()) {
        Field::Code s = n.F->inv(d.leading());
        n = n.scaled(s);
        d = d.scaled(s);
    }
    return {std::move(n), std::move(d)};
}

FracA FracA::from_poly(PolyA n) {
    FieldPtr F = n.F;
    return {std::move(n), PolyA::one(F)};
}

FracA FracA::operator+(const FracA& o) const {
    return of(num * o.den + o.num * den, den * o.den);
}

FracA FracA::operator-(const FracA& o) const {
    return of(num * o.den - o.num * den, den * o.den);
}

FracA FracA::operator*(const FracA& o) const { return of(num * o.num, den * o.den); }

FracA FracA::inv() const {
    if (is_zero()) throw UsageError("FracA: inverse of zero");
    return of(den, num);
}

std::string FracA::to_string() const {
    if (den.degree() == 0) return num.to_string();
    return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

std::vector<PolyA> monic_enumerate(const FieldPtr& F, uint32_t d, uint64_t budget) {
    uint64_t count = 1;
    for (uint32_t i = 0; i < d; ++i) {
        if (count > budget / F->q())
            throw BudgetError("monic_enumerate: q^d exceeds the term budget");
        count *= F->q();
    }
    const auto& sub = F->subfield();
    std::vector<PolyA> out;
    out.reserve(count);
    for (uint64_t k = 0; k < count; ++k) {
        std::vector<Field::Code> cs(d + 1, 0);
        uint64_t v = k;
        for (uint32_t i = 0; i < d; ++i) {
            cs[i] = sub[v % F->q()];
            v /= F->q();
        }
        cs[d] = 1;
        out.push_back(PolyA{F, std::move(cs)});
    }
    return out;
}

PolyA carlitz_D(const FieldPtr& F, uint32_t i) {
    PolyA D = PolyA::one(F);
    uint64_t qpow = 1;  // q^j during iteration
    for (uint32_t j = 1; j <= i; ++j) {
        qpow *= F->q();
        // theta^{q^j} - theta
        std::vector<Field::Code> cs(qpow + 1, 0);
        cs[1] = F->neg(1);
        cs[qpow] = 1;
        D = PolyA{F, std::move(cs)} * D.pow_q();
    }
    return D;
}

PolyA carlitz_ell(const FieldPtr& F, uint32_t d) {
    PolyA L = PolyA::one(F);
    uint64_t qpow = 1;
    for (uint32_t j = 1; j <= d; ++j) {
        qpow *= F->q();
        std::vector<Field::Code> cs(qpow + 1, 0);
        cs[1] = 1;
        cs[qpow] = F->neg(1);
        L = L * PolyA{F, std::move(cs)};
    }
    return L;
}

PolyA carlitz_gamma(const FieldPtr& F, uint64_t n_plus_1) {
    if (n_plus_1 == 0) throw UsageError("carlitz_gamma: weight must be >= 1");
    uint64_t n = n_plus_1 - 1;
    PolyA G = PolyA::one(F);
    uint32_t i = 0;
    while (n) {
        uint64_t digit = n % F->q();
        if (digit) G = G * carlitz_D(F, i).pow(digit);
        n /= F->q();
        ++i;
    }
    return G;
}

}  // namespace amzv
