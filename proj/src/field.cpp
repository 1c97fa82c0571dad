#include "amzv/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace amzv {
namespace {

// ---------------------------------------------------------------------------
// Bootstrap polynomial arithmetic over F_p.
//
// Construction needs multiplication in F_{p^n} before the exp/log tables
// exist (irreducibility of modulus candidates, order tests for the
// generator).  These helpers implement plain dense polynomial arithmetic on
// coefficient vectors; they are only used while building a Field.
// ---------------------------------------------------------------------------

using Poly = std::vector<uint32_t>;  // coefficients low-to-high

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a*b mod f, all over F_p; f monic.
Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint64_t> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] += uint64_t(a[i]) * b[j] % p;
    }
    for (auto& c : acc) c %= p;
    // reduce mod monic f
    size_t nf = f.size() - 1;  // degree of f
    for (size_t d = acc.size(); d-- > nf;) {
        uint64_t c = acc[d] % p;
        if (!c) continue;
        acc[d] = 0;
        for (size_t j = 0; j < nf; ++j) {
            uint64_t sub = c * f[j] % p;
            acc[d - nf + j] = (acc[d - nf + j] + p - sub) % p;
        }
    }
    Poly r(acc.begin(), acc.begin() + std::min(acc.size(), nf));
    for (auto& c : r) c = uint32_t(c % p);
    trim(r);
    return r;
}

Poly ppowmod(Poly base, uint64_t ex, const Poly& f, uint64_t p) {
    Poly r = {1};
    while (ex) {
        if (ex & 1) r = pmulmod(r, base, f, p);
        base = pmulmod(base, base, f, p);
        ex >>= 1;
    }
    return r;
}

Poly pgcd(Poly a, Poly b, uint64_t p) {
    auto inv_mod_p = [&](uint64_t v) {
        uint64_t r = 1, base = v % p, ex = p - 2;
        while (ex) {
            if (ex & 1) r = r * base % p;
            base = base * base % p;
            ex >>= 1;
        }
        return r;
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b with b scaled monic on the fly
        uint64_t lead_inv = inv_mod_p(b.back());
        while (a.size() >= b.size() && !a.empty()) {
            uint64_t c = a.back() * lead_inv % p;
            size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j)
                a[off + j] = uint32_t((a[off + j] + p - c * b[j] % p) % p);
            trim(a);
        }
        std::swap(a, b);
    }
    return a;
}

std::vector<uint64_t> prime_factors(uint64_t v) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= v; ++d) {
        if (v % d) continue;
        out.push_back(d);
        while (v % d == 0) v /= d;
    }
    if (v > 1) out.push_back(v);
    return out;
}

Poly poly_from_code(uint64_t code, uint64_t p) {
    Poly r;
    while (code) {
        r.push_back(uint32_t(code % p));
        code /= p;
    }
    return r;
}

// Rabin irreducibility test for monic f of degree n over F_p:
// x^(p^n) = x (mod f) and gcd(x^(p^(n/r)) - x, f) = 1 for each prime r | n.
bool is_irreducible(const Poly& f, uint64_t p) {
    size_t n = f.size() - 1;
    std::vector<Poly> xpow(n + 1);  // xpow[j] = x^(p^j) mod f
    xpow[0] = (n == 1) ? pmulmod({0, 1}, {1}, f, p) : Poly{0, 1};
    for (size_t j = 1; j <= n; ++j) xpow[j] = ppowmod(xpow[j - 1], p, f, p);
    Poly x = xpow[0];
    if (xpow[n] != x) return false;
    for (uint64_t r : prime_factors(n)) {
        Poly diff = xpow[n / r];
        diff.resize(std::max(diff.size(), x.size()), 0);
        for (size_t i = 0; i < x.size(); ++i) diff[i] = uint32_t((diff[i] + p - x[i]) % p);
        trim(diff);
        Poly g = pgcd(diff, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Field construction
// ---------------------------------------------------------------------------

Field::Field(uint32_t p, uint32_t e, uint32_t M) : p_(p), e_(e), M_(M) {
    if (!is_prime(p)) throw UsageError("field: p must be prime, got " + std::to_string(p));
    if (e < 1 || M < 1) throw UsageError("field: extension degrees must be >= 1");
    n_ = e * M;
    // N = p^n with budget check
    N_ = 1;
    for (uint32_t i = 0; i < n_; ++i) {
        if (N_ > kMaxN / p) throw BudgetError("field: p^(e*M) exceeds the table budget");
        N_ *= p;
    }
    if (N_ > kMaxN) throw BudgetError("field: p^(e*M) exceeds the table budget");
    uint64_t qv = 1;
    for (uint32_t i = 0; i < e; ++i) qv *= p;
    q_ = uint32_t(qv);

    // Modulus: smallest integer code of a monic irreducible of degree n.
    Poly f;
    modulus_code_ = 0;
    for (uint64_t k = 0; k < N_; ++k) {
        uint64_t code = N_ + k;  // leading coefficient 1 at degree n
        Poly cand = poly_from_code(code, p);
        if (is_irreducible(cand, p)) {
            f = cand;
            modulus_code_ = code;
            break;
        }
    }
    if (f.empty()) throw GuardError("field: no irreducible modulus found");

    // Generator: smallest code whose order is N-1.
    auto fac = prime_factors(N_ - 1);
    gen_ = 0;
    for (uint64_t c = 1; c < N_; ++c) {
        Poly pc = poly_from_code(c, p);
        bool ok = true;
        for (uint64_t r : fac) {
            Poly t = ppowmod(pc, (N_ - 1) / r, f, p);
            if (t == Poly{1}) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen_ = Code(c);
            break;
        }
    }
    if (!gen_) throw GuardError("field: no generator found");

    // exp/log tables.
    exp_.assign(N_ - 1, 0);
    log_.assign(N_, 0);
    Poly gp = poly_from_code(gen_, p);
    Poly cur = {1};
    for (uint64_t k = 0; k < N_ - 1; ++k) {
        uint64_t code = 0;
        for (size_t i = cur.size(); i-- > 0;) code = code * p + cur[i];
        exp_[k] = Code(code);
        log_[code] = uint32_t(k);
        cur = pmulmod(cur, gp, f, p);
    }
    if (cur != Poly{1}) throw GuardError("field: generator order mismatch");

    // Additive structure.
    neg_.assign(N_, 0);
    for (uint64_t a = 0; a < N_; ++a) {
        uint64_t code = 0, scale = 1, v = a;
        while (v) {
            code += ((p - v % p) % p) * scale;
            scale *= p;
            v /= p;
        }
        neg_[a] = Code(code);
    }
    if (N_ <= 1024) {
        add_table_.assign(N_ * N_, 0);
        for (uint64_t a = 0; a < N_; ++a)
            for (uint64_t b = 0; b < N_; ++b) add_table_[a * N_ + b] = add_slow(Code(a), Code(b));
    }

    // Subfield F_q = fixed points of x -> x^q.
    in_subfield_.assign(N_, 0);
    for (uint64_t c = 0; c < N_; ++c) {
        if (frobenius(Code(c), e_) == Code(c)) {
            in_subfield_[c] = 1;
            subfield_.push_back(Code(c));
        }
    }
    if (subfield_.size() != q_) throw GuardError("field: subfield scan found wrong size");
    subfield_gen_ = (q_ == 2) ? Code(1) : exp_[(N_ - 1) / (q_ - 1)];
    if (p_ == 2) {
        eta_ = 1;
    } else {
        // eta exists only when 2(q-1) divides N-1, i.e. in even towers; odd
        // towers simply leave it unset (code 0, never a unit) and eta()
        // reports the problem if someone asks.
        uint64_t target = (N_ - 1) / 2;
        eta_ = (target % std::gcd(uint64_t(q_) - 1, N_ - 1) == 0)
                   ? exp_[solve_exponent(target, "eta")]
                   : Code(0);
    }
}

Field::Code Field::eta() const {
    if (eta_ == 0 && p_ != 2)
        throw UsageError(
            "field: eta does not exist here; the tower degree M must be even");
    return eta_;
}

Field::Code Field::add_slow(Code a, Code b) const {
    uint64_t code = 0, scale = 1, x = a, y = b;
    while (x || y) {
        code += ((x % p_ + y % p_) % p_) * scale;
        scale *= p_;
        x /= p_;
        y /= p_;
    }
    return Code(code);
}

Field::Code Field::inv(Code a) const {
    if (a == 0) throw UsageError("field: inverse of zero");
    return exp_[(N_ - 1 - log_[a]) % (N_ - 1)];
}

Field::Code Field::pow(Code a, int64_t k) const {
    if (a == 0) {
        if (k > 0) return 0;
        if (k == 0) return 1;
        throw UsageError("field: negative power of zero");
    }
    int64_t m = int64_t(N_ - 1);
    int64_t r = ((k % m) + m) % m;
    return exp_[uint64_t(log_[a]) * uint64_t(r) % uint64_t(m)];
}

Field::Code Field::frobenius(Code a, uint64_t m) const {
    if (a == 0 || a == 1) return a;
    // p^m mod (N-1) by square-and-multiply
    uint64_t mod = N_ - 1, base = p_ % mod, ex = m, pm = 1;
    while (ex) {
        if (ex & 1) pm = pm * base % mod;
        base = base * base % mod;
        ex >>= 1;
    }
    return exp_[uint64_t(log_[a]) * pm % mod];
}

uint64_t Field::log(Code a) const {
    if (a == 0) throw UsageError("field: log of zero");
    return log_[a];
}

Field::Code Field::subfield_exp(uint64_t k) const {
    if (q_ == 2) return 1;
    return exp_[uint64_t(log_[subfield_gen_]) * (k % (q_ - 1)) % (N_ - 1)];
}

uint64_t Field::solve_exponent(uint64_t target, const char* what) const {
    // least k >= 0 with k*(q-1) = target (mod N-1)
    uint64_t a = q_ - 1, m = N_ - 1;
    uint64_t g = std::gcd(a, m);
    if (target % g)
        throw UsageError(std::string("field: ") + what +
                         " does not exist here; the tower degree M must be a multiple of the"
                         " character order");
    uint64_t a1 = a / g, m1 = m / g, t1 = (target / g) % m1;
    // inverse of a1 mod m1 by extended Euclid
    int64_t r0 = int64_t(m1), r1 = int64_t(a1), s0 = 0, s1 = 1;
    while (r1) {
        int64_t qq = r0 / r1;
        r0 -= qq * r1;
        std::swap(r0, r1);
        s0 -= qq * s1;
        std::swap(s0, s1);
    }
    if (m1 == 1) return 0;
    uint64_t ainv = uint64_t(((s0 % int64_t(m1)) + int64_t(m1)) % int64_t(m1));
    return t1 * ainv % m1;
}

Field::Code Field::unit_root_gamma(Code eps) const {
    if (eps == 0) throw UsageError("field: gamma of zero");
    if (!in_subfield_[eps]) throw UsageError("field: gamma argument must lie in F_q");
    if (eps == 1 && q_ == 2) return 1;
    return exp_[solve_exponent(log_[eps], "gamma")];
}

std::string Field::to_string(Code a) const {
    if (a == 0) return "0";
    std::vector<uint32_t> digits;
    uint64_t v = a;
    while (v) {
        digits.push_back(uint32_t(v % p_));
        v /= p_;
    }
    std::ostringstream os;
    bool first = true;
    for (size_t i = digits.size(); i-- > 0;) {
        if (!digits[i]) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << digits[i];
        } else {
            if (digits[i] != 1) os << digits[i];
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Static helpers
// ---------------------------------------------------------------------------

bool Field::is_prime(uint64_t v) {
    if (v < 2) return false;
    for (uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

uint32_t Field::lucas_binom(uint64_t n, uint64_t k, uint32_t p) {
    if (!is_prime(p)) throw UsageError("lucas_binom: p must be prime");
    if (k > n) return 0;
    uint64_t result = 1;
    while (n || k) {
        uint64_t ni = n % p, ki = k % p;
        if (ki > ni) return 0;
        // C(ni, ki) exactly (arguments < p <= small), then mod p
        uint64_t c = 1;
        for (uint64_t t = 1; t <= ki; ++t) c = c * (ni - t + 1) / t;
        result = result * (c % p) % p;
        n /= p;
        k /= p;
    }
    return uint32_t(result);
}

uint32_t Field::least_primitive_root(uint32_t p) {
    if (!is_prime(p)) throw UsageError("least_primitive_root: p must be prime");
    if (p == 2) return 1;
    auto fac = prime_factors(p - 1);
    auto powm = [&](uint64_t b, uint64_t ex) {
        uint64_t r = 1;
        b %= p;
        while (ex) {
            if (ex & 1) r = r * b % p;
            b = b * b % p;
            ex >>= 1;
        }
        return r;
    };
    for (uint32_t r = 2; r < p; ++r) {
        bool ok = true;
        for (uint64_t f : fac)
            if (powm(r, (p - 1) / f) == 1) {
                ok = false;
                break;
            }
        if (ok) return r;
    }
    throw GuardError("least_primitive_root: none found");
}

uint32_t Field::choose_M(uint32_t p, uint32_t e, const std::vector<uint32_t>& eps_exponents) {
    uint64_t qv = 1;
    for (uint32_t i = 0; i < e; ++i) qv *= p;
    uint32_t qm1 = uint32_t(qv) - 1;
    uint64_t L = 1;
    if (p != 2) L = 2;  // need a (q-1)-th root of -1
    if (qm1 > 0) {
        for (uint32_t k : eps_exponents) {
            uint32_t kk = k % qm1;
            uint32_t ord = qm1 / std::gcd(kk, qm1);  // gcd(0, m) = m, so exponent 0 -> order 1
            L = std::lcm(L, uint64_t(ord));
        }
    }
    return uint32_t(L);
}

FieldPtr make_field(uint32_t p, uint32_t e, uint32_t M) {
    return std::make_shared<const Field>(p, e, M);
}

}  // namespace amzv
