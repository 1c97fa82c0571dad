#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amzv/field.hpp"

namespace amzv {

/// Dense polynomial in theta with coefficients in the ambient finite field.
/// Elements of the base ring A = F_q[theta] have all coefficients in the
/// subfield; nothing enforces that, since scaled variants (gamma * a, ...)
/// live in the same type.  Coefficients are stored low-to-high with no
/// trailing zeros, so degree() == c.size() - 1 and zero has empty storage.
struct PolyA {
    FieldPtr F;
    std::vector<Field::Code> c;

    static PolyA zero(FieldPtr F) { return {std::move(F), {}}; }
    static PolyA one(FieldPtr F) { return {std::move(F), {1}}; }
    static PolyA theta(FieldPtr F) { return {std::move(F), {0, 1}}; }
    static PolyA constant(FieldPtr F, Field::Code a);
    static PolyA from_coeffs(FieldPtr F, std::vector<Field::Code> cs);

    bool is_zero() const { return c.empty(); }
    int64_t degree() const { return int64_t(c.size()) - 1; }  // -1 for zero
    Field::Code leading() const { return c.empty() ? 0 : c.back(); }
    Field::Code coeff(size_t i) const { return i < c.size() ? c[i] : 0; }
    bool is_monic() const { return leading() == 1; }

    PolyA operator+(const PolyA& o) const;
    PolyA operator-(const PolyA& o) const;
    PolyA operator*(const PolyA& o) const;
    PolyA operator-() const;
    bool operator==(const PolyA& o) const { return c == o.c; }

    PolyA scaled(Field::Code s) const;
    PolyA pow(uint64_t k) const;
    /// q-th power: coefficients to the q, exponents times q (valid because q
    /// is a power of the characteristic).
    PolyA pow_q(uint32_t times = 1) const;
    Field::Code eval(Field::Code x) const;

    /// Quotient and remainder; UsageError when o is zero.
    std::pair<PolyA, PolyA> divmod(const PolyA& o) const;
    std::string to_string() const;  // e.g. "theta^3+2*theta"
};

/// Monic gcd of a and b (zero when both are zero).
PolyA poly_gcd(PolyA a, PolyA b);

/// Reduced fraction over A: denominator monic, gcd(num, den) = 1,
/// zero represented as 0/1.
struct FracA {
    PolyA num, den;

    static FracA of(PolyA n, PolyA d);  // reduces; UsageError when d = 0
    static FracA from_poly(PolyA n);
    static FracA zero(const FieldPtr& F) { return {PolyA::zero(F), PolyA::one(F)}; }

    bool is_zero() const { return num.is_zero(); }
    FracA operator+(const FracA& o) const;
    FracA operator-(const FracA& o) const;
    FracA operator*(const FracA& o) const;
    FracA inv() const;
    bool operator==(const FracA& o) const { return num == o.num && den == o.den; }
    std::string to_string() const;
};

/// All monic polynomials of degree d, ordered by their coefficient vectors
/// (constant term varying fastest, coefficient values ordered as the
/// subfield's ascending element codes).  Throws BudgetError when q^d exceeds
/// the term budget.
std::vector<PolyA> monic_enumerate(const FieldPtr& F, uint32_t d, uint64_t budget);

/// Carlitz factorial building blocks: D_0 = 1,
/// D_i = (theta^{q^i} - theta) * D_{i-1}^q, monic of degree i*q^i.
PolyA carlitz_D(const FieldPtr& F, uint32_t i);

/// ell_d = prod_{i=1..d} (theta - theta^{q^i}); ell_0 = 1.
PolyA carlitz_ell(const FieldPtr& F, uint32_t d);

/// Carlitz gamma factor for weight s = n_plus_1: with n = n_plus_1 - 1
/// written in base q as sum n_i q^i, returns prod D_i^{n_i}.
PolyA carlitz_gamma(const FieldPtr& F, uint64_t n_plus_1);

}  // namespace amzv
