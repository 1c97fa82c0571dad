#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "amzv/ring_a.hpp"

namespace amzv {

/// Reduced rational number with positive denominator.
struct Rat {
    int64_t num = 0;
    int64_t den = 1;
    static Rat of(int64_t n, int64_t d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        return {n, d};
    }
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
};

/// Truncated Laurent series in the uniformizer u at the infinite place,
/// u^{q-1} = 1/theta.  A value is a digit window [lo, prec): digits dg hold
/// the coefficients of u^lo .. u^{prec-1}, coefficients above the window are
/// unknown (not zero!), and coefficients below it are exactly zero.
///
/// Invariant: dg.front() != 0 unless dg is empty; the empty case encodes
/// "zero to precision prec" with lo == prec.  Absolute value of a nonzero
/// series is q^{-val/(q-1)}, so theta has degree -val/(q-1) in the usual
/// grading (theta itself maps to u^{-(q-1)}).
class USeries {
  public:
    USeries() = default;

    static USeries zero(FieldPtr F, int64_t prec);
    static USeries one(FieldPtr F, int64_t prec);
    /// a * u^k, window [k, prec).
    static USeries monomial(FieldPtr F, Field::Code a, int64_t k, int64_t prec);
    /// Image of a theta-polynomial: theta^i contributes at u-exponent -(q-1)i.
    static USeries from_poly(const PolyA& f, int64_t prec);

    const FieldPtr& field() const { return F_; }
    bool is_zero() const { return dg_.empty(); }
    int64_t prec() const { return lo_ + int64_t(dg_.size()); }
    /// Exact valuation; PrecisionError when the series is zero to precision.
    int64_t valuation() const;
    /// Lower bound for the valuation that is always available: the exact
    /// valuation when nonzero, the precision when zero-to-precision.
    int64_t val_floor() const { return dg_.empty() ? lo_ : lo_; }
    /// Coefficient of u^k: exact zero below the window, stored digit inside
    /// it; asking at or above prec throws PrecisionError.
    Field::Code digit(int64_t k) const;
    const std::vector<Field::Code>& digits() const { return dg_; }
    int64_t lo() const { return lo_; }
    /// -val/(q-1) as a reduced rational.
    Rat theta_degree() const;

    USeries operator+(const USeries& o) const;
    USeries operator-(const USeries& o) const;
    USeries operator-() const;
    USeries operator*(const USeries& o) const;
    USeries scaled(Field::Code s) const;
    USeries shifted(int64_t k) const;  ///< times u^k (exact)
    USeries inverse() const;           ///< PrecisionError on zero-to-precision
    USeries pow(int64_t n) const;
    /// n-fold q-power Frobenius twist: digit a at u^i moves to a^{q^d} at
    /// u^{i*q^d}; precision scales the same way and is then clamped to
    /// prec_cap.
    USeries twist(uint32_t d, int64_t prec_cap) const;
    /// Same window shrunk to [lo, new_prec); new_prec above prec throws.
    USeries truncated(int64_t new_prec) const;

    /// Schoolbook convolution through field tables, kept as the oracle the
    /// kernel-backed operator* is tested against.
    static USeries mul_naive(const USeries& a, const USeries& b);

    std::string to_string(size_t max_terms = 12) const;

    bool operator==(const USeries& o) const {
        return lo_ == o.lo_ && dg_ == o.dg_;  // same window contents & prec
    }

  private:
    FieldPtr F_;
    int64_t lo_ = 0;
    std::vector<Field::Code> dg_;

    USeries(FieldPtr F, int64_t lo, std::vector<Field::Code> dg);
    void strip_leading_zeros();
    static void check_same_field(const USeries& a, const USeries& b);
};

/// Number of significant digits to which a and b agree: valuation of (a-b)
/// minus the smaller valuation floor of the two, using the common precision
/// when the difference vanishes throughout it.
int64_t agreement_digits(const USeries& a, const USeries& b);

/// val_floor of a - b: the exact valuation of the difference, or the common
/// precision when the difference is zero to precision.
int64_t residual_valuation(const USeries& a, const USeries& b);

/// True when a and b carry identical digits over their whole common window.
bool agree_on_common_window(const USeries& a, const USeries& b);

}  // namespace amzv
