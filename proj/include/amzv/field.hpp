#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "amzv/errors.hpp"

namespace amzv {

/// Table-driven finite field F_{p^n} with n = e*M, together with its
/// distinguished subfield F_q, q = p^e.
///
/// Elements are stored as integer codes in [0, p^n): the code of
/// sum(c_i * x^i) is sum(c_i * p^i), where x is the residue of the modulus
/// variable.  The modulus is the lexicographically least monic irreducible
/// polynomial of degree n over F_p, "least" meaning smallest integer code
/// (constant term in the lowest digit), so the construction is fully
/// deterministic.  The multiplicative generator is the element of smallest
/// code with order p^n - 1; exp/log tables against it drive mul/inv/pow.
///
/// All methods are const after construction, so one Field may be shared
/// freely across threads.
class Field {
  public:
    using Code = uint32_t;

    /// Largest table-backed field size.  Beyond it construction throws
    /// BudgetError: callers should lower q or the orders of the roots of
    /// unity they need.
    static constexpr uint64_t kMaxN = 1u << 20;

    /// Builds F_{p^(e*M)} with its subfield F_{p^e}.  Throws UsageError when
    /// p is not prime or e*M < 1, BudgetError when p^(e*M) exceeds kMaxN.
    Field(uint32_t p, uint32_t e, uint32_t M);

    uint32_t p() const { return p_; }
    uint32_t e() const { return e_; }
    uint32_t M() const { return M_; }
    uint32_t n() const { return n_; }          ///< extension degree over F_p
    uint32_t q() const { return q_; }          ///< subfield size p^e
    uint64_t N() const { return N_; }          ///< field size p^n
    Code generator() const { return gen_; }
    /// Integer code of the modulus polynomial (degree-n coefficient
    /// included), mostly for metadata output.
    uint64_t modulus_code() const { return modulus_code_; }

    // ---- arithmetic ------------------------------------------------------
    Code add(Code a, Code b) const {
        return add_table_.empty() ? add_slow(a, b) : add_table_[a * N_ + b];
    }
    Code neg(Code a) const { return neg_[a]; }
    Code sub(Code a, Code b) const { return add(a, neg_[b]); }
    Code mul(Code a, Code b) const {
        if (a == 0 || b == 0) return 0;
        uint64_t s = uint64_t(log_[a]) + uint64_t(log_[b]);
        if (s >= N_ - 1) s -= N_ - 1;
        return exp_[s];
    }
    /// Multiplicative inverse; UsageError on zero.
    Code inv(Code a) const;
    /// a^k for signed k, with 0^0 = 1 and UsageError on 0^negative.
    Code pow(Code a, int64_t k) const;
    /// Frobenius power a^(p^m) for m >= 0 (reduced through the exp table,
    /// so large m costs the same as small m).
    Code frobenius(Code a, uint64_t m) const;

    /// Embeds the integer c (mod p) as a constant.
    Code from_int(uint64_t c) const { return Code(c % p_); }
    /// Discrete log with respect to generator(); UsageError on zero.
    uint64_t log(Code a) const;
    /// generator() raised to k (k mod N-1).
    Code exp(uint64_t k) const { return exp_[k % (N_ - 1)]; }

    // ---- subfield F_q ----------------------------------------------------
    /// The q elements fixed by x -> x^q, ascending by code.
    const std::vector<Code>& subfield() const { return subfield_; }
    bool in_subfield(Code a) const { return in_subfield_[a]; }
    /// Canonical generator of F_q^x: generator()^((N-1)/(q-1)); 1 when q = 2.
    Code subfield_generator() const { return subfield_gen_; }
    /// subfield_generator()^k.
    Code subfield_exp(uint64_t k) const;

    // ---- distinguished roots of unity -------------------------------------
    /// Least-exponent solution gamma = generator()^k of gamma^(q-1) = eps.
    /// UsageError when eps = 0 or no solution exists in this field (the
    /// tower degree M must be a multiple of ord(eps)).
    Code unit_root_gamma(Code eps) const;
    /// Solution of eta^(q-1) = -1 chosen by the same least-exponent rule;
    /// equals 1 in characteristic 2.  Throws UsageError in towers that lack
    /// one (odd M in odd characteristic).
    Code eta() const;

    /// Human-readable polynomial form of a code, e.g. "2x+1".
    std::string to_string(Code a) const;

    // ---- static helpers ----------------------------------------------------
    /// Binomial coefficient C(n, k) mod p via base-p digit factorisation
    /// (Lucas).  p must be prime.
    static uint32_t lucas_binom(uint64_t n, uint64_t k, uint32_t p);
    /// Smallest primitive root modulo the prime p (p >= 3).
    static uint32_t least_primitive_root(uint32_t p);
    static bool is_prime(uint64_t v);

    /// Least tower degree M such that F_{q^M} contains all (q-1)-th roots
    /// needed for the sign characters with the given exponents (exponents are
    /// taken mod q-1 with respect to the canonical generator of F_q^x) and,
    /// in odd characteristic, a square root of -1's character, i.e.
    /// lcm(2, ord(eps_i)).  In characteristic 2 the -1 constraint drops out.
    static uint32_t choose_M(uint32_t p, uint32_t e,
                             const std::vector<uint32_t>& eps_exponents);

  private:
    uint32_t p_, e_, M_, n_, q_;
    uint64_t N_;
    uint64_t modulus_code_;
    Code gen_;
    Code subfield_gen_;
    Code eta_;

    std::vector<Code> exp_;        // size N-1: exp_[k] = gen^k
    std::vector<uint32_t> log_;    // size N:   log_[exp_[k]] = k
    std::vector<Code> neg_;        // size N:   additive inverse
    std::vector<Code> add_table_;  // size N*N when N <= 1024, else empty
    std::vector<Code> subfield_;   // ascending codes
    std::vector<uint8_t> in_subfield_;

    Code add_slow(Code a, Code b) const;
    /// Least k >= 0 with k*(q-1) = target (mod N-1); UsageError if none.
    uint64_t solve_exponent(uint64_t target, const char* what) const;
};

/// Shared-ownership handle used by values that must outlive local Field
/// variables (series keep a pointer to their field).
using FieldPtr = std::shared_ptr<const Field>;

/// Builds a field and wraps it in a shared pointer.
FieldPtr make_field(uint32_t p, uint32_t e, uint32_t M);

}  // namespace amzv
