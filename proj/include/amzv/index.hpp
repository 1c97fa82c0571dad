#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "amzv/field.hpp"

namespace amzv {

/// Composite index of an alternating multizeta value: a tuple s of positive
/// weights with a parallel tuple of sign characters in F_q^x.  Characters
/// are stored abstractly as exponents modulo q-1 with respect to the
/// canonical generator of F_q^x — the least primitive root mod p when q is
/// prime (tokens are residues), the distinguished subfield generator g
/// otherwise (tokens are g^k) — so indices are independent of the concrete
/// field tower a computation later chooses.
struct Index {
    std::vector<uint32_t> s;
    std::vector<uint32_t> eps;  // exponents, eps.size() == s.size()

    uint32_t depth() const { return uint32_t(s.size()); }
    uint64_t weight() const;
    /// Exponent of the product of all characters: sum mod (q-1).
    uint32_t eps_product(uint32_t q) const;
    /// Prefix of length 1 / suffix after the first entry.
    Index head() const { return {{s.at(0)}, {eps.at(0)}}; }
    Index tail() const {
        return {{s.begin() + 1, s.end()}, {eps.begin() + 1, eps.end()}};
    }
    bool empty() const { return s.empty(); }
    static Index cons(uint32_t s1, uint32_t e1, const Index& rest);
    bool operator==(const Index& o) const { return s == o.s && eps == o.eps; }
};

/// Canonical order: by depth, then lexicographically on s, then on eps.
struct IndexLess {
    bool operator()(const Index& a, const Index& b) const;
};

/// Parses "s1,...,sr ; e1,...,er".  Weights are positive integers.  Each
/// character token is "1", a nonzero residue mod p (prime q only), or "g^k"
/// / "g" (prime powers).  Omitting ";..." makes all characters trivial.
Index parse_index(const std::string& text, uint32_t q);
std::string index_to_string(const Index& idx, uint32_t q);

/// Character exponent of a residue r^k = value (mod p) for prime q = p,
/// where r is the least primitive root.  UsageError when value is 0 mod p.
uint32_t eps_exponent_from_residue(uint32_t value, uint32_t q);

/// Concrete subfield element of exponent k in a field instance.
Field::Code eps_embed(const Field& F, uint32_t k);

/// Formal linear combination of indices with coefficients in F_p^x.  The
/// level records which family of sums the indices stand for: full zeta
/// values, single-degree layer sums S_d, or strict partial sums S_{<d}.
enum class Level { Zeta, Sd, Sless };

struct LinComb {
    Level level = Level::Zeta;
    std::map<Index, uint32_t, IndexLess> terms;

    /// Accumulates coeff (mod p) onto idx, erasing terms that cancel.
    void add_term(const Index& idx, uint64_t coeff, uint32_t p);
    /// Adds every term of other, scaled by coeff (mod p).
    void add_scaled(const LinComb& other, uint64_t coeff, uint32_t p);
    size_t size() const { return terms.size(); }
    uint32_t coeff_of(const Index& idx) const;
    std::string to_string(uint32_t q) const;
};

}  // namespace amzv
