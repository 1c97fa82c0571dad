#include <doctest.h>

#include <set>

#include "amzv/errors.hpp"
#include "amzv/field.hpp"
#include "amzv/index.hpp"
#include "amzv/relations.hpp"

using namespace amzv;

TEST_CASE("index grammar: weights, residue characters, defaults") {
    Index a = parse_index("1,2;2,2", 3);
    CHECK((a.s == std::vector<uint32_t>{1, 2}));
    CHECK((a.eps == std::vector<uint32_t>{1, 1}));  // residue 2 = g^1 for g = 2
    CHECK(a.weight() == 3);
    CHECK(a.depth() == 2);

    Index b = parse_index("4", 3);  // characters default to trivial
    CHECK((b.eps == std::vector<uint32_t>{0}));

    Index c = parse_index("2,3;3,1", 5);
    CHECK((c.eps == std::vector<uint32_t>{3, 0}));  // 3 = 2^3 mod 5, 1 = 2^0

    CHECK_THROWS_AS((void)parse_index("0;1", 3), UsageError);
    CHECK_THROWS_AS((void)parse_index("1,2;1", 3), UsageError);
    CHECK_THROWS_AS((void)parse_index("1;3", 3), UsageError);  // 3 = 0 mod 3
    CHECK_THROWS_AS((void)parse_index("1;g^2", 3), UsageError);  // prime q: residues
}

TEST_CASE("character exponents invert powers of the least primitive root") {
    // q = 5, least primitive root 2: 2^0=1, 2^1=2, 2^2=4, 2^3=3
    CHECK(eps_exponent_from_residue(1, 5) == 0);
    CHECK(eps_exponent_from_residue(2, 5) == 1);
    CHECK(eps_exponent_from_residue(4, 5) == 2);
    CHECK(eps_exponent_from_residue(3, 5) == 3);
    CHECK(eps_exponent_from_residue(2, 3) == 1);
    CHECK_THROWS_AS((void)eps_exponent_from_residue(0, 3), UsageError);
}

TEST_CASE("head, tail and cons decompose an index") {
    Index a{{3, 1, 2}, {1, 0, 1}};
    CHECK((a.head() == Index{{3}, {1}}));
    CHECK((a.tail() == Index{{1, 2}, {0, 1}}));
    CHECK(Index::cons(3, 1, a.tail()) == a);
    CHECK(a.eps_product(3) == 0);  // (1+0+1) mod 2
    CHECK((Index{{2, 1}, {1, 1}}.eps_product(3) == 0));
    CHECK((Index{{2, 1}, {1, 0}}.eps_product(3) == 1));
}

TEST_CASE("index order is strict and total on a sample") {
    std::vector<Index> v{{{1}, {0}}, {{1}, {1}}, {{2}, {0}}, {{1, 1}, {0, 0}},
                         {{1, 2}, {0, 0}}, {{1, 1}, {0, 1}}};
    IndexLess lt;
    for (const auto& x : v)
        for (const auto& y : v) {
            const bool xy = lt(x, y), yx = lt(y, x);
            CHECK(!(xy && yx));
            if (!(x == y)) CHECK((xy || yx));
            if (x == y) CHECK((!xy && !yx));
        }
    // depth sorts first
    CHECK(lt(Index{{9}, {0}}, Index{{1, 1}, {0, 0}}));
}

TEST_CASE("linear combinations accumulate and cancel mod p") {
    const uint32_t p = 3;
    LinComb c;
    Index i1{{2}, {1}};
    c.add_term(i1, 2, p);
    c.add_term(i1, 2, p);  // 4 = 1 mod 3
    CHECK(c.coeff_of(i1) == 1);
    c.add_term(i1, 2, p);  // 1 + 2 = 0: the term disappears
    CHECK(c.coeff_of(i1) == 0);
    CHECK(c.size() == 0);

    LinComb d;
    d.add_term(i1, 1, p);
    d.add_term(Index{{1, 1}, {0, 0}}, 2, p);
    LinComb e;
    e.add_scaled(d, 2, p);
    CHECK(e.coeff_of(i1) == 2);
    CHECK(e.coeff_of(Index{{1, 1}, {0, 0}}) == 1);
}

TEST_CASE("character embedding lands on the subfield generator") {
    FieldPtr F = make_field(3, 1, 2);
    CHECK(eps_embed(*F, 0) == 1);
    CHECK(eps_embed(*F, 1) == F->subfield_generator());
    CHECK(F->in_subfield(eps_embed(*F, 1)));
    FieldPtr F5 = make_field(5, 1, 1);
    // exponent k embeds as 2^k mod 5 (subfield generator = least primitive root)
    CHECK(eps_embed(*F5, 1) == 2);
    CHECK(eps_embed(*F5, 2) == 4);
    CHECK(eps_embed(*F5, 3) == 3);
}

TEST_CASE("index enumeration counts compositions times character tuples") {
    auto v = enumerate_indices(3, 2, 3);
    // compositions: (3), (1,2), (2,1); characters: 2 resp. 4 each
    CHECK(v.size() == 1 * 2 + 2 * 4);
    std::set<std::vector<uint32_t>> comps;
    for (const Index& idx : v) {
        CHECK(idx.weight() == 3);
        CHECK(idx.depth() <= 2);
        comps.insert(idx.s);
    }
    CHECK(comps.size() == 3);
    // weight 4, depth up to 4, q = 3: 1*2 + 3*4 + 3*8 + 1*16 indices
    CHECK(enumerate_indices(4, 4, 3).size() == 54);
    // no duplicates
    std::set<std::pair<std::vector<uint32_t>, std::vector<uint32_t>>> seen;
    for (const Index& idx : enumerate_indices(4, 4, 3)) seen.insert({idx.s, idx.eps});
    CHECK(seen.size() == 54);
}
