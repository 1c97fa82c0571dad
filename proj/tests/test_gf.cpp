#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "amzv/errors.hpp"
#include "amzv/field.hpp"

using namespace amzv;

TEST_CASE("prime field arithmetic matches integers mod p") {
    for (uint32_t p : {2u, 3u, 5u, 7u, 13u}) {
        FieldPtr F = make_field(p, 1, 1);
        for (uint32_t a = 0; a < p; ++a)
            for (uint32_t b = 0; b < p; ++b) {
                CHECK(F->add(a, b) == (a + b) % p);
                CHECK(F->mul(a, b) == (a * b) % p);
                CHECK(F->sub(a, b) == (a + p - b) % p);
            }
        for (uint32_t a = 1; a < p; ++a) CHECK(F->mul(a, F->inv(a)) == 1);
    }
}

TEST_CASE("extension field satisfies the ring axioms on random samples") {
    FieldPtr F = make_field(3, 1, 3);  // F_27
    std::mt19937 rng(7);
    const uint64_t N = F->N();
    for (int trial = 0; trial < 300; ++trial) {
        Field::Code a = rng() % N, b = rng() % N, c = rng() % N;
        CHECK(F->add(a, b) == F->add(b, a));
        CHECK(F->mul(a, b) == F->mul(b, a));
        CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
        CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
        CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
        CHECK(F->add(a, F->neg(a)) == 0);
        if (a != 0) CHECK(F->mul(a, F->inv(a)) == 1);
    }
}

TEST_CASE("Frobenius is additive and fixes exactly the subfield") {
    FieldPtr F = make_field(3, 1, 2);  // F_9 over F_3
    const uint64_t N = F->N();
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Field::Code a = rng() % N, b = rng() % N;
        CHECK(F->frobenius(F->add(a, b), 1) ==
              F->add(F->frobenius(a, 1), F->frobenius(b, 1)));
        CHECK(F->frobenius(a, 1) == F->mul(F->mul(a, a), a));  // a^3
    }
    size_t fixed = 0;
    for (uint64_t a = 0; a < N; ++a) {
        bool is_fixed = F->frobenius(Field::Code(a), 1) == a;
        CHECK(is_fixed == F->in_subfield(Field::Code(a)));
        if (is_fixed) ++fixed;
    }
    CHECK(fixed == F->q());
    CHECK(F->subfield().size() == F->q());
}

TEST_CASE("generator has full multiplicative order") {
    for (auto [p, e, M] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>{
             {2, 1, 3}, {3, 1, 2}, {5, 1, 2}}) {
        FieldPtr F = make_field(p, e, M);
        std::set<Field::Code> seen;
        Field::Code x = 1;
        for (uint64_t k = 0; k + 1 < F->N(); ++k) {
            seen.insert(x);
            x = F->mul(x, F->generator());
        }
        CHECK(x == 1);
        CHECK(seen.size() == F->N() - 1);
    }
}

TEST_CASE("pow agrees with repeated multiplication, including negatives") {
    FieldPtr F = make_field(5, 1, 2);
    std::mt19937 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        Field::Code a = 1 + rng() % (F->N() - 1);
        Field::Code acc = 1;
        for (int64_t k = 0; k <= 9; ++k) {
            CHECK(F->pow(a, k) == acc);
            CHECK(F->mul(F->pow(a, -k), acc) == 1);
            acc = F->mul(acc, a);
        }
    }
    CHECK(F->pow(0, 0) == 1);
    CHECK_THROWS_AS((void)F->pow(0, -1), UsageError);
    CHECK_THROWS_AS((void)F->inv(0), UsageError);
}

TEST_CASE("distinguished roots satisfy their defining equations") {
    FieldPtr F = make_field(3, 1, 2);
    const uint32_t q = F->q();
    CHECK(F->pow(F->eta(), q - 1) == F->neg(1));
    CHECK(F->pow(F->subfield_generator(), q - 1) == 1);
    // subfield generator really generates F_q^x
    std::set<Field::Code> orbit;
    for (uint32_t k = 0; k + 1 < q; ++k) orbit.insert(F->subfield_exp(k));
    CHECK(orbit.size() == q - 1);
    for (Field::Code s : orbit) CHECK(F->in_subfield(s));
    for (uint32_t k = 0; k + 1 < q; ++k) {
        Field::Code eps = F->subfield_exp(k);
        Field::Code g = F->unit_root_gamma(eps);
        CHECK(F->pow(g, q - 1) == eps);
    }
    CHECK_THROWS_AS((void)F->unit_root_gamma(0), UsageError);
}

TEST_CASE("gamma roots exist in the towers choose_M selects") {
    for (uint32_t q : {3u, 5u, 7u}) {
        std::vector<uint32_t> exps;
        for (uint32_t k = 0; k + 1 < q; ++k) exps.push_back(k);
        uint32_t M = Field::choose_M(q, 1, exps);
        FieldPtr F = make_field(q, 1, M);
        for (uint32_t k = 0; k + 1 < q; ++k) {
            Field::Code eps = F->subfield_exp(k);
            CHECK(F->pow(F->unit_root_gamma(eps), q - 1) == eps);
        }
    }
    CHECK(Field::choose_M(3, 1, {0, 1}) == 2);
    CHECK(Field::choose_M(5, 1, {0, 1, 2, 3}) == 4);
    CHECK(Field::choose_M(5, 1, {0, 2}) == 2);
    CHECK(Field::choose_M(2, 1, {0}) == 1);  // no -1 constraint in char 2
}

TEST_CASE("lucas_binom matches Pascal's triangle mod p") {
    for (uint32_t p : {2u, 3u, 5u, 7u}) {
        const int n_max = 40;
        std::vector<std::vector<uint32_t>> pas(n_max + 1);
        for (int n = 0; n <= n_max; ++n) {
            pas[n].assign(size_t(n) + 1, 1);
            for (int k = 1; k < n; ++k)
                pas[n][size_t(k)] = (pas[n - 1][size_t(k - 1)] + pas[n - 1][size_t(k)]) % p;
        }
        for (int n = 0; n <= n_max; ++n)
            for (int k = 0; k <= n; ++k)
                CHECK(Field::lucas_binom(uint64_t(n), uint64_t(k), p) ==
                      pas[n][size_t(k)]);
        CHECK(Field::lucas_binom(5, 9, p) == 0);
    }
}

TEST_CASE("least primitive roots of small primes") {
    CHECK(Field::least_primitive_root(3) == 2);
    CHECK(Field::least_primitive_root(5) == 2);
    CHECK(Field::least_primitive_root(7) == 3);
    CHECK(Field::least_primitive_root(11) == 2);
    CHECK(Field::least_primitive_root(13) == 2);
}

TEST_CASE("oversized towers are rejected with a budget error") {
    CHECK_THROWS_AS((void)make_field(2, 1, 21), BudgetError);  // 2^21 > kMaxN
    CHECK_THROWS_AS((void)make_field(4, 1, 1), UsageError);    // 4 is not prime
    CHECK_THROWS_AS((void)make_field(3, 0, 1), UsageError);
}
