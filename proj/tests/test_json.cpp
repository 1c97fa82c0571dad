#include <doctest.h>

#include <json.hpp>

#include <random>

#include "amzv/errors.hpp"
#include "amzv/field.hpp"
#include "amzv/index.hpp"
#include "amzv/json_io.hpp"
#include "amzv/powersums.hpp"
#include "amzv/useries.hpp"

using namespace amzv;
using nlohmann::json;

TEST_CASE("field metadata serializes its defining data") {
    FieldPtr F = make_field(3, 1, 2);
    json j = json::parse(field_metadata_json(*F));
    CHECK(j["p"] == 3);
    CHECK(j["e"] == 1);
    CHECK(j["M"] == 2);
    CHECK(j["modulus"] == F->modulus_code());
    CHECK(j["generator"] == F->generator());
}

TEST_CASE("u-series round-trips through json") {
    FieldPtr F = make_field(3, 1, 2);
    std::mt19937 rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        int64_t lo = int64_t(rng() % 40) - 20;
        USeries x = USeries::zero(F, lo + 25);
        for (int64_t i = 0; i < 25; ++i) {
            Field::Code c = Field::Code(rng() % F->N());
            if (c) x = x + USeries::monomial(F, c, lo + i, lo + 25);
        }
        USeries back = useries_from_json(useries_to_json(x), F);
        CHECK(back == x);
    }
    // zero series keeps its precision and null valuation
    USeries z = USeries::zero(F, 17);
    json jz = json::parse(useries_to_json(z));
    CHECK(jz["valuation"].is_null());
    CHECK(jz["prec"] == 17);
    CHECK(useries_from_json(jz.dump(), F) == z);
}

TEST_CASE("u-series json validates the target field") {
    FieldPtr F3 = make_field(3, 1, 1), F5 = make_field(5, 1, 1);
    std::string text = useries_to_json(USeries::one(F3, 10));
    CHECK_THROWS_AS((void)useries_from_json(text, F5), UsageError);
    CHECK_THROWS_AS((void)useries_from_json("{\"var\":\"t\"}", F3), UsageError);
}

TEST_CASE("digit truncation caps the emitted window") {
    FieldPtr F = make_field(3, 1, 1);
    USeries x = USeries::from_poly(PolyA::theta(F) + PolyA::one(F), 60).inverse();
    json full = json::parse(useries_to_json(x));
    json capped = json::parse(useries_to_json(x, 5));
    CHECK(capped["digits"].size() == 5);
    CHECK(full["digits"].size() > 5);
    for (size_t i = 0; i < 5; ++i) CHECK(capped["digits"][i] == full["digits"][i]);
    CHECK(capped["valuation"] == full["valuation"]);
}

TEST_CASE("zeta values serialize with their index and tail bound") {
    FieldPtr F = make_field(3, 1, 2);
    PowerSumEngine eng(F, 120, uint64_t(1) << 22);
    ZetaValue z = eng.zeta(Index{{1, 2}, {1, 0}});
    json j = json::parse(zeta_value_to_json(z, 3));
    CHECK(j["index"]["s"] == json::array({1, 2}));
    CHECK(j["index"]["eps"] == json::array({1, 0}));
    CHECK(j["index"]["text"].is_string());
    CHECK(j["d_max_used"] == z.d_max_used);
    CHECK(j["tail_valuation_bound"] == z.tail_valuation_bound);
    CHECK(j["value"]["valuation"] == z.value.valuation());
}

TEST_CASE("linear combinations round-trip through json") {
    LinComb c;
    c.level = Level::Zeta;
    c.add_term(Index{{3, 2}, {1, 1}}, 1, 3);
    c.add_term(Index{{1, 4}, {1, 1}}, 2, 3);
    LinComb back = lincomb_from_json(lincomb_to_json(c, 3));
    CHECK(back.level == c.level);
    CHECK(back.terms == c.terms);

    LinComb sd;
    sd.level = Level::Sless;
    sd.add_term(Index{{2}, {0}}, 2, 3);
    LinComb back2 = lincomb_from_json(lincomb_to_json(sd, 3));
    CHECK(back2.level == Level::Sless);
    CHECK(back2.terms == sd.terms);

    CHECK_THROWS_AS((void)lincomb_from_json("{\"level\":\"nope\",\"terms\":[]}"),
                    UsageError);
}
