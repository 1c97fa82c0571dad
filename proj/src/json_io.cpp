#include "amzv/json_io.hpp"

#include <json.hpp>

#include "amzv/errors.hpp"

namespace amzv {

using nlohmann::json;

std::string field_metadata_json(const Field& F) {
    json j;
    j["p"] = F.p();
    j["e"] = F.e();
    j["M"] = F.M();
    j["modulus"] = F.modulus_code();
    j["generator"] = F.generator();
    return j.dump();
}

static json useries_json_obj(const USeries& x, size_t max_digits) {
    const Field& F = *x.field();
    json j;
    j["var"] = "u";
    j["q"] = F.q();
    j["M"] = F.M();
    if (x.is_zero())
        j["valuation"] = nullptr;
    else
        j["valuation"] = x.valuation();
    j["prec"] = x.prec();
    json digits = json::array();
    const auto& dg = x.digits();
    for (size_t i = 0; i < dg.size() && i < max_digits; ++i) digits.push_back(dg[i]);
    j["digits"] = std::move(digits);
    return j;
}

std::string useries_to_json(const USeries& x, size_t max_digits) {
    return useries_json_obj(x, max_digits).dump();
}

USeries useries_from_json(const std::string& text, const FieldPtr& F) {
    json j = json::parse(text);
    if (j.value("var", "") != std::string("u")) throw UsageError("series JSON: var must be \"u\"");
    if (j.at("q").get<uint64_t>() != F->q() || j.at("M").get<uint64_t>() != F->M())
        throw UsageError("series JSON: field tower mismatch");
    const int64_t prec = j.at("prec").get<int64_t>();
    if (j.at("valuation").is_null()) return USeries::zero(F, prec);
    const int64_t val = j.at("valuation").get<int64_t>();
    USeries acc = USeries::zero(F, prec);
    int64_t k = val;
    for (const auto& d : j.at("digits")) {
        const uint64_t code = d.get<uint64_t>();
        if (code) acc = acc + USeries::monomial(F, Field::Code(code), k, prec);
        ++k;
    }
    return acc;
}

static json index_json_obj(const Index& idx, uint32_t q) {
    json j;
    j["s"] = idx.s;
    j["eps"] = idx.eps;
    j["text"] = index_to_string(idx, q);
    return j;
}

std::string zeta_value_to_json(const ZetaValue& z, uint32_t q, size_t max_digits) {
    json j;
    j["index"] = index_json_obj(z.index, q);
    j["value"] = useries_json_obj(z.value, max_digits);
    j["d_max_used"] = z.d_max_used;
    j["tail_valuation_bound"] = z.tail_valuation_bound;
    return j.dump();
}

std::string lincomb_to_json(const LinComb& c, uint32_t q) {
    json j;
    switch (c.level) {
        case Level::Zeta: j["level"] = "zeta"; break;
        case Level::Sd: j["level"] = "sd"; break;
        case Level::Sless: j["level"] = "sless"; break;
    }
    json terms = json::array();
    for (const auto& [idx, cf] : c.terms) {
        json t;
        t["coeff"] = cf;
        t["s"] = idx.s;
        t["eps"] = idx.eps;
        t["text"] = index_to_string(idx, q);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

LinComb lincomb_from_json(const std::string& text) {
    json j = json::parse(text);
    LinComb c;
    const std::string level = j.at("level").get<std::string>();
    if (level == "zeta")
        c.level = Level::Zeta;
    else if (level == "sd")
        c.level = Level::Sd;
    else if (level == "sless")
        c.level = Level::Sless;
    else
        throw UsageError("combination JSON: unknown level");
    for (const auto& t : j.at("terms")) {
        Index idx;
        idx.s = t.at("s").get<std::vector<uint32_t>>();
        idx.eps = t.at("eps").get<std::vector<uint32_t>>();
        if (idx.s.size() != idx.eps.size())
            throw UsageError("combination JSON: s/eps length mismatch");
        c.terms[idx] = t.at("coeff").get<uint32_t>();
    }
    return c;
}

}  // namespace amzv
