#include "amzv/index.hpp"

#include <sstream>

#include "amzv/errors.hpp"

namespace amzv {

uint64_t Index::weight() const {
    uint64_t w = 0;
    for (uint32_t v : s) w += v;
    return w;
}

uint32_t Index::eps_product(uint32_t q) const {
    if (q < 2) throw UsageError("Index: q must be >= 2");
    if (q == 2) return 0;
    uint64_t k = 0;
    for (uint32_t v : eps) k += v;
    return uint32_t(k % (q - 1));
}

Index Index::cons(uint32_t s1, uint32_t e1, const Index& rest) {
    Index r;
    r.s.reserve(rest.s.size() + 1);
    r.eps.reserve(rest.eps.size() + 1);
    r.s.push_back(s1);
    r.eps.push_back(e1);
    r.s.insert(r.s.end(), rest.s.begin(), rest.s.end());
    r.eps.insert(r.eps.end(), rest.eps.begin(), rest.eps.end());
    return r;
}

bool IndexLess::operator()(const Index& a, const Index& b) const {
    if (a.s.size() != b.s.size()) return a.s.size() < b.s.size();
    if (a.s != b.s) return a.s < b.s;
    return a.eps < b.eps;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

uint64_t parse_uint(const std::string& tok, const char* what) {
    if (tok.empty()) throw UsageError(std::string("index: empty ") + what + " token");
    uint64_t v = 0;
    for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw UsageError(std::string("index: bad ") + what + " token '" + tok + "'");
        v = v * 10 + uint64_t(c - '0');
        if (v > (uint64_t(1) << 32)) throw UsageError(std::string("index: ") + what + " too large");
    }
    return v;
}

bool is_prime_u32(uint32_t v) { return Field::is_prime(v); }

}  // namespace

uint32_t eps_exponent_from_residue(uint32_t value, uint32_t q) {
    if (!is_prime_u32(q)) throw UsageError("index: residue characters need prime q");
    uint32_t v = value % q;
    if (v == 0) throw UsageError("index: character residue 0 is not a unit");
    if (q == 2) return 0;
    uint32_t r = Field::least_primitive_root(q);
    uint64_t cur = 1;
    for (uint32_t k = 0; k < q - 1; ++k) {
        if (cur == v) return k;
        cur = cur * r % q;
    }
    throw GuardError("index: discrete log failed");
}

Field::Code eps_embed(const Field& F, uint32_t k) {
    if (F.e() == 1) {
        uint32_t r = Field::least_primitive_root(F.p());
        uint64_t cur = 1;
        for (uint32_t i = 0; i < k % (F.q() == 2 ? 1 : F.q() - 1); ++i) cur = cur * r % F.p();
        return F.from_int(cur);
    }
    return F.subfield_exp(k);
}

Index parse_index(const std::string& text, uint32_t q) {
    if (q < 2) throw UsageError("index: q must be >= 2");
    auto halves = split(text, ';');
    if (halves.size() > 2) throw UsageError("index: more than one ';' in '" + text + "'");
    Index idx;
    for (const auto& tok : split(halves[0], ',')) {
        uint64_t v = parse_uint(tok, "weight");
        if (v == 0) throw UsageError("index: weights must be positive");
        idx.s.push_back(uint32_t(v));
    }
    if (halves.size() == 2) {
        for (const auto& tok : split(halves[1], ',')) {
            if (tok.empty()) throw UsageError("index: empty character token");
            if (tok == "1") {
                idx.eps.push_back(0);
            } else if (tok[0] == 'g') {
                if (is_prime_u32(q) && q > 2)
                    throw UsageError("index: prime q uses residue characters, not g^k");
                uint32_t k = 1;
                if (tok.size() > 1) {
                    if (tok[1] != '^') throw UsageError("index: bad character token '" + tok + "'");
                    k = uint32_t(parse_uint(tok.substr(2), "character exponent"));
                }
                idx.eps.push_back(q == 2 ? 0 : k % (q - 1));
            } else {
                uint64_t v = parse_uint(tok, "character");
                idx.eps.push_back(eps_exponent_from_residue(uint32_t(v % q), q));
            }
        }
    } else {
        idx.eps.assign(idx.s.size(), 0);
    }
    if (idx.s.size() != idx.eps.size())
        throw UsageError("index: weight and character tuples differ in length");
    if (idx.s.empty()) throw UsageError("index: empty index");
    return idx;
}

std::string index_to_string(const Index& idx, uint32_t q) {
    std::ostringstream os;
    for (size_t i = 0; i < idx.s.size(); ++i) {
        if (i) os << ",";
        os << idx.s[i];
    }
    os << ";";
    bool prime = is_prime_u32(q);
    uint32_t r = (prime && q > 2) ? Field::least_primitive_root(q) : 0;
    for (size_t i = 0; i < idx.eps.size(); ++i) {
        if (i) os << ",";
        uint32_t k = q == 2 ? 0 : idx.eps[i] % (q - 1);
        if (k == 0) {
            os << "1";
        } else if (prime) {
            uint64_t cur = 1;
            for (uint32_t j = 0; j < k; ++j) cur = cur * r % q;
            os << cur;
        } else {
            os << "g";
            if (k != 1) os << "^" << k;
        }
    }
    return os.str();
}

void LinComb::add_term(const Index& idx, uint64_t coeff, uint32_t p) {
    uint32_t c = uint32_t(coeff % p);
    if (!c) return;
    auto it = terms.find(idx);
    if (it == terms.end()) {
        terms.emplace(idx, c);
        return;
    }
    it->second = (it->second + c) % p;
    if (!it->second) terms.erase(it);
}

void LinComb::add_scaled(const LinComb& other, uint64_t coeff, uint32_t p) {
    if (other.level != level) throw GuardError("LinComb: mixing levels");
    for (const auto& [idx, c] : other.terms) add_term(idx, uint64_t(c) * (coeff % p), p);
}

uint32_t LinComb::coeff_of(const Index& idx) const {
    auto it = terms.find(idx);
    return it == terms.end() ? 0 : it->second;
}

std::string LinComb::to_string(uint32_t q) const {
    const char* tag = level == Level::Zeta ? "Z" : (level == Level::Sd ? "Sd" : "S<");
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : terms) {
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << c << "*";
        os << tag << "(" << index_to_string(idx, q) << ")";
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace amzv
