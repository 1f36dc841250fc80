#include "jackmap/textio.hpp"

#include <cctype>

namespace jackmap {

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse error at position " + std::to_string(i) + ": " + what);
    }
    long integer() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        size_t digits = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == digits) fail("expected integer");
        return std::stol(s.substr(start, i - start));
    }
};

Partition parse_bracket_list(Cursor& c) {
    if (!c.eat('[')) c.fail("expected '['");
    std::vector<int> parts;
    if (!c.eat(']')) {
        for (;;) {
            parts.push_back(static_cast<int>(c.integer()));
            if (c.eat(']')) break;
            if (!c.eat(',')) c.fail("expected ',' or ']'");
        }
    }
    return Partition(std::move(parts));
}

}  // namespace

Partition parse_partition(const std::string& s) {
    Cursor c{s};
    Partition p = parse_bracket_list(c);
    c.skip_ws();
    if (c.i != s.size()) c.fail("trailing input after partition");
    return p;
}

PExpr parse_pexpr(const std::string& s) {
    Cursor c{s};
    PExpr out;
    bool first = true;
    for (;;) {
        c.skip_ws();
        if (c.i == s.size()) {
            if (first) c.fail("empty expression");
            break;
        }
        long sign = 1;
        if (c.eat('-'))
            sign = -1;
        else if (c.eat('+')) {
            if (first) c.fail("unexpected '+'");
        } else if (!first) {
            c.fail("expected '+' or '-'");
        }
        first = false;
        ScalarQb coeff(sign);
        bool have_coeff = false;
        if (c.peek() != 'p') {
            long num = c.integer();
            long den = 1;
            if (c.eat('/')) den = c.integer();
            coeff = ScalarQb::from_rat(Rat(sign * num, den));
            have_coeff = true;
        }
        if (have_coeff && c.eat('*')) {
            if (c.peek() != 'p') c.fail("expected p[...] after '*'");
            c.eat('p');
            out.add_term(parse_bracket_list(c), coeff);
        } else if (!have_coeff) {
            c.eat('p');
            out.add_term(parse_bracket_list(c), coeff);
        } else {
            out.add_term(Partition(), coeff);
        }
    }
    return out;
}

nlohmann::ordered_json partition_to_json(const Partition& p) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (int v : p.parts()) j.push_back(v);
    return j;
}

Partition partition_from_json(const nlohmann::json& j) {
    std::vector<int> parts;
    for (auto& v : j) parts.push_back(v.get<int>());
    return Partition(std::move(parts));
}

namespace {
nlohmann::ordered_json poly_to_json(const IntPoly& p) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const Int& c : p.coeffs()) {
        if (!c.fits_slong_p())
            throw std::overflow_error("coefficient too large for JSON output: " + c.get_str());
        j.push_back(static_cast<long>(c.get_si()));
    }
    if (j.empty()) j.push_back(0);
    return j;
}
}  // namespace

nlohmann::ordered_json scalar_to_json(const ScalarQb& x) {
    nlohmann::ordered_json j;
    j["num"] = poly_to_json(x.num());
    j["den"] = poly_to_json(x.den());
    return j;
}

ScalarQb scalar_from_json(const nlohmann::json& j) {
    std::vector<Int> num, den;
    for (auto& v : j.at("num")) num.emplace_back(v.get<long>());
    for (auto& v : j.at("den")) den.emplace_back(v.get<long>());
    return ScalarQb(IntPoly(std::move(num)), IntPoly(std::move(den)));
}

nlohmann::ordered_json mseries_to_json(const MultiSeries& s) {
    if (s.arity() != 3)
        throw std::invalid_argument("mseries_to_json: three-alphabet series only");
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (auto& [k, c] : s.terms()) {
        nlohmann::ordered_json rec;
        rec["t"] = k.t;
        rec["p"] = partition_to_json(k.ps[0]);
        rec["q"] = partition_to_json(k.ps[1]);
        rec["r"] = partition_to_json(k.ps[2]);
        rec["coeff"] = scalar_to_json(c);
        arr.push_back(rec);
    }
    return arr;
}

}  // namespace jackmap
