// Standard-complex parameters C(a1, b2, ..., a_{2n-1}, b_{2n}) and their text form.
#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iotacx {

enum class Sign : int { Plus = +1, Minus = -1 };

/// One (a, b) step of a standard complex: an omega-edge sign and a nonzero U-power.
struct StandardPair {
    Sign a = Sign::Plus;
    int b = 1;  // nonzero; sign gives the differential direction
    bool operator==(const StandardPair&) const = default;
};

/// The sequence (a1, b2, ..., a_{2n-1}, b_{2n}); empty means the trivial complex C(0).
struct StandardParams {
    std::vector<StandardPair> pairs;

    StandardParams() = default;
    explicit StandardParams(std::vector<StandardPair> p) : pairs(std::move(p)) { check(); }

    void check() const {
        for (const auto& pr : pairs)
            if (pr.b == 0) throw std::invalid_argument("standard complex: b must be nonzero");
    }

    size_t steps() const { return pairs.size(); }
    bool trivial() const { return pairs.empty(); }

    bool operator==(const StandardParams&) const = default;
};

inline std::string printParams(const StandardParams& p) {
    std::string out = "C(";
    bool first = true;
    for (const auto& pr : p.pairs) {
        if (!first) out += ",";
        out += (pr.a == Sign::Plus) ? "+" : "-";
        out += ",";
        out += std::to_string(pr.b);
        first = false;
    }
    out += ")";
    return out;
}

struct ParamsParseError : std::runtime_error {
    size_t position;
    ParamsParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at offset " + std::to_string(pos)), position(pos) {}
};

/// Grammar: std := "C(" [ sign "," int ("," sign "," int)* ] ")" with nonzero int.
inline StandardParams parseParams(std::string_view text) {
    size_t i = 0;
    auto skip = [&] { while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i; };
    skip();
    if (i >= text.size() || text[i] != 'C') throw ParamsParseError("expected 'C'", i);
    ++i;
    skip();
    if (i >= text.size() || text[i] != '(') throw ParamsParseError("expected '('", i);
    ++i;
    StandardParams out;
    skip();
    if (i < text.size() && text[i] == ')') {
        ++i;
        skip();
        if (i != text.size()) throw ParamsParseError("trailing input", i);
        return out;
    }
    while (true) {
        skip();
        if (i >= text.size() || (text[i] != '+' && text[i] != '-'))
            throw ParamsParseError("expected sign", i);
        Sign a = (text[i] == '+') ? Sign::Plus : Sign::Minus;
        ++i;
        skip();
        if (i >= text.size() || text[i] != ',') throw ParamsParseError("expected ','", i);
        ++i;
        skip();
        bool neg = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
            neg = text[i] == '-';
            ++i;
        }
        if (i >= text.size() || !isdigit(static_cast<unsigned char>(text[i])))
            throw ParamsParseError("expected integer", i);
        long long val = 0;
        while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
            val = val * 10 + (text[i] - '0');
            if (val > 1 << 28) throw ParamsParseError("integer too large", i);
            ++i;
        }
        if (val == 0) throw ParamsParseError("b must be nonzero", i);
        out.pairs.push_back({a, static_cast<int>(neg ? -val : val)});
        skip();
        if (i < text.size() && text[i] == ',') {
            ++i;
            continue;
        }
        if (i < text.size() && text[i] == ')') {
            ++i;
            skip();
            if (i != text.size()) throw ParamsParseError("trailing input", i);
            return out;
        }
        throw ParamsParseError("expected ',' or ')'", i);
    }
}

}  // namespace iotacx
