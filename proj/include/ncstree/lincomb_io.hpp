#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "ncstree/errors.hpp"
#include "ncstree/lincomb.hpp"

namespace ncstree {

/// Prints `c1*item1 + c2*item2 - ...`; the empty combination prints as "0".
template <class Key, class Fmt>
std::string format_combination(const LinearCombination<Key>& x, Fmt&& fmt) {
    if (x.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& [k, c] : x) {
        if (out.empty()) {
            out = c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        out += to_string(Rational(abs(c))) + "*" + fmt(k);
    }
    return out;
}

/// Parses `term (('+'|'-') term)*` with `term ::= coeff | item | coeff '*' item`.
/// A bare coefficient stands for coeff times `unit`. `item(text, pos)` is called
/// when the next character is '(' or '[' and must advance `pos`.
template <class Key, class ItemParser>
LinearCombination<Key> parse_combination(std::string_view text, const Key& unit, ItemParser&& item) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    };
    auto parse_coeff = [&] {
        std::size_t start = pos;
        while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) {
            ++pos;
        }
        try {
            return parse_rational(text.substr(start, pos - start));
        } catch (const ParseError&) {
            throw ParseError("malformed coefficient", start);
        }
    };
    LinearCombination<Key> out;
    bool first = true;
    while (true) {
        skip();
        Rational sign = 1;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip();
        } else if (!first) {
            if (pos >= text.size()) {
                break;
            }
            throw ParseError("expected '+' or '-'", pos);
        }
        if (pos >= text.size()) {
            throw ParseError("expected term", pos);
        }
        Rational coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
            coeff = parse_coeff();
            have_coeff = true;
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip();
                have_coeff = false;
            }
        }
        if (have_coeff) {
            out.add(unit, sign * coeff);
        } else {
            if (pos >= text.size() || (text[pos] != '(' && text[pos] != '[')) {
                throw ParseError("expected item", pos);
            }
            out.add(item(text, pos), sign * coeff);
        }
        first = false;
        skip();
        if (pos >= text.size()) {
            break;
        }
    }
    return out;
}

} // namespace ncstree
