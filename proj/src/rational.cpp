#include "ncstree/rational.hpp"

#include <cctype>

#include "ncstree/errors.hpp"

namespace ncstree {

Rational parse_rational(std::string_view text) {
    std::size_t i = 0;
    auto digits = [&](std::size_t start) {
        std::size_t j = start;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
            ++j;
        }
        if (j == start) {
            throw ParseError("expected digits", start);
        }
        return j;
    };
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    std::size_t end = digits(i);
    Integer num(std::string(text.substr(i, end - i)));
    Integer den = 1;
    if (end < text.size() && text[end] == '/') {
        std::size_t e2 = digits(end + 1);
        den = Integer(std::string(text.substr(end + 1, e2 - end - 1)));
        if (den == 0) {
            throw ParseError("zero denominator", end + 1);
        }
        end = e2;
    }
    if (end != text.size()) {
        throw ParseError("trailing characters in rational", end);
    }
    if (negative) {
        num = -num;
    }
    return make_rational(num, den);
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) {
        return r.get_num().get_str();
    }
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer factorial(unsigned n) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

} // namespace ncstree
