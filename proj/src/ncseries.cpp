#include "ncstree/ncseries.hpp"

#include <algorithm>
#include <cctype>

#include "ncstree/errors.hpp"

namespace ncstree {

TPoly::TPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

TPoly TPoly::monomial(const Rational& c, unsigned k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return TPoly(std::move(v));
}

void TPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

std::optional<unsigned> TPoly::low_degree() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] != 0) {
            return static_cast<unsigned>(k);
        }
    }
    return std::nullopt;
}

TPoly TPoly::truncated(unsigned order) const {
    if (coeffs_.size() <= order + 1) {
        return *this;
    }
    return TPoly(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

TPoly TPoly::times(const TPoly& o, unsigned order) const {
    if (is_zero() || o.is_zero()) {
        return TPoly();
    }
    std::size_t len = std::min<std::size_t>(coeffs_.size() + o.coeffs_.size() - 1, order + 1);
    std::vector<Rational> c(len);
    for (std::size_t i = 0; i < coeffs_.size() && i < len; ++i) {
        if (coeffs_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < o.coeffs_.size() && i + j < len; ++j) {
            c[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return TPoly(std::move(c));
}

TPoly TPoly::derivative() const {
    std::vector<Rational> c;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        c.push_back(coeffs_[k] * static_cast<long>(k));
    }
    return TPoly(std::move(c));
}

TPoly TPoly::negate_argument() const {
    std::vector<Rational> c = coeffs_;
    for (std::size_t k = 1; k < c.size(); k += 2) {
        c[k] = -c[k];
    }
    return TPoly(std::move(c));
}

TPoly& TPoly::operator+=(const TPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size());
    }
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
        coeffs_[k] += o.coeffs_[k];
    }
    trim();
    return *this;
}

TPoly& TPoly::operator-=(const TPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size());
    }
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
        coeffs_[k] -= o.coeffs_[k];
    }
    trim();
    return *this;
}

TPoly& TPoly::operator*=(const Rational& c) {
    for (auto& x : coeffs_) {
        x *= c;
    }
    trim();
    return *this;
}

std::string TPoly::to_string() const {
    if (is_zero()) {
        return "0";
    }
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const Rational& c = coeffs_[k];
        if (c == 0) {
            continue;
        }
        out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        out += ncstree::to_string(Rational(abs(c)));
        if (k >= 1) {
            out += "*t";
        }
        if (k >= 2) {
            out += "^" + std::to_string(k);
        }
    }
    return out;
}

NCSeries NCSeries::constant(const TruncationSpec& spec, const Rational& c) {
    NCSeries out(spec);
    out.add_term(Word(), TPoly::constant(c));
    return out;
}

NCSeries NCSeries::variable(const TruncationSpec& spec, unsigned index) {
    if (index >= spec.variables) {
        throw Error("variable index out of range");
    }
    NCSeries out(spec);
    out.add_term(Word(1, static_cast<char>(index)), TPoly::constant(1));
    return out;
}

NCSeries NCSeries::monomial(const TruncationSpec& spec, Word word, const TPoly& coeff) {
    NCSeries out(spec);
    out.add_term(std::move(word), coeff);
    return out;
}

TPoly NCSeries::coefficient(const Word& word) const {
    Word w = word;
    if (spec_.commutative) {
        std::sort(w.begin(), w.end());
    }
    auto it = terms_.find(w);
    return it == terms_.end() ? TPoly() : it->second;
}

void NCSeries::add_term(Word word, const TPoly& coeff) {
    if (word.size() > spec_.z_degree) {
        return;
    }
    TPoly c = coeff.truncated(spec_.t_order);
    if (c.is_zero()) {
        return;
    }
    if (spec_.commutative) {
        std::sort(word.begin(), word.end());
    }
    auto [it, inserted] = terms_.try_emplace(std::move(word), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

void NCSeries::require_same(const NCSeries& o) const {
    if (!(spec_ == o.spec_)) {
        throw TruncationMismatch("series have different truncations");
    }
}

NCSeries& NCSeries::operator+=(const NCSeries& o) {
    require_same(o);
    for (const auto& [w, c] : o.terms_) {
        add_term(w, c);
    }
    return *this;
}

NCSeries& NCSeries::operator-=(const NCSeries& o) {
    require_same(o);
    for (const auto& [w, c] : o.terms_) {
        add_term(w, Rational(-1) * c);
    }
    return *this;
}

NCSeries& NCSeries::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, p] : terms_) {
        p *= c;
    }
    return *this;
}

NCSeries operator*(const NCSeries& a, const NCSeries& b) {
    a.require_same(b);
    NCSeries out(a.spec_);
    const unsigned D = a.spec_.z_degree;
    const unsigned N = a.spec_.t_order;
    for (const auto& [wa, ca] : a.terms_) {
        unsigned low_a = *ca.low_degree();
        for (const auto& [wb, cb] : b.terms_) {
            if (wa.size() + wb.size() > D || low_a + *cb.low_degree() > N) {
                continue;
            }
            out.add_term(wa + wb, ca.times(cb, N));
        }
    }
    return out;
}

NCSeries NCSeries::times(const TPoly& p) const {
    NCSeries out(spec_);
    for (const auto& [w, c] : terms_) {
        out.add_term(w, c.times(p, spec_.t_order));
    }
    return out;
}

bool operator==(const NCSeries& a, const NCSeries& b) {
    return a.spec_ == b.spec_ && a.terms_ == b.terms_;
}

std::optional<unsigned> NCSeries::order() const {
    std::optional<unsigned> best;
    for (const auto& [w, c] : terms_) {
        if (!best || w.size() < *best) {
            best = static_cast<unsigned>(w.size());
        }
    }
    return best;
}

std::optional<unsigned> NCSeries::t_order() const {
    std::optional<unsigned> best;
    for (const auto& [w, c] : terms_) {
        unsigned k = *c.low_degree();
        if (!best || k < *best) {
            best = k;
        }
    }
    return best;
}

NCSeries NCSeries::t_coefficient(unsigned k) const {
    NCSeries out(spec_);
    for (const auto& [w, c] : terms_) {
        out.add_term(w, TPoly::constant(c.coefficient(k)));
    }
    return out;
}

NCSeries NCSeries::t_derivative() const {
    NCSeries out(spec_);
    for (const auto& [w, c] : terms_) {
        out.add_term(w, c.derivative());
    }
    return out;
}

NCSeries NCSeries::negate_t() const {
    NCSeries out(spec_);
    for (const auto& [w, c] : terms_) {
        out.add_term(w, c.negate_argument());
    }
    return out;
}

NCSeries NCSeries::retruncated(const TruncationSpec& spec) const {
    if (spec.variables != spec_.variables || spec.commutative != spec_.commutative) {
        throw TruncationMismatch("cannot change the alphabet when re-truncating");
    }
    NCSeries out(spec);
    for (const auto& [w, c] : terms_) {
        out.add_term(w, c);
    }
    return out;
}

NCSeries NCSeries::homogeneous_part(unsigned degree) const {
    NCSeries out(spec_);
    for (const auto& [w, c] : terms_) {
        if (w.size() == degree) {
            out.add_term(w, c);
        }
    }
    return out;
}

std::vector<std::string> default_names(unsigned n) {
    std::vector<std::string> names;
    for (unsigned i = 1; i <= n; ++i) {
        names.push_back("z" + std::to_string(i));
    }
    return names;
}

std::string NCSeries::to_string(const std::vector<std::string>& given) const {
    const auto names = given.empty() ? default_names(spec_.variables) : given;
    struct Mono {
        const Word* word;
        unsigned power;
        Rational coeff;
    };
    std::vector<Mono> monos;
    for (const auto& [w, c] : terms_) {
        for (std::size_t k = 0; k < c.coefficients().size(); ++k) {
            if (c.coefficient(static_cast<unsigned>(k)) != 0) {
                monos.push_back({&w, static_cast<unsigned>(k), c.coefficient(static_cast<unsigned>(k))});
            }
        }
    }
    std::stable_sort(monos.begin(), monos.end(), [](const Mono& a, const Mono& b) {
        if (a.word->size() != b.word->size()) {
            return a.word->size() < b.word->size();
        }
        if (*a.word != *b.word) {
            return *a.word < *b.word;
        }
        return a.power < b.power;
    });
    if (monos.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& m : monos) {
        out += out.empty() ? (m.coeff < 0 ? "-" : "") : (m.coeff < 0 ? " - " : " + ");
        std::vector<std::string> factors;
        Rational mag = abs(m.coeff);
        if (mag != 1 || (m.power == 0 && m.word->empty())) {
            factors.push_back(ncstree::to_string(mag));
        }
        if (m.power == 1) {
            factors.push_back("t");
        } else if (m.power > 1) {
            factors.push_back("t^" + std::to_string(m.power));
        }
        const Word& w = *m.word;
        for (std::size_t i = 0; i < w.size();) {
            std::size_t j = i;
            while (j < w.size() && w[j] == w[i]) {
                ++j;
            }
            std::string f = names.at(static_cast<unsigned char>(w[i]));
            if (j - i > 1) {
                f += "^" + std::to_string(j - i);
            }
            factors.push_back(f);
            i = j;
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            out += (i ? "*" : "") + factors[i];
        }
    }
    return out;
}

SeriesVector SeriesVector::zero(const TruncationSpec& spec) {
    return SeriesVector(std::vector<NCSeries>(spec.variables, NCSeries(spec)));
}

SeriesVector SeriesVector::identity(const TruncationSpec& spec) {
    SeriesVector out;
    for (unsigned i = 0; i < spec.variables; ++i) {
        out.components.push_back(NCSeries::variable(spec, i));
    }
    return out;
}

bool SeriesVector::is_zero() const {
    return std::all_of(components.begin(), components.end(), [](const NCSeries& s) { return s.is_zero(); });
}

SeriesVector& SeriesVector::operator+=(const SeriesVector& o) {
    for (std::size_t i = 0; i < components.size(); ++i) {
        components[i] += o.components.at(i);
    }
    return *this;
}

SeriesVector& SeriesVector::operator-=(const SeriesVector& o) {
    for (std::size_t i = 0; i < components.size(); ++i) {
        components[i] -= o.components.at(i);
    }
    return *this;
}

SeriesVector& SeriesVector::operator*=(const Rational& c) {
    for (auto& s : components) {
        s *= c;
    }
    return *this;
}

namespace {

template <class F>
SeriesVector map_components(const SeriesVector& v, F&& f) {
    SeriesVector out;
    for (const auto& s : v.components) {
        out.components.push_back(f(s));
    }
    return out;
}

} // namespace

SeriesVector SeriesVector::times(const TPoly& p) const {
    return map_components(*this, [&](const NCSeries& s) { return s.times(p); });
}
SeriesVector SeriesVector::t_coefficient(unsigned k) const {
    return map_components(*this, [&](const NCSeries& s) { return s.t_coefficient(k); });
}
SeriesVector SeriesVector::t_derivative() const {
    return map_components(*this, [](const NCSeries& s) { return s.t_derivative(); });
}
SeriesVector SeriesVector::negate_t() const {
    return map_components(*this, [](const NCSeries& s) { return s.negate_t(); });
}

void check_substitution(const SeriesVector& f) {
    if (f.components.empty()) {
        throw InvalidAutomorphism("empty substitution");
    }
    const TruncationSpec& spec = f.spec();
    if (f.size() != spec.variables) {
        throw InvalidAutomorphism("substitution needs one component per variable");
    }
    for (unsigned i = 0; i < f.size(); ++i) {
        if (!(f[i].spec() == spec)) {
            throw TruncationMismatch("substitution components have different truncations");
        }
        for (const auto& [w, c] : f[i].terms()) {
            if (w.empty()) {
                throw InvalidAutomorphism("component " + std::to_string(i + 1) + " has a constant term");
            }
            if (w.size() == 1) {
                Rational c0 = c.coefficient(0) - (static_cast<unsigned char>(w[0]) == i ? 1 : 0);
                if (c0 != 0) {
                    throw InvalidAutomorphism("component " + std::to_string(i + 1) +
                                              " has a linear part differing from the identity at t^0");
                }
            }
        }
    }
}

NCSeries substitute(const NCSeries& u, const SeriesVector& f) {
    check_substitution(f);
    if (!(u.spec() == f.spec())) {
        throw TruncationMismatch("series and substitution have different truncations");
    }
    const TruncationSpec& spec = u.spec();
    // Products of components along word prefixes, shared through the map.
    std::map<Word, NCSeries> prefix;
    prefix.emplace(Word(), NCSeries::constant(spec, 1));
    NCSeries out(spec);
    for (const auto& [w, c] : u.terms()) {
        std::size_t known = w.size();
        while (!prefix.count(w.substr(0, known))) {
            --known;
        }
        for (std::size_t k = known; k < w.size(); ++k) {
            const NCSeries& prev = prefix.at(w.substr(0, k));
            prefix.emplace(w.substr(0, k + 1), prev * f[static_cast<unsigned char>(w[k])]);
        }
        out += prefix.at(w).times(c);
    }
    return out;
}

SeriesVector substitute(const SeriesVector& u, const SeriesVector& f) {
    SeriesVector out;
    for (const auto& s : u.components) {
        out.components.push_back(substitute(s, f));
    }
    return out;
}

namespace {

class SeriesParser {
public:
    SeriesParser(std::string_view text, const TruncationSpec& spec, const std::vector<std::string>& names)
        : text_(text), spec_(spec), names_(names) {}

    NCSeries parse() {
        NCSeries out(spec_);
        bool first = true;
        while (true) {
            skip();
            Rational sign = 1;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                sign = text_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                throw ParseError("expected '+' or '-'", pos_);
            }
            skip();
            term(out, sign);
            first = false;
            skip();
            if (pos_ >= text_.size()) {
                return out;
            }
        }
    }

private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    unsigned natural() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            throw ParseError("expected a natural number", start);
        }
        return static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
    }

    void term(NCSeries& out, const Rational& sign) {
        Rational coeff = sign;
        unsigned tpow = 0;
        Word word;
        bool any = false;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            std::size_t start = pos_;
            natural();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                natural();
            }
            coeff *= parse_rational(text_.substr(start, pos_ - start));
            any = true;
        }
        while (true) {
            skip();
            std::size_t save = pos_;
            if (any && pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                skip();
            }
            if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                if (pos_ != save) {
                    throw ParseError("expected a factor after '*'", pos_);
                }
                break;
            }
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string name(text_.substr(start, pos_ - start));
            unsigned power = 1;
            skip();
            if (pos_ < text_.size() && text_[pos_] == '^') {
                ++pos_;
                skip();
                power = natural();
            }
            if (name == "t") {
                tpow += power;
            } else {
                auto it = std::find(names_.begin(), names_.end(), name);
                if (it == names_.end()) {
                    throw ParseError("unknown variable '" + name + "'", start);
                }
                word.append(power, static_cast<char>(it - names_.begin()));
            }
            any = true;
        }
        if (!any) {
            throw ParseError("expected a term", pos_);
        }
        out.add_term(std::move(word), TPoly::monomial(coeff, tpow));
    }

    std::string_view text_;
    const TruncationSpec& spec_;
    const std::vector<std::string>& names_;
    std::size_t pos_ = 0;
};

} // namespace

NCSeries parse_series(std::string_view text, const TruncationSpec& spec, const std::vector<std::string>& names) {
    const auto effective = names.empty() ? default_names(spec.variables) : names;
    if (effective.size() != spec.variables) {
        throw Error("variable name list does not match the variable count");
    }
    return SeriesParser(text, spec, effective).parse();
}

} // namespace ncstree
