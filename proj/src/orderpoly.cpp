#include "ncstree/orderpoly.hpp"

#include <algorithm>

namespace ncstree {

PolyS::PolyS(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

PolyS PolyS::constant(const Rational& c) { return PolyS({c}); }

PolyS PolyS::s() { return PolyS({Rational(0), Rational(1)}); }

void PolyS::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

Rational PolyS::operator()(const Rational& s) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * s + *it;
    }
    return acc;
}

PolyS PolyS::negate_argument() const {
    std::vector<Rational> c = coeffs_;
    for (std::size_t k = 1; k < c.size(); k += 2) {
        c[k] = -c[k];
    }
    return PolyS(std::move(c));
}

PolyS PolyS::shift(const Rational& c) const {
    PolyS linear({c, Rational(1)});
    PolyS acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * linear + constant(*it);
    }
    return acc;
}

PolyS PolyS::nabla() const { return *this - shift(Rational(-1)); }

PolyS& PolyS::operator+=(const PolyS& o) {
    if (coeffs_.size() < o.coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size());
    }
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
        coeffs_[k] += o.coeffs_[k];
    }
    trim();
    return *this;
}

PolyS& PolyS::operator-=(const PolyS& o) {
    if (coeffs_.size() < o.coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size());
    }
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
        coeffs_[k] -= o.coeffs_[k];
    }
    trim();
    return *this;
}

PolyS& PolyS::operator*=(const Rational& c) {
    for (auto& x : coeffs_) {
        x *= c;
    }
    trim();
    return *this;
}

PolyS operator*(const PolyS& a, const PolyS& b) {
    if (a.is_zero() || b.is_zero()) {
        return PolyS();
    }
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return PolyS(std::move(c));
}

std::string PolyS::to_string() const {
    if (is_zero()) {
        return "0";
    }
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[k];
        if (c == 0) {
            continue;
        }
        if (out.empty()) {
            out = c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        out += ncstree::to_string(Rational(abs(c)));
        if (k >= 1) {
            out += "*s";
        }
        if (k >= 2) {
            out += "^" + std::to_string(k);
        }
    }
    return out;
}

PolyS PolyS::interpolate(const std::vector<Rational>& values) {
    // Newton form on the nodes 0, 1, 2, ...: p(s) = sum_k (Delta^k p)(0) * binom(s, k).
    std::vector<Rational> diff = values;
    PolyS result;
    PolyS falling = constant(1);
    for (std::size_t k = 0; k < values.size(); ++k) {
        result += diff[0] * falling;
        for (std::size_t i = 0; i + 1 < diff.size() - k; ++i) {
            diff[i] = diff[i + 1] - diff[i];
        }
        falling = falling * PolyS({Rational(-static_cast<long>(k)), Rational(1)});
        falling *= make_rational(1, static_cast<long>(k + 1));
    }
    return result;
}

namespace {

// Map counts of a tree into chains of length 0..max_s.
std::vector<Integer> chain_counts(const CanonicalTree& tree, unsigned max_s, bool strict,
                                  std::map<CanonicalTree, std::vector<Integer>>& memo) {
    if (auto it = memo.find(tree); it != memo.end()) {
        return it->second;
    }
    std::vector<std::vector<Integer>> kids;
    for (const auto& c : tree.children()) {
        kids.push_back(chain_counts(c, max_s, strict, memo));
    }
    std::vector<Integer> out(max_s + 1, 0);
    for (unsigned s = 0; s <= max_s; ++s) {
        for (unsigned j = 1; j <= s; ++j) {
            unsigned room = strict ? s - j : s - j + 1;
            Integer prod = 1;
            for (const auto& k : kids) {
                prod *= k[room];
            }
            out[s] += prod;
        }
    }
    memo.emplace(tree, out);
    return out;
}

PolyS forest_polynomial(const Forest& forest, bool strict) {
    const unsigned v = forest.vertex_count();
    std::map<CanonicalTree, std::vector<Integer>> memo;
    std::vector<Rational> values(v + 1, Rational(1));
    for (const auto& t : forest.trees()) {
        auto counts = chain_counts(t.unlabeled(), v, strict, memo);
        for (unsigned s = 0; s <= v; ++s) {
            values[s] *= counts[s];
        }
    }
    return PolyS::interpolate(values);
}

} // namespace

PolyS order_polynomial(const Forest& forest) { return forest_polynomial(forest, false); }

PolyS order_polynomial(const CanonicalTree& tree) {
    std::map<CanonicalTree, std::vector<Integer>> memo;
    auto counts = chain_counts(tree.unlabeled(), tree.vertex_count(), false, memo);
    return PolyS::interpolate({counts.begin(), counts.end()});
}

PolyS strict_order_polynomial(const Forest& forest) { return forest_polynomial(forest, true); }

PolyS strict_order_polynomial(const CanonicalTree& tree) {
    std::map<CanonicalTree, std::vector<Integer>> memo;
    auto counts = chain_counts(tree.unlabeled(), tree.vertex_count(), true, memo);
    return PolyS::interpolate({counts.begin(), counts.end()});
}

namespace {

CanonicalTree shape_key(const CanonicalTree& tree) { return tree.unlabeled(1).with_root_label(0); }

bool structurally_zero(const CanonicalTree& tree) { return !tree.is_primitive(); }

} // namespace

Rational ThetaTable::theta(const CanonicalTree& tree) {
    if (structurally_zero(tree)) {
        return 0;
    }
    CanonicalTree key = shape_key(tree);
    {
        std::lock_guard lock(mutex_);
        if (auto it = direct_.find(key); it != direct_.end()) {
            return it->second;
        }
    }
    Rational value = order_polynomial(b_minus(key)).coefficient(1);
    std::lock_guard lock(mutex_);
    direct_.emplace(key, value);
    return value;
}

Rational ThetaTable::theta_by_recursion(const CanonicalTree& tree) {
    if (structurally_zero(tree)) {
        return 0;
    }
    if (tree.vertex_count() == 2) {
        return 1;
    }
    CanonicalTree key = shape_key(tree);
    {
        std::lock_guard lock(mutex_);
        if (auto it = recursive_.find(key); it != recursive_.end()) {
            return it->second;
        }
    }
    Rational value = 1;
    for (unsigned m = 2; m <= key.vertex_count(); ++m) {
        Rational inner = 0;
        for (const auto& chain : descending_cut_chains(key, m - 1, true)) {
            if (std::any_of(chain.pieces.begin(), chain.pieces.end(), structurally_zero)) {
                continue;
            }
            Rational prod = 1;
            for (const auto& piece : chain.pieces) {
                prod *= theta_by_recursion(piece);
            }
            inner += prod;
        }
        value -= inner / Rational(factorial(m));
    }
    std::lock_guard lock(mutex_);
    recursive_.emplace(key, value);
    return value;
}

std::size_t ThetaTable::size() const {
    std::lock_guard lock(mutex_);
    return direct_.size();
}

ThetaTable& theta_table() {
    static ThetaTable table;
    return table;
}

PolyS nabla_expansion(const CanonicalTree& tree) {
    PolyS out;
    for (unsigned k = 1; k <= tree.vertex_count(); ++k) {
        Rational inner = 0;
        for (const auto& chain : descending_cut_chains(tree, k - 1, true)) {
            Rational prod = 1;
            for (const auto& piece : chain.pieces) {
                prod *= theta(piece);
                if (prod == 0) {
                    break;
                }
            }
            inner += prod;
        }
        std::vector<Rational> mono(k + 1);
        mono[k] = inner / Rational(factorial(k));
        out += PolyS(std::move(mono));
    }
    return out;
}

} // namespace ncstree
