#pragma once

#include <map>
#include <utility>

#include "ncstree/rational.hpp"

namespace ncstree {

/// Finite formal sum of keys with rational coefficients. Zero coefficients are
/// never stored, so two combinations are equal iff their maps are equal.
template <class Key>
class LinearCombination {
public:
    using map_type = std::map<Key, Rational>;
    using const_iterator = typename map_type::const_iterator;

    LinearCombination() = default;
    explicit LinearCombination(Key key, Rational coeff = 1) { add(std::move(key), coeff); }

    void add(const Key& key, const Rational& coeff) {
        if (coeff == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(key, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    void add(const LinearCombination& other, const Rational& scale = 1) {
        if (scale == 0) {
            return;
        }
        for (const auto& [k, c] : other.terms_) {
            add(k, c * scale);
        }
    }

    Rational coefficient(const Key& key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const_iterator begin() const { return terms_.begin(); }
    const_iterator end() const { return terms_.end(); }
    const map_type& terms() const { return terms_; }

    LinearCombination& operator+=(const LinearCombination& o) {
        add(o);
        return *this;
    }
    LinearCombination& operator-=(const LinearCombination& o) {
        add(o, Rational(-1));
        return *this;
    }
    LinearCombination& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [k, c] : terms_) {
                c *= s;
            }
        }
        return *this;
    }

    friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
    friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }
    friend LinearCombination operator*(const Rational& s, LinearCombination a) { return a *= s; }
    friend LinearCombination operator-(LinearCombination a) { return a *= Rational(-1); }
    friend bool operator==(const LinearCombination& a, const LinearCombination& b) { return a.terms_ == b.terms_; }

private:
    map_type terms_;
};

/// Formal sum of pairs; used for coproducts.
template <class Key>
using TensorCombination = LinearCombination<std::pair<Key, Key>>;

/// Swaps the factors of every tensor term.
template <class Key>
TensorCombination<Key> flip(const TensorCombination<Key>& x) {
    TensorCombination<Key> out;
    for (const auto& [k, c] : x) {
        out.add({k.second, k.first}, c);
    }
    return out;
}

} // namespace ncstree
