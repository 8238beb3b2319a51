#include "ncstree/diffop.hpp"

#include <algorithm>

#include "ncstree/errors.hpp"

namespace ncstree {

NCSeries apply_derivation(const Derivation& delta, const NCSeries& u) {
    const TruncationSpec& spec = u.spec();
    if (!(delta.spec() == spec)) {
        throw TruncationMismatch("derivation and series have different truncations");
    }
    NCSeries out(spec);
    for (const auto& [w, c] : u.terms()) {
        for (std::size_t p = 0; p < w.size(); ++p) {
            const NCSeries& image = delta.coefficients[static_cast<unsigned char>(w[p])];
            for (const auto& [v, d] : image.terms()) {
                if (w.size() - 1 + v.size() > spec.z_degree) {
                    continue;
                }
                out.add_term(w.substr(0, p) + v + w.substr(p + 1), c.times(d, spec.t_order));
            }
        }
    }
    return out;
}

NCSeries bplus_apply(const std::vector<Derivation>& deltas, const NCSeries& u) {
    const TruncationSpec& spec = u.spec();
    // Identical derivations are grouped; a class used k times contributes k! orderings.
    std::vector<std::pair<const Derivation*, unsigned>> classes;
    for (const auto& d : deltas) {
        if (!(d.spec() == spec)) {
            throw TruncationMismatch("derivation and series have different truncations");
        }
        auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& c) { return *c.first == d; });
        if (it == classes.end()) {
            classes.emplace_back(&d, 1);
        } else {
            ++it->second;
        }
    }
    const std::size_t m = deltas.size();
    Integer orderings = 1;
    for (const auto& c : classes) {
        orderings *= factorial(c.second);
    }
    using Partial = std::map<Word, TPoly>;
    using State = std::vector<unsigned>;
    NCSeries out(spec);
    for (const auto& [w, c] : u.terms()) {
        if (w.size() < m) {
            continue;
        }
        std::map<State, Partial> states;
        states[State(classes.size(), 0)][Word()] = c;
        for (std::size_t p = 0; p < w.size(); ++p) {
            const auto letter = static_cast<unsigned char>(w[p]);
            const std::size_t remaining_after = w.size() - p - 1;
            std::map<State, Partial> next;
            for (const auto& [state, partial] : states) {
                unsigned used = 0;
                for (unsigned x : state) {
                    used += x;
                }
                if (m - used <= remaining_after) {
                    auto& keep = next[state];
                    for (const auto& [word, coeff] : partial) {
                        if (word.size() + 1 <= spec.z_degree) {
                            keep[word + static_cast<char>(letter)] += coeff;
                        }
                    }
                }
                for (std::size_t k = 0; k < classes.size(); ++k) {
                    if (state[k] == classes[k].second) {
                        continue;
                    }
                    State advanced = state;
                    ++advanced[k];
                    auto& target = next[advanced];
                    const NCSeries& image = classes[k].first->coefficients[letter];
                    for (const auto& [word, coeff] : partial) {
                        for (const auto& [v, d] : image.terms()) {
                            if (word.size() + v.size() > spec.z_degree) {
                                continue;
                            }
                            TPoly prod = coeff.times(d, spec.t_order);
                            if (!prod.is_zero()) {
                                target[word + v] += prod;
                            }
                        }
                    }
                }
            }
            states.clear();
            for (auto& [state, partial] : next) {
                std::erase_if(partial, [](const auto& kv) { return kv.second.is_zero(); });
                if (!partial.empty()) {
                    states.emplace(state, std::move(partial));
                }
            }
        }
        State full;
        for (const auto& cl : classes) {
            full.push_back(cl.second);
        }
        if (auto it = states.find(full); it != states.end()) {
            for (const auto& [word, coeff] : it->second) {
                out.add_term(word, Rational(orderings) * coeff);
            }
        }
    }
    return out;
}

DiffOperator::DiffOperator() : node_(std::make_shared<const Node>()) {}

DiffOperator DiffOperator::derivation(Derivation delta) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Deriv;
    n->derivations.push_back(std::move(delta));
    return DiffOperator(std::move(n));
}

DiffOperator DiffOperator::bplus(std::vector<Derivation> deltas) {
    auto n = std::make_shared<Node>();
    n->kind = deltas.empty() ? Kind::Identity : Kind::BPlus;
    n->derivations = std::move(deltas);
    return DiffOperator(std::move(n));
}

DiffOperator DiffOperator::compose(std::vector<DiffOperator> ops) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Compose;
    n->operators = std::move(ops);
    return DiffOperator(std::move(n));
}

DiffOperator DiffOperator::lincomb(std::vector<std::pair<TPoly, DiffOperator>> terms) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::LinComb;
    for (auto& [w, op] : terms) {
        n->weights.push_back(std::move(w));
        n->operators.push_back(std::move(op));
    }
    return DiffOperator(std::move(n));
}

NCSeries DiffOperator::apply(const NCSeries& u) const {
    switch (node_->kind) {
    case Kind::Identity:
        return u;
    case Kind::Deriv:
        return apply_derivation(node_->derivations.front(), u);
    case Kind::BPlus:
        return bplus_apply(node_->derivations, u);
    case Kind::Compose: {
        NCSeries acc = u;
        for (auto it = node_->operators.rbegin(); it != node_->operators.rend(); ++it) {
            acc = it->apply(acc);
        }
        return acc;
    }
    case Kind::LinComb: {
        NCSeries acc(u.spec());
        for (std::size_t i = 0; i < node_->operators.size(); ++i) {
            acc += node_->operators[i].apply(u).times(node_->weights[i]);
        }
        return acc;
    }
    }
    throw Error("unknown operator kind");
}

SeriesVector DiffOperator::apply(const SeriesVector& u) const {
    SeriesVector out;
    for (const auto& s : u.components) {
        out.components.push_back(apply(s));
    }
    return out;
}

OperatorMatrix DiffOperator::materialize(const TruncationSpec& spec) const {
    return OperatorMatrix::from_function(spec, [this](const NCSeries& u) { return apply(u); });
}

Derivation collapse(const DiffOperator& phi, const Derivation& delta) {
    return Derivation(phi.apply(delta.coefficients));
}

std::vector<Word> monomial_basis(const TruncationSpec& spec) {
    std::vector<Word> out{Word()};
    std::vector<Word> layer{Word()};
    for (unsigned len = 1; len <= spec.z_degree; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer) {
            unsigned start = spec.commutative && !w.empty() ? static_cast<unsigned char>(w.back()) : 0;
            for (unsigned i = start; i < spec.variables; ++i) {
                next.push_back(w + static_cast<char>(i));
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

OperatorMatrix OperatorMatrix::from_function(const TruncationSpec& spec,
                                             const std::function<NCSeries(const NCSeries&)>& f) {
    OperatorMatrix out;
    out.spec_ = spec;
    for (const auto& w : monomial_basis(spec)) {
        out.images_.emplace(w, f(NCSeries::monomial(spec, w, TPoly::constant(1))));
    }
    return out;
}

OperatorMatrix OperatorMatrix::identity(const TruncationSpec& spec) {
    return from_function(spec, [](const NCSeries& u) { return u; });
}

OperatorMatrix OperatorMatrix::zero(const TruncationSpec& spec) {
    return from_function(spec, [&](const NCSeries&) { return NCSeries(spec); });
}

NCSeries OperatorMatrix::apply(const NCSeries& u) const {
    if (!(u.spec() == spec_)) {
        throw TruncationMismatch("operator and series have different truncations");
    }
    NCSeries out(spec_);
    for (const auto& [w, c] : u.terms()) {
        out += images_.at(w).times(c);
    }
    return out;
}

SeriesVector OperatorMatrix::apply(const SeriesVector& u) const {
    SeriesVector out;
    for (const auto& s : u.components) {
        out.components.push_back(apply(s));
    }
    return out;
}

template <class F>
OperatorMatrix OperatorMatrix::map_images(F&& f) const {
    OperatorMatrix out;
    out.spec_ = spec_;
    for (const auto& [w, img] : images_) {
        out.images_.emplace(w, f(img));
    }
    return out;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& o) {
    if (!(spec_ == o.spec_)) {
        throw TruncationMismatch("operators have different truncations");
    }
    for (auto& [w, img] : images_) {
        img += o.images_.at(w);
    }
    return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& o) {
    if (!(spec_ == o.spec_)) {
        throw TruncationMismatch("operators have different truncations");
    }
    for (auto& [w, img] : images_) {
        img -= o.images_.at(w);
    }
    return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(const Rational& c) {
    for (auto& [w, img] : images_) {
        img *= c;
    }
    return *this;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (!(a.spec_ == b.spec_)) {
        throw TruncationMismatch("operators have different truncations");
    }
    return b.map_images([&](const NCSeries& img) { return a.apply(img); });
}

OperatorMatrix OperatorMatrix::times(const TPoly& p) const {
    return map_images([&](const NCSeries& img) { return img.times(p); });
}

OperatorMatrix OperatorMatrix::t_coefficient(unsigned k) const {
    return map_images([&](const NCSeries& img) { return img.t_coefficient(k); });
}

OperatorMatrix OperatorMatrix::negate_t() const {
    return map_images([](const NCSeries& img) { return img.negate_t(); });
}

OperatorMatrix OperatorMatrix::t_derivative() const {
    return map_images([](const NCSeries& img) { return img.t_derivative(); });
}

bool OperatorMatrix::is_zero() const {
    return std::all_of(images_.begin(), images_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

bool OperatorMatrix::raises_degree_by(unsigned m) const {
    for (const auto& [w, img] : images_) {
        for (const auto& [v, c] : img.terms()) {
            if (v.size() != w.size() + m) {
                return false;
            }
        }
    }
    return true;
}

OperatorMatrix operator_exp(const OperatorMatrix& a) {
    const TruncationSpec& spec = a.spec();
    if (!a.t_coefficient(0).is_zero()) {
        throw Error("operator exponential needs a vanishing constant term in t");
    }
    OperatorMatrix sum = OperatorMatrix::identity(spec);
    OperatorMatrix power = sum;
    for (unsigned k = 1; k <= spec.t_order; ++k) {
        power = a * power;
        power *= make_rational(1, k);
        sum += power;
    }
    return sum;
}

OperatorMatrix operator_log(const OperatorMatrix& b) {
    const TruncationSpec& spec = b.spec();
    OperatorMatrix x = b - OperatorMatrix::identity(spec);
    if (!x.t_coefficient(0).is_zero()) {
        throw Error("operator logarithm needs B(0) = 1");
    }
    OperatorMatrix sum = OperatorMatrix::zero(spec);
    OperatorMatrix power = OperatorMatrix::identity(spec);
    for (unsigned k = 1; k <= spec.t_order; ++k) {
        power = x * power;
        sum += make_rational(k % 2 == 1 ? 1 : -1, k) * power;
    }
    return sum;
}

} // namespace ncstree
