#include "ncstree/ncsym.hpp"

#include <cctype>
#include <mutex>

#include "ncstree/errors.hpp"
#include "ncstree/orderpoly.hpp"
#include "ncstree/tree_formulas.hpp"

namespace ncstree {

NSymElement nsym_unit() { return NSymElement(Composition{}); }

NSymElement nsym_lambda(unsigned m) { return m == 0 ? nsym_unit() : NSymElement(Composition{m}); }

NSymElement nsym_product(const NSymElement& a, const NSymElement& b) {
    NSymElement out;
    for (const auto& [u, cu] : a) {
        for (const auto& [v, cv] : b) {
            Composition w = u;
            w.insert(w.end(), v.begin(), v.end());
            out.add(std::move(w), cu * cv);
        }
    }
    return out;
}

namespace {

unsigned word_weight(const Composition& w) {
    unsigned s = 0;
    for (unsigned a : w) {
        s += a;
    }
    return s;
}

std::string format_word(const Composition& w, std::string_view symbol) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) {
            out += '.';
        }
        out += symbol;
        out += std::to_string(w[i]);
    }
    return out;
}

// substitutes each generator index a by images[a], keeping word order
NSymElement substitute_words(const NSymElement& x, const std::vector<NSymElement>& images) {
    NSymElement out;
    for (const auto& [w, c] : x) {
        NSymElement term = nsym_unit();
        for (unsigned a : w) {
            if (a >= images.size()) {
                throw WeightOverflow("generator index " + std::to_string(a) + " exceeds the solved table");
            }
            term = nsym_product(term, images[a]);
        }
        out.add(term, c);
    }
    return out;
}

NSymTensor tensor_product(const NSymTensor& a, const NSymTensor& b) {
    NSymTensor out;
    for (const auto& [u, cu] : a) {
        for (const auto& [v, cv] : b) {
            Composition l = u.first;
            l.insert(l.end(), v.first.begin(), v.first.end());
            Composition r = u.second;
            r.insert(r.end(), v.second.begin(), v.second.end());
            out.add({std::move(l), std::move(r)}, cu * cv);
        }
    }
    return out;
}

NSymTensor tensor_of(const NSymElement& a, const NSymElement& b, const Rational& c) {
    NSymTensor out;
    for (const auto& [u, cu] : a) {
        for (const auto& [v, cv] : b) {
            out.add({u, v}, c * cu * cv);
        }
    }
    return out;
}

// Lambda_m written in Psi-words, index m = 0..max
std::vector<NSymElement> lambda_in_psi(unsigned max) {
    std::vector<NSymElement> s{nsym_unit()};
    for (unsigned k = 1; k <= max; ++k) {
        NSymElement acc;
        for (unsigned i = 0; i < k; ++i) {
            acc += nsym_product(s[i], nsym_lambda(k - i));
        }
        s.push_back(Rational(1, k) * acc);
    }
    std::vector<NSymElement> lam{nsym_unit()};
    for (unsigned k = 1; k <= max; ++k) {
        NSymElement acc;
        for (unsigned i = 0; i < k; ++i) {
            acc += sign_power(i) * nsym_product(lam[i], s[k - i]);
        }
        lam.push_back(sign_power(k + 1) * acc);
    }
    return lam;
}

std::mutex bases_mutex;
NSymBases bases_cache;

NSymBases compute_bases(unsigned n) {
    NSymHost host;
    NSymBases b;
    b.max_weight = n;
    b.S = {nsym_unit()};
    for (unsigned k = 1; k <= n; ++k) {
        NSymElement acc;
        for (unsigned i = 1; i <= k; ++i) {
            acc -= sign_power(i) * nsym_product(nsym_lambda(i), b.S[k - i]);
        }
        b.S.push_back(acc);
    }
    auto log_sigma = series_log(host, TSeries<NSymElement>(b.S.begin(), b.S.end()), n);
    b.Phi = {NSymElement()};
    for (unsigned k = 1; k <= n; ++k) {
        b.Phi.push_back(Rational(k) * log_sigma[k]);
    }
    b.Psi = {NSymElement()};
    b.Xi = {NSymElement()};
    for (unsigned k = 1; k <= n; ++k) {
        NSymElement psi = Rational(k) * b.S[k];
        NSymElement xi = psi;
        for (unsigned i = 1; i < k; ++i) {
            psi -= nsym_product(b.S[i], b.Psi[k - i]);
            xi -= nsym_product(b.Xi[k - i], b.S[i]);
        }
        b.Psi.push_back(psi);
        b.Xi.push_back(xi);
    }
    return b;
}

TSeries<GLVector> f_tree(const std::set<unsigned>& labels, unsigned n) {
    TSeries<GLVector> f(n + 1);
    for (const auto& tree : enumerate_gl_basis(labels, n)) {
        if (tree.is_singleton()) {
            f[0] += gl_unit();
        } else if (tree.is_shrub()) {
            f[tree.weight()] += sign_power(tree.root_children() + tree.weight()) * gl_scaled_basis(tree);
        }
    }
    return f;
}

} // namespace

unsigned nsym_weight(const NSymElement& x) {
    unsigned w = 0;
    for (const auto& [k, c] : x) {
        w = std::max(w, word_weight(k));
    }
    return w;
}

NSymElement nsym_homogeneous(const NSymElement& x, unsigned w) {
    NSymElement out;
    for (const auto& [k, c] : x) {
        if (word_weight(k) == w) {
            out.add(k, c);
        }
    }
    return out;
}

std::string format_nsym(const NSymElement& x, std::string_view symbol) {
    if (x.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [w, c] : x) {
        Rational mag = abs(c);
        if (first) {
            out += sgn(c) < 0 ? "-" : "";
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
        }
        first = false;
        out += to_string(mag);
        if (!w.empty()) {
            out += "*" + format_word(w, symbol);
        }
    }
    return out;
}

std::string format_nsym_tensor(const NSymTensor& x) {
    if (x.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [w, c] : x) {
        if (first) {
            out += sgn(c) < 0 ? "-" : "";
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
        }
        first = false;
        out += to_string(Rational(abs(c))) + "*";
        out += w.first.empty() ? "1" : format_word(w.first, "L");
        out += " ⊗ ";
        out += w.second.empty() ? "1" : format_word(w.second, "L");
    }
    return out;
}

NSymElement parse_nsym(std::string_view text) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    };
    auto number = [&]() -> std::string {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (start == pos) {
            throw ParseError("expected a number", pos);
        }
        return std::string(text.substr(start, pos - start));
    };
    auto word = [&]() {
        Composition w;
        while (true) {
            if (pos >= text.size() || text[pos] != 'L') {
                throw ParseError("expected a generator L<m>", pos);
            }
            ++pos;
            std::size_t at = pos;
            unsigned long m = std::stoul(number());
            if (m == 0) {
                throw ParseError("generator index must be positive", at);
            }
            w.push_back(static_cast<unsigned>(m));
            if (pos < text.size() && text[pos] == '.') {
                ++pos;
                continue;
            }
            return w;
        }
    };

    NSymElement out;
    skip();
    if (pos == text.size()) {
        throw ParseError("empty element", pos);
    }
    bool first = true;
    while (true) {
        skip();
        if (pos == text.size()) {
            break;
        }
        Rational sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip();
        } else if (!first) {
            throw ParseError("expected + or -", pos);
        }
        first = false;
        Rational coeff = 1;
        Composition w;
        if (pos < text.size() && text[pos] == 'L') {
            w = word();
        } else {
            std::size_t at = pos;
            std::string num = number();
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                num += "/" + number();
            }
            coeff = parse_rational(num);
            (void)at;
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip();
                w = word();
            }
        }
        out.add(w, sign * coeff);
    }
    return out;
}

NSymBases solve_bases(unsigned max_weight) {
    std::lock_guard lock(bases_mutex);
    if (bases_cache.max_weight < max_weight) {
        bases_cache = compute_bases(max_weight);
    }
    NSymBases out;
    out.max_weight = max_weight;
    out.S.assign(bases_cache.S.begin(), bases_cache.S.begin() + max_weight + 1);
    out.Phi.assign(bases_cache.Phi.begin(), bases_cache.Phi.begin() + max_weight + 1);
    out.Psi.assign(bases_cache.Psi.begin(), bases_cache.Psi.begin() + max_weight + 1);
    out.Xi.assign(bases_cache.Xi.begin(), bases_cache.Xi.begin() + max_weight + 1);
    return out;
}

NCSTuple<NSymElement> universal_system(unsigned n) {
    auto b = solve_bases(n);
    NCSTuple<NSymElement> out;
    for (unsigned k = 0; k <= n; ++k) {
        out.f.push_back(nsym_lambda(k));
        out.g.push_back(b.S[k]);
        out.d.push_back(k == 0 ? NSymElement() : Rational(1, k) * b.Phi[k]);
    }
    for (unsigned k = 0; k < n; ++k) {
        out.h.push_back(b.Psi[k + 1]);
        out.m.push_back(b.Xi[k + 1]);
    }
    return out;
}

NSymElement lambda_to_psi(const NSymElement& x) { return substitute_words(x, lambda_in_psi(nsym_weight(x))); }

NSymElement psi_to_lambda(const NSymElement& psi_words) {
    auto b = solve_bases(std::max(1U, nsym_weight(psi_words)));
    return substitute_words(psi_words, b.Psi);
}

NSymTensor nsym_coproduct(const NSymElement& x) {
    NSymTensor out;
    for (const auto& [w, c] : x) {
        NSymTensor acc;
        acc.add({Composition{}, Composition{}}, 1);
        for (unsigned a : w) {
            NSymTensor gen;
            for (unsigned i = 0; i <= a; ++i) {
                Composition l = i == 0 ? Composition{} : Composition{i};
                Composition r = i == a ? Composition{} : Composition{a - i};
                gen.add({l, r}, 1);
            }
            acc = tensor_product(acc, gen);
        }
        out.add(acc, c);
    }
    return out;
}

NSymTensor nsym_coproduct_via_psi(const NSymElement& x) {
    NSymElement psi = lambda_to_psi(x);
    auto b = solve_bases(std::max(1U, nsym_weight(x)));
    NSymTensor out;
    for (const auto& [w, c] : psi) {
        std::size_t k = w.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            Composition l;
            Composition r;
            for (std::size_t i = 0; i < k; ++i) {
                ((mask >> i) & 1 ? l : r).push_back(w[i]);
            }
            out += tensor_of(substitute_words(NSymElement(l), b.Psi), substitute_words(NSymElement(r), b.Psi), c);
        }
    }
    return out;
}

NSymElement nsym_antipode(const NSymElement& x) {
    NSymElement psi = lambda_to_psi(x);
    NSymElement image;
    for (const auto& [w, c] : psi) {
        Composition r(w.rbegin(), w.rend());
        image.add(r, c * sign_power(static_cast<long>(w.size())));
    }
    return psi_to_lambda(image);
}

Rational nsym_counit(const NSymElement& x) { return x.coefficient(Composition{}); }

unsigned beta_constant(const CanonicalTree& tree) {
    if (tree.is_singleton() || !tree.is_chain()) {
        return 0;
    }
    const CanonicalTree* t = &tree;
    while (!t->is_singleton()) {
        t = &t->children()[0];
    }
    return t->label();
}

unsigned gamma_constant(const CanonicalTree& tree) { return tree.is_primitive() ? tree.children()[0].label() : 0; }

NCSTuple<GLVector> omega_trees(const std::set<unsigned>& labels, unsigned n) {
    NCSTuple<GLVector> out;
    out.f = f_tree(labels, n);
    out.g.assign(n + 1, GLVector());
    out.d.assign(n + 1, GLVector());
    out.h.assign(n, GLVector());
    out.m.assign(n, GLVector());
    for (const auto& tree : enumerate_gl_basis(labels, n)) {
        GLVector v = gl_scaled_basis(tree);
        unsigned w = tree.weight();
        out.g[w] += v;
        if (tree.is_primitive()) {
            out.d[w] += theta(tree) * v;
            out.m[w - 1] += Rational(gamma_constant(tree)) * v;
        }
        if (unsigned b = beta_constant(tree); b != 0) {
            out.h[w - 1] += Rational(b) * v;
        }
    }
    return out;
}

TSeries<GLVector> f_tree_by_kappa(const std::set<unsigned>& labels, unsigned n) {
    TSeries<GLVector> out(n + 1);
    out[0] = gl_unit();
    // sequences of labels, each extended step by step; a sequence of d labels stands for kappa(-t)^d
    struct Partial {
        std::vector<CanonicalTree> leaves;
        unsigned weight;
    };
    std::vector<Partial> layer{{{}, 0}};
    for (unsigned d = 1; d <= n; ++d) {
        std::vector<Partial> next;
        for (const auto& p : layer) {
            for (unsigned m : labels) {
                if (p.weight + m <= n) {
                    Partial q = p;
                    q.leaves.push_back(CanonicalTree::make(m));
                    q.weight += m;
                    next.push_back(std::move(q));
                }
            }
        }
        if (next.empty()) {
            break;
        }
        Rational c = sign_power(d) / factorial(d);
        for (const auto& p : next) {
            out[p.weight] += (c * sign_power(p.weight)) * GLVector(b_plus(Forest(p.leaves)));
        }
        layer = std::move(next);
    }
    return out;
}

GLVector specialize_t(const std::set<unsigned>& labels, const NSymElement& x, unsigned n) {
    if (nsym_weight(x) > n) {
        throw WeightOverflow("element weight " + std::to_string(nsym_weight(x)) + " exceeds " + std::to_string(n));
    }
    auto f = f_tree(labels, n);
    GLVector out;
    for (const auto& [w, c] : x) {
        GLVector term = gl_unit();
        for (unsigned a : w) {
            term = gl_product(term, f[a]);
        }
        out += c * term;
    }
    return out;
}

OperatorMatrix specialize_s(const Automorphism& f, const NSymElement& x) {
    if (nsym_weight(x) > f.spec.t_order) {
        throw WeightOverflow("element weight " + std::to_string(nsym_weight(x)) + " exceeds the t-order " +
                             std::to_string(f.spec.t_order));
    }
    OperatorMatrix series = taylor_operator_f_negated(f).materialize(f.spec).negate_t();
    OperatorMatrix out = OperatorMatrix::zero(f.spec);
    for (const auto& [w, c] : x) {
        OperatorMatrix term = OperatorMatrix::identity(f.spec);
        for (unsigned a : w) {
            term = term * series.t_coefficient(a);
        }
        out += c * term;
    }
    return out;
}

NCSTuple<OperatorMatrix> omega_map(const Automorphism& f) {
    auto ops = operator_series(f);
    unsigned n = f.spec.t_order;
    NCSTuple<OperatorMatrix> out;
    for (unsigned k = 0; k <= n; ++k) {
        out.f.push_back(ops.f.t_coefficient(k));
        out.g.push_back(ops.g.t_coefficient(k));
        out.d.push_back(ops.d.t_coefficient(k));
    }
    for (unsigned k = 0; k < n; ++k) {
        out.h.push_back(ops.h.t_coefficient(k));
        out.m.push_back(ops.m.t_coefficient(k));
    }
    return out;
}

CheckReport verify_cd2(const Automorphism& f, unsigned max_weight) {
    CheckReport report;
    TreeCalculus calc(f);
    auto labels = f.labels();
    unsigned top = std::min(max_weight, f.spec.t_order);
    for (unsigned m = 1; m <= top; ++m) {
        auto lam = nsym_lambda(m);
        auto left = specialize_s(f, lam);
        auto right = calc.apply_a(specialize_t(labels, lam, m)).materialize(f.spec);
        report.record(left == right, "S(L" + std::to_string(m) + ") != A(T(L" + std::to_string(m) + "))");
    }
    return report;
}

CheckReport verify_tree_system_image(const Automorphism& f) {
    CheckReport report;
    TreeCalculus calc(f);
    unsigned n = f.spec.t_order;
    auto trees = omega_trees(f.labels(), n);
    auto ops = omega_map(f);
    auto compare = [&](const char* name, const TSeries<GLVector>& x, const TSeries<OperatorMatrix>& y) {
        for (std::size_t k = 0; k < x.size() && k < y.size(); ++k) {
            bool same = calc.apply_a(x[k]).materialize(f.spec) == y[k];
            report.record(same, std::string(name) + " differs at t^" + std::to_string(k));
        }
    };
    compare("f", trees.f, ops.f);
    compare("g", trees.g, ops.g);
    compare("d", trees.d, ops.d);
    compare("h", trees.h, ops.h);
    compare("m", trees.m, ops.m);
    return report;
}

namespace {

std::size_t rational_rank(std::vector<std::vector<Rational>> rows) {
    std::size_t rank = 0;
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[pivot], rows[rank]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (sgn(rows[r][c]) == 0) {
                continue;
            }
            Rational factor = rows[r][c] / rows[rank][c];
            for (std::size_t j = c; j < cols; ++j) {
                rows[r][j] -= factor * rows[rank][j];
            }
        }
        ++rank;
    }
    return rank;
}

void compositions(unsigned m, Composition& prefix, std::vector<Composition>& out) {
    if (m == 0) {
        out.push_back(prefix);
        return;
    }
    for (unsigned a = 1; a <= m; ++a) {
        prefix.push_back(a);
        compositions(m - a, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

RankResult injectivity_rank(unsigned m) {
    std::set<unsigned> labels;
    for (unsigned i = 1; i <= m; ++i) {
        labels.insert(i);
    }
    std::vector<CanonicalTree> basis;
    for (const auto& t : enumerate_gl_basis(labels, m)) {
        if (t.weight() == m) {
            basis.push_back(t);
        }
    }
    std::vector<Composition> words;
    Composition prefix;
    compositions(m, prefix, words);
    std::vector<std::vector<Rational>> rows;
    for (const auto& w : words) {
        GLVector image = specialize_t(labels, NSymElement(w), m);
        std::vector<Rational> row;
        row.reserve(basis.size());
        for (const auto& t : basis) {
            row.push_back(image.coefficient(t));
        }
        rows.push_back(std::move(row));
    }
    return {rational_rank(std::move(rows)), std::size_t{1} << (m - 1)};
}

} // namespace ncstree
