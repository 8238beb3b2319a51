#include "ncstree/automorphism.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ncstree/errors.hpp"

namespace ncstree {

void Automorphism::validate() const {
    if (spec.z_degree < 1 || spec.variables < 1) {
        throw InvalidAutomorphism("truncation needs z_degree >= 1 and at least one variable");
    }
    if (alpha < 1) {
        throw InvalidAutomorphism("alpha must be at least 1");
    }
    if (!names.empty() && names.size() != spec.variables) {
        throw InvalidAutomorphism("variable names do not match the variable count");
    }
    for (const auto& [m, h] : components) {
        if (m == 0) {
            throw InvalidAutomorphism("H_[0] is not allowed: H must vanish at t = 0");
        }
        if (h.size() != spec.variables) {
            throw InvalidAutomorphism("H_[" + std::to_string(m) + "] has the wrong number of components");
        }
        for (std::size_t i = 0; i < h.size(); ++i) {
            if (!(h[i].spec() == spec)) {
                throw TruncationMismatch("component truncation differs from the automorphism");
            }
            if (!h[i].t_derivative().is_zero()) {
                throw InvalidAutomorphism("H_[" + std::to_string(m) + "] must not depend on t");
            }
            if (auto o = h[i].order(); o && *o < alpha) {
                throw InvalidAutomorphism("H_[" + std::to_string(m) + "] has order below alpha");
            }
        }
    }
}

std::set<unsigned> Automorphism::labels() const {
    std::set<unsigned> out;
    for (const auto& [m, h] : components) {
        if (!h.is_zero()) {
            out.insert(m);
        }
    }
    return out;
}

SeriesVector Automorphism::component(unsigned m) const {
    auto it = components.find(m);
    return it == components.end() ? SeriesVector::zero(spec) : it->second;
}

SeriesVector Automorphism::H() const {
    SeriesVector out = SeriesVector::zero(spec);
    for (const auto& [m, h] : components) {
        out += h.times(TPoly::monomial(1, m));
    }
    return out;
}

SeriesVector Automorphism::F() const { return SeriesVector::identity(spec) - H(); }

const std::vector<std::string>& Automorphism::variable_names() const {
    static thread_local std::vector<std::string> fallback;
    if (!names.empty()) {
        return names;
    }
    fallback = default_names(spec.variables);
    return fallback;
}

Automorphism parse_map(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed map file: ") + e.what(), e.byte);
    }
    Automorphism out;
    try {
        out.names = doc.at("vars").get<std::vector<std::string>>();
        out.spec.variables = static_cast<unsigned>(out.names.size());
        out.spec.commutative = doc.value("commutative", false);
        out.alpha = doc.value("alpha", 1U);
        const auto& trunc = doc.at("truncation");
        out.spec.t_order = trunc.at("t_order").get<unsigned>();
        out.spec.z_degree = trunc.at("z_degree").get<unsigned>();
        for (const auto& entry : doc.at("H")) {
            unsigned m = entry.at("m").get<unsigned>();
            unsigned component = entry.at("component").get<unsigned>();
            if (component < 1 || component > out.spec.variables) {
                throw InvalidAutomorphism("component index out of range: " + std::to_string(component));
            }
            auto [it, inserted] = out.components.try_emplace(m, SeriesVector::zero(out.spec));
            it->second[component - 1] += parse_series(entry.at("series").get<std::string>(), out.spec, out.names);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid map file: ") + e.what(), 0);
    }
    out.validate();
    return out;
}

Automorphism load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open map file " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_map(buffer.str());
}

std::string to_map_json(const Automorphism& f) {
    nlohmann::json doc;
    doc["vars"] = f.variable_names();
    doc["commutative"] = f.spec.commutative;
    doc["alpha"] = f.alpha;
    doc["truncation"] = {{"t_order", f.spec.t_order}, {"z_degree", f.spec.z_degree}};
    doc["H"] = nlohmann::json::array();
    for (const auto& [m, h] : f.components) {
        for (std::size_t i = 0; i < h.size(); ++i) {
            if (!h[i].is_zero()) {
                doc["H"].push_back({{"m", m}, {"component", i + 1}, {"series", h[i].to_string(f.variable_names())}});
            }
        }
    }
    return doc.dump(2);
}

Automorphism random_automorphism(std::uint64_t seed, const RandomAutomorphismOptions& options) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    Automorphism out;
    out.spec.variables = static_cast<unsigned>(uniform(1, static_cast<int>(options.max_variables)));
    out.spec.t_order = options.t_order;
    out.spec.z_degree = options.z_degree;
    out.spec.commutative = options.commutative;
    out.alpha = static_cast<unsigned>(uniform(1, std::min(2, static_cast<int>(options.max_degree))));
    std::vector<unsigned> pool(options.label_pool.begin(), options.label_pool.end());
    std::set<unsigned> labels;
    while (labels.empty()) {
        for (unsigned m : pool) {
            if (uniform(0, 1) == 1) {
                labels.insert(m);
            }
        }
    }
    for (unsigned m : labels) {
        SeriesVector h = SeriesVector::zero(out.spec);
        bool any = false;
        while (!any) {
            for (unsigned i = 0; i < out.spec.variables; ++i) {
                int terms = uniform(0, 2);
                for (int k = 0; k < terms; ++k) {
                    int len = uniform(static_cast<int>(out.alpha), static_cast<int>(options.max_degree));
                    Word w;
                    for (int j = 0; j < len; ++j) {
                        w += static_cast<char>(uniform(0, static_cast<int>(out.spec.variables) - 1));
                    }
                    int num = 0;
                    while (num == 0) {
                        num = uniform(-3, 3);
                    }
                    h[i].add_term(w, TPoly::constant(make_rational(num, uniform(1, 2))));
                }
            }
            any = !h.is_zero();
        }
        out.components.emplace(m, std::move(h));
    }
    out.validate();
    return out;
}

SeriesVector fixed_point_inverse(const Automorphism& f) {
    f.validate();
    const SeriesVector z = SeriesVector::identity(f.spec);
    const SeriesVector h = f.H();
    SeriesVector m = SeriesVector::zero(f.spec);
    // Each round fixes one more power of t.
    for (unsigned round = 0; round <= f.spec.t_order; ++round) {
        m = substitute(h, z + m);
    }
    if (!(substitute(h, z + m) == m)) {
        throw Error("fixed-point iteration did not stabilize");
    }
    return z + m;
}

namespace {

DiffOperator exponential_bplus(const Derivation& delta, unsigned max_k, bool alternate) {
    std::vector<std::pair<TPoly, DiffOperator>> terms;
    for (unsigned k = 0; k <= max_k; ++k) {
        Rational c = Rational(1) / Rational(factorial(k));
        if (alternate && k % 2 == 1) {
            c = -c;
        }
        terms.emplace_back(TPoly::constant(c), DiffOperator::bplus(std::vector<Derivation>(k, delta)));
    }
    return DiffOperator::lincomb(std::move(terms));
}

} // namespace

DiffOperator taylor_operator_f_negated(const Automorphism& f) {
    return exponential_bplus(Derivation(f.H()), std::min(f.spec.t_order, f.spec.z_degree), true);
}

DiffOperator taylor_operator_g(const Automorphism& f, const SeriesVector& inverse) {
    SeriesVector m = inverse - SeriesVector::identity(f.spec);
    return exponential_bplus(Derivation(m), std::min(f.spec.t_order, f.spec.z_degree), false);
}

std::pair<Derivation, Derivation> ncs_components_hm(const Automorphism& f, const SeriesVector& inverse) {
    SeriesVector m = inverse - SeriesVector::identity(f.spec);
    Derivation h(substitute(m.t_derivative(), f.F()));
    Derivation mm(substitute(f.H().t_derivative(), inverse));
    return {h, mm};
}

OperatorSeries operator_series(const Automorphism& f) {
    SeriesVector inverse = fixed_point_inverse(f);
    OperatorSeries out;
    out.f = taylor_operator_f_negated(f).materialize(f.spec).negate_t();
    out.g = taylor_operator_g(f, inverse).materialize(f.spec);
    out.d = operator_log(out.g);
    auto [h, m] = ncs_components_hm(f, inverse);
    out.h = DiffOperator::derivation(h).materialize(f.spec);
    out.m = DiffOperator::derivation(m).materialize(f.spec);
    return out;
}

} // namespace ncstree
