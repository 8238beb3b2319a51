#include "cli.hpp"

#include <chrono>
#include <functional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "ncstree/automorphism.hpp"
#include "ncstree/errors.hpp"
#include "ncstree/hopf_ck.hpp"
#include "ncstree/hopf_gl.hpp"
#include "ncstree/ncsym.hpp"
#include "ncstree/orderpoly.hpp"
#include "ncstree/tree_formulas.hpp"
#include "ncstree/trees.hpp"
#include "ncstree/verify.hpp"

namespace ncstree::cli {

namespace {

using nlohmann::json;

// thrown for argument combinations CLI11 cannot express
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::set<unsigned> label_set(const std::vector<unsigned>& v) {
    std::set<unsigned> out(v.begin(), v.end());
    if (out.empty() || out.count(0) > 0) {
        throw UsageError("labels must be a nonempty list of positive integers");
    }
    return out;
}

json series_json(const SeriesVector& v, const std::vector<std::string>& names) {
    json out = json::array();
    for (const auto& c : v.components) {
        out.push_back(c.to_string(names));
    }
    return out;
}

json report_json(const CheckReport& r) {
    return {{"ok", r.ok}, {"checks", r.checks}, {"failures", r.failures}};
}

// first coefficient where two series vectors differ
json first_difference(const SeriesVector& a, const SeriesVector& b, const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::set<Word> words;
        for (const auto& [w, c] : a[i].terms()) words.insert(w);
        for (const auto& [w, c] : b[i].terms()) words.insert(w);
        for (const auto& w : words) {
            TPoly x = a[i].coefficient(w);
            TPoly y = b[i].coefficient(w);
            if (x != y) {
                NCSeries mono(a.spec());
                mono.add_term(w, TPoly::monomial(1, 0));
                return {{"component", i + 1}, {"monomial", mono.to_string(names)}, {"tree", x.to_string()},
                        {"fixedpoint", y.to_string()}};
            }
        }
    }
    return nullptr;
}

Rational parse_s(const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw UsageError("--s expects a rational number or the symbol s, got '" + text + "'");
    }
}

void render(const json& value, const std::string& prefix, std::ostringstream& out) {
    if (value.is_object()) {
        for (const auto& [k, v] : value.items()) {
            render(v, prefix.empty() ? k : prefix + "." + k, out);
        }
    } else if (value.is_array() && !value.empty() && (value[0].is_object() || value[0].is_array())) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            render(value[i], prefix + "[" + std::to_string(i) + "]", out);
        }
    } else if (value.is_array()) {
        out << prefix << ":";
        if (value.empty()) {
            out << " (none)";
        }
        out << "\n";
        for (const auto& v : value) {
            out << "  " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    } else {
        out << prefix << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
}

} // namespace

json CommandResult::document() const { return {{"status", status}, {"payload", payload}, {"timing_ms", timing_ms}}; }

std::string CommandResult::text() const {
    std::ostringstream out;
    out << "status: " << status << "\n";
    render(payload, "", out);
    out << "timing_ms: " << timing_ms << "\n";
    return out.str();
}

CommandResult run(const std::vector<std::string>& args) {
    auto start = std::chrono::steady_clock::now();
    CommandResult result;

    CLI::App app{"Rooted trees, order polynomials, Hopf algebras and tree expansions of automorphisms", "ncstree"};
    app.require_subcommand(1);
    app.fallthrough();
    bool text = false;
    app.add_flag("--text", text, "Plain-text view instead of JSON");

    std::function<void()> action;

    // trees
    auto* trees = app.add_subcommand("trees", "Tree enumeration and admissible cuts");
    trees->require_subcommand(1);
    std::vector<unsigned> labels{1};
    unsigned max_weight = 4;
    auto* tenum = trees->add_subcommand("enum", "Enumerate labeled rooted trees by weight");
    tenum->add_option("--labels", labels, "Comma-separated labels")->delimiter(',');
    tenum->add_option("--max-weight", max_weight, "Largest weight")->required();
    tenum->callback([&] {
        action = [&] {
            auto w = label_set(labels);
            auto list = enumerate_trees(w, max_weight);
            std::vector<std::size_t> counts(max_weight + 1, 0);
            json items = json::array();
            for (const auto& t : list) {
                ++counts[t.weight()];
                items.push_back(t.to_string());
            }
            result.payload = {{"labels", w}, {"max_weight", max_weight}, {"count", list.size()},
                              {"counts_by_weight", std::vector<std::size_t>(counts.begin() + 1, counts.end())},
                              {"trees", items}};
        };
    });
    std::string literal;
    auto* tcuts = trees->add_subcommand("cuts", "Admissible cuts of a tree");
    tcuts->add_option("tree", literal, "Tree literal")->required();
    tcuts->callback([&] {
        action = [&] {
            auto t = parse_tree(literal);
            json items = json::array();
            for (const auto& c : admissible_cuts(t)) {
                items.push_back({{"edges", c.cut.edges}, {"pruned", c.pruned.to_string()},
                                 {"remainder", c.remainder.to_string()}});
            }
            result.payload = {{"tree", t.to_string()}, {"count", items.size()}, {"cuts", items}};
        };
    });

    // order polynomials
    bool strict = false;
    auto* op = app.add_subcommand("orderpoly", "Order polynomial of a forest");
    op->add_flag("--strict", strict, "Strict order polynomial");
    op->add_option("forest", literal, "Forest literal")->required();
    op->callback([&] {
        action = [&] {
            auto f = parse_forest(literal);
            PolyS p = strict ? strict_order_polynomial(f) : order_polynomial(f);
            json coeffs = json::array();
            for (int k = 0; k <= p.degree(); ++k) {
                coeffs.push_back(to_string(p.coefficient(static_cast<unsigned>(k))));
            }
            result.payload = {{"forest", f.to_string()}, {"strict", strict}, {"polynomial", p.to_string()},
                              {"coefficients", coeffs}};
        };
    });

    auto* th = app.add_subcommand("theta", "theta and varphi constants of a tree");
    th->add_option("tree", literal, "Tree literal")->required();
    th->callback([&] {
        action = [&] {
            auto t = parse_tree(literal);
            // varphi_T = theta of B+(T), defined for trees with a labeled root
            json phi = t.label() == 0 ? json(nullptr) : json(to_string(varphi(t)));
            result.payload = {{"tree", t.to_string()}, {"theta", to_string(theta(t))}, {"varphi", phi}};
        };
    });

    // Hopf algebra operations
    std::string operation;
    std::string algebra = "gl";
    std::vector<std::string> elements;
    auto* hopf = app.add_subcommand("hopf", "Product, coproduct or antipode in H_GL or H_CK");
    hopf->add_option("operation", operation, "product, coproduct or antipode")
        ->required()
        ->check(CLI::IsMember({"product", "coproduct", "antipode"}));
    hopf->add_option("--algebra", algebra, "gl or ck")->check(CLI::IsMember({"gl", "ck"}));
    hopf->add_option("elements", elements, "Element literals")->required();
    hopf->callback([&] {
        action = [&] {
            std::size_t want = operation == "product" ? 2 : 1;
            if (elements.size() != want) {
                throw UsageError(operation + " takes " + std::to_string(want) + " element(s)");
            }
            std::string out;
            if (algebra == "gl") {
                auto a = parse_gl(elements[0]);
                if (operation == "product") {
                    out = format_gl(gl_product(a, parse_gl(elements[1])));
                } else if (operation == "coproduct") {
                    out = format_gl_tensor(gl_coproduct(a));
                } else {
                    out = format_gl(gl_antipode(a));
                }
            } else {
                auto a = parse_ck(elements[0]);
                if (operation == "product") {
                    out = format_ck(ck_product(a, parse_ck(elements[1])));
                } else if (operation == "coproduct") {
                    out = format_ck_tensor(ck_coproduct(a));
                } else {
                    out = format_ck(ck_antipode(a));
                }
            }
            result.payload = {{"algebra", algebra}, {"operation", operation}, {"result", out}};
        };
    });

    std::string gl_text;
    std::string ck_text;
    auto* pair = app.add_subcommand("pairing", "Duality pairing <x, c> of H_GL and H_CK");
    pair->add_option("gl", gl_text, "H_GL element")->required();
    pair->add_option("ck", ck_text, "H_CK element")->required();
    pair->callback([&] {
        action = [&] { result.payload = {{"value", to_string(pairing(parse_gl(gl_text), parse_ck(ck_text)))}}; };
    });

    // automorphisms
    std::string map_path;
    std::string method = "tree";
    auto* inv = app.add_subcommand("invert", "Inverse of an automorphism");
    inv->add_option("--map", map_path, "Map file")->required();
    inv->add_option("--method", method, "tree, fixedpoint or both")->check(CLI::IsMember({"tree", "fixedpoint", "both"}));
    inv->callback([&] {
        action = [&] {
            auto f = load_map(map_path);
            const auto& names = f.variable_names();
            result.payload = {{"method", method}, {"t_order", f.spec.t_order}, {"z_degree", f.spec.z_degree}};
            if (method == "tree") {
                result.payload["inverse"] = series_json(TreeCalculus(f).tree_inverse(), names);
            } else if (method == "fixedpoint") {
                result.payload["inverse"] = series_json(fixed_point_inverse(f), names);
            } else {
                auto a = TreeCalculus(f).tree_inverse();
                auto b = fixed_point_inverse(f);
                bool same = a == b;
                result.payload["inverse"] = series_json(a, names);
                result.payload["agreement"] = same;
                result.payload["first_difference"] = first_difference(a, b, names);
                if (!same) {
                    result.status = "fail";
                }
            }
        };
    });

    auto* dl = app.add_subcommand("dlog", "D-Log a_t of an automorphism");
    dl->add_option("--map", map_path, "Map file")->required();
    dl->callback([&] {
        action = [&] {
            auto f = load_map(map_path);
            auto a = TreeCalculus(f).d_log();
            bool check = exp_derivation(a) == f.F();
            result.payload = {{"a", series_json(a, f.variable_names())}, {"exp_check", check}};
            if (!check) {
                result.status = "fail";
            }
        };
    });

    std::string s_text;
    auto* fl = app.add_subcommand("flow", "Formal flow F_t(z, s)");
    fl->add_option("--map", map_path, "Map file")->required();
    fl->add_option("--s", s_text, "Rational value or the symbol s")->required();
    fl->callback([&] {
        action = [&] {
            auto f = load_map(map_path);
            TreeCalculus calc(f);
            if (s_text == "s") {
                json coeffs = json::array();
                for (const auto& c : calc.flow_formal()) {
                    coeffs.push_back(series_json(c, f.variable_names()));
                }
                result.payload = {{"s", "s"}, {"coefficients_in_s", coeffs}};
            } else {
                Rational s = parse_s(s_text);
                result.payload = {{"s", to_string(s)}, {"flow", series_json(calc.flow(s), f.variable_names())}};
            }
        };
    });

    long power_m = 2;
    auto* pw = app.add_subcommand("power", "m-th composition power");
    pw->add_option("--map", map_path, "Map file")->required();
    pw->add_option("--m", power_m, "Integer power")->required();
    pw->callback([&] {
        action = [&] {
            auto f = load_map(map_path);
            result.payload = {{"m", power_m}, {"power", series_json(TreeCalculus(f).mth_power(power_m), f.variable_names())}};
        };
    });

    unsigned alpha = 1;
    std::vector<unsigned> sep_labels;
    unsigned sep_weight = 0;
    auto* sep = app.add_subcommand("separating", "Automorphism isolating one tree");
    sep->add_option("--tree", literal, "Tree literal")->required();
    sep->add_option("--alpha", alpha, "Minimal order of the components");
    sep->add_option("--labels", sep_labels, "Label set to separate against (default: the tree's labels)")->delimiter(',');
    sep->add_option("--max-weight", sep_weight, "Weight up to which separation is checked (default |T| + 1)");
    sep->callback([&] {
        action = [&] {
            auto t = parse_tree(literal);
            if (t.label() == 0) {
                throw UsageError("the tree needs a nonzero root label");
            }
            std::set<unsigned> w(sep_labels.begin(), sep_labels.end());
            if (sep_labels.empty()) {
                std::function<void(const CanonicalTree&)> collect = [&](const CanonicalTree& x) {
                    w.insert(x.label());
                    for (const auto& c : x.children()) collect(c);
                };
                collect(t);
            }
            unsigned top = sep_weight == 0 ? t.weight() + 1 : sep_weight;
            auto f = separating_automorphism(t, alpha, w, top);
            TreeCalculus calc(f);
            bool nonzero = !calc.p_tree(t).is_zero();
            json leaks = json::array();
            std::size_t checked = 0;
            for (const auto& other : enumerate_trees(w, top)) {
                if (other == t || other.weight() < t.weight()) continue;
                ++checked;
                if (!calc.p_tree(other).is_zero()) leaks.push_back(other.to_string());
            }
            result.payload = {{"tree", t.to_string()}, {"map", json::parse(to_map_json(f))}, {"p_tree_nonzero", nonzero},
                              {"checked_trees", checked}, {"not_separated", leaks}};
            if (!nonzero || !leaks.empty()) {
                result.status = "fail";
            }
        };
    });

    // verification suites
    auto* ver = app.add_subcommand("verify", "Verification suites");
    ver->require_subcommand(1);
    std::string source = "trees";
    unsigned order = 4;
    auto* vncs = ver->add_subcommand("ncs", "Check the NCS equations");
    vncs->add_option("--source", source, "trees or map")->check(CLI::IsMember({"trees", "map"}));
    vncs->add_option("--labels", labels, "Labels for the tree system")->delimiter(',');
    vncs->add_option("--map", map_path, "Map file for the operator system");
    vncs->add_option("--order", order, "Truncation order N");
    vncs->callback([&] {
        action = [&] {
            NCSReport r;
            if (source == "trees") {
                r = verify_ncs(GLHost{}, omega_trees(label_set(labels), order), order);
            } else {
                if (map_path.empty()) {
                    throw UsageError("--source map needs --map");
                }
                auto f = load_map(map_path);
                if (order > f.spec.t_order) {
                    throw UsageError("--order exceeds the map's t_order " + std::to_string(f.spec.t_order));
                }
                r = verify_ncs(OperatorHost{f.spec}, omega_map(f), order);
            }
            result.payload = {{"source", source}, {"order", order}, {"ok", r.ok}};
            if (!r.ok) {
                result.payload["equation"] = r.equation;
                result.payload["t_order"] = r.order;
                result.payload["detail"] = r.detail;
                result.status = "fail";
            }
        };
    });
    auto* vhopf = ver->add_subcommand("hopf", "Hopf axioms and duality");
    vhopf->add_option("--algebra", algebra, "gl or ck")->check(CLI::IsMember({"gl", "ck"}));
    vhopf->add_option("--max-weight", max_weight, "Largest weight")->required();
    vhopf->add_option("--labels", labels, "Labels")->delimiter(',');
    vhopf->callback([&] {
        action = [&] {
            auto w = label_set(labels);
            auto axioms = algebra == "gl" ? verify_hopf_gl(w, max_weight) : verify_hopf_ck(w, max_weight);
            auto duality = verify_duality(w, max_weight);
            result.payload = {{"algebra", algebra}, {"labels", w}, {"max_weight", max_weight},
                              {"axioms", report_json(axioms)}, {"duality", report_json(duality)}};
            if (!axioms.ok || !duality.ok) {
                result.status = "fail";
            }
        };
    });
    auto* vcd2 = ver->add_subcommand("cd2", "S_F(Lambda_m) = A_F(T(Lambda_m))");
    vcd2->add_option("--map", map_path, "Map file")->required();
    vcd2->add_option("--max-weight", max_weight, "Largest m");
    vcd2->callback([&] {
        action = [&] {
            auto r = verify_cd2(load_map(map_path), max_weight);
            result.payload = report_json(r);
            if (!r.ok) result.status = "fail";
        };
    });
    auto* vinj = ver->add_subcommand("inject", "Rank of T on NSym_[m]");
    vinj->add_option("--max-weight", max_weight, "Largest m")->required()->check(CLI::Range(1, 5));
    vinj->callback([&] {
        action = [&] {
            json ranks = json::array();
            bool ok = true;
            for (unsigned m = 1; m <= max_weight; ++m) {
                auto r = injectivity_rank(m);
                ok = ok && r.rank == r.expected;
                ranks.push_back({{"weight", m}, {"rank", r.rank}, {"expected", r.expected}});
            }
            result.payload = {{"ranks", ranks}, {"ok", ok}};
            if (!ok) result.status = "fail";
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream out, err;
        app.exit(e, out, err);
        result.help = out.str();
        return result;
    } catch (const CLI::CallForAllHelp& e) {
        std::ostringstream out, err;
        app.exit(e, out, err);
        result.help = out.str();
        return result;
    } catch (const CLI::ParseError& e) {
        result.status = "fail";
        result.exit_code = 2;
        result.payload = {{"error", e.what()}, {"kind", "usage"}};
        return result;
    }
    result.text_view = text;

    try {
        action();
        result.exit_code = result.status == "ok" ? 0 : 1;
    } catch (const ParseError& e) {
        result.status = "fail";
        result.exit_code = 2;
        result.payload = {{"error", e.what()}, {"kind", "parse"}, {"position", e.position()}};
    } catch (const UsageError& e) {
        result.status = "fail";
        result.exit_code = 2;
        result.payload = {{"error", e.what()}, {"kind", "usage"}};
    } catch (const Error& e) {
        result.status = "fail";
        result.exit_code = 2;
        result.payload = {{"error", e.what()}, {"kind", "input"}};
    }
    auto stop = std::chrono::steady_clock::now();
    result.timing_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return result;
}

} // namespace ncstree::cli
