#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ncstree/diffop.hpp"
#include "ncstree/ncseries.hpp"

namespace ncstree {

/// F_t(z) = z - H_t(z) with H_t(z) = sum over m of t^m H_[m](z).
struct Automorphism {
    TruncationSpec spec;
    /// t-free components H_[m], keyed by the power m >= 1.
    std::map<unsigned, SeriesVector> components;
    unsigned alpha = 1;
    std::vector<std::string> names;

    /// Throws InvalidAutomorphism on m = 0, t inside H_[m], order below alpha or a spec mismatch.
    void validate() const;
    /// Labels m with H_[m] present and nonzero.
    std::set<unsigned> labels() const;
    /// H_[m], or zero when absent.
    SeriesVector component(unsigned m) const;
    SeriesVector H() const;
    SeriesVector F() const;
    const std::vector<std::string>& variable_names() const;
};

/// Reads the JSON map-file format.
Automorphism parse_map(const std::string& json_text);
Automorphism load_map(const std::string& path);
std::string to_map_json(const Automorphism& f);

struct RandomAutomorphismOptions {
    unsigned max_variables = 3;
    unsigned max_degree = 3;
    std::set<unsigned> label_pool{1, 2, 3};
    unsigned t_order = 5;
    unsigned z_degree = 4;
    bool commutative = false;
};

/// Deterministic pseudo-random automorphism for a seed.
Automorphism random_automorphism(std::uint64_t seed, const RandomAutomorphismOptions& options = {});

/// G = z + M with M iterated as M <- H_t(z + M).
SeriesVector fixed_point_inverse(const Automorphism& f);

/// The operator series of the automorphism, as t-polynomial operator matrices.
struct OperatorSeries {
    OperatorMatrix f;
    OperatorMatrix g;
    OperatorMatrix d;
    OperatorMatrix h;
    OperatorMatrix m;
};

/// sum_k (-1)^k/k! B+([H_t d/dz]^k); this operator is f(-t) and sends u to u(F_t).
DiffOperator taylor_operator_f_negated(const Automorphism& f);
/// sum_k 1/k! B+([M_t d/dz]^k); sends u to u(G_t).
DiffOperator taylor_operator_g(const Automorphism& f, const SeriesVector& inverse);
/// h = [dM/dt(F) d/dz] and m = [dH/dt(G) d/dz].
std::pair<Derivation, Derivation> ncs_components_hm(const Automorphism& f, const SeriesVector& inverse);
/// f, g, d = log g, h and m.
OperatorSeries operator_series(const Automorphism& f);

} // namespace ncstree
