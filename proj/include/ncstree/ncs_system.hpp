#pragma once

#include <concepts>
#include <future>
#include <string>
#include <vector>

#include "ncstree/rational.hpp"

namespace ncstree {

/// Coefficient algebra seen through the operations the NCS equations need.
template <class H>
concept HostAlgebra = requires(const H& h, const typename H::value_type& a, const Rational& c) {
    { h.unit() } -> std::same_as<typename H::value_type>;
    { h.zero() } -> std::same_as<typename H::value_type>;
    { h.add(a, a) } -> std::same_as<typename H::value_type>;
    { h.mul(a, a) } -> std::same_as<typename H::value_type>;
    { h.scale(c, a) } -> std::same_as<typename H::value_type>;
    { h.equal(a, a) } -> std::convertible_to<bool>;
};

/// Truncated t-series; entry k is the coefficient of t^k.
template <class A>
using TSeries = std::vector<A>;

/// (f, g, d, h, m), each a TSeries over the same host.
template <class A>
struct NCSTuple {
    TSeries<A> f, g, d, h, m;
};

struct NCSReport {
    bool ok = true;
    /// First failing equation (UE-0 .. UE-4) and the t-order where it fails.
    std::string equation;
    unsigned order = 0;
    std::string detail;
};

/// Outcome of a battery of identity checks; failures name the broken instance.
struct CheckReport {
    bool ok = true;
    std::size_t checks = 0;
    std::vector<std::string> failures;
    void record(bool passed, const std::string& what) {
        ++checks;
        if (!passed) {
            ok = false;
            failures.push_back(what);
        }
    }
};

namespace ncs_detail {

template <HostAlgebra H>
typename H::value_type at(const H& host, const TSeries<typename H::value_type>& s, unsigned k) {
    return k < s.size() ? s[k] : host.zero();
}

template <HostAlgebra H>
TSeries<typename H::value_type> multiply(const H& host, const TSeries<typename H::value_type>& a,
                                         const TSeries<typename H::value_type>& b, unsigned n) {
    TSeries<typename H::value_type> out(n + 1, host.zero());
    for (unsigned i = 0; i <= n && i < a.size(); ++i) {
        for (unsigned j = 0; i + j <= n && j < b.size(); ++j) {
            out[i + j] = host.add(out[i + j], host.mul(a[i], b[j]));
        }
    }
    return out;
}

template <HostAlgebra H>
TSeries<typename H::value_type> negate_t(const H& host, TSeries<typename H::value_type> a) {
    for (std::size_t k = 1; k < a.size(); k += 2) {
        a[k] = host.scale(Rational(-1), a[k]);
    }
    return a;
}

} // namespace ncs_detail

/// exp of a t-series with zero constant term, through t^n.
template <HostAlgebra H>
TSeries<typename H::value_type> series_exp(const H& host, const TSeries<typename H::value_type>& d, unsigned n) {
    using A = typename H::value_type;
    TSeries<A> out(n + 1, host.zero());
    out[0] = host.unit();
    TSeries<A> power = out;
    for (unsigned k = 1; k <= n; ++k) {
        power = ncs_detail::multiply(host, power, d, n);
        Rational c = Rational(1) / factorial(k);
        for (unsigned j = 0; j <= n; ++j) {
            out[j] = host.add(out[j], host.scale(c, power[j]));
        }
    }
    return out;
}

/// log of a t-series with constant term 1, through t^n.
template <HostAlgebra H>
TSeries<typename H::value_type> series_log(const H& host, const TSeries<typename H::value_type>& g, unsigned n) {
    using A = typename H::value_type;
    TSeries<A> x(n + 1, host.zero());
    for (unsigned k = 1; k <= n && k < g.size(); ++k) {
        x[k] = g[k];
    }
    TSeries<A> out(n + 1, host.zero());
    TSeries<A> power(n + 1, host.zero());
    power[0] = host.unit();
    for (unsigned k = 1; k <= n; ++k) {
        power = ncs_detail::multiply(host, power, x, n);
        Rational c = Rational(k % 2 == 1 ? 1 : -1) / Rational(k);
        for (unsigned j = 0; j <= n; ++j) {
            out[j] = host.add(out[j], host.scale(c, power[j]));
        }
    }
    return out;
}

/// Checks the NCS equations through t^n:
///   UE-0  f(0) = 1 (and d(0) = 0)
///   UE-1  f(-t) g(t) = g(t) f(-t) = 1
///   UE-2  exp(d) = g
///   UE-3  dg/dt = g h
///   UE-4  dg/dt = m g
/// The derivative equations are compared through t^(n-1), the orders that
/// g and h truncated at t^n determine. The equations run concurrently, so
/// host operations must be thread safe.
template <HostAlgebra H>
NCSReport verify_ncs(const H& host, const NCSTuple<typename H::value_type>& x, unsigned n) {
    using A = typename H::value_type;
    using ncs_detail::at;
    auto fail = [](const char* eq, unsigned k, std::string detail) {
        NCSReport r;
        r.ok = false;
        r.equation = eq;
        r.order = k;
        r.detail = std::move(detail);
        return r;
    };

    auto ue0 = [&]() -> NCSReport {
        if (!host.equal(at(host, x.f, 0), host.unit())) {
            return fail("UE-0", 0, "f(0) is not the unit");
        }
        if (!host.equal(at(host, x.d, 0), host.zero())) {
            return fail("UE-0", 0, "d(0) is not zero");
        }
        return {};
    };
    auto ue1 = [&]() -> NCSReport {
        auto fneg = ncs_detail::negate_t(host, x.f);
        auto left = ncs_detail::multiply(host, fneg, x.g, n);
        auto right = ncs_detail::multiply(host, x.g, fneg, n);
        for (unsigned k = 0; k <= n; ++k) {
            A expected = k == 0 ? host.unit() : host.zero();
            if (!host.equal(left[k], expected)) {
                return fail("UE-1", k, "f(-t) g(t) != 1");
            }
            if (!host.equal(right[k], expected)) {
                return fail("UE-1", k, "g(t) f(-t) != 1");
            }
        }
        return {};
    };
    auto ue2 = [&]() -> NCSReport {
        auto e = series_exp(host, x.d, n);
        for (unsigned k = 0; k <= n; ++k) {
            if (!host.equal(e[k], at(host, x.g, k))) {
                return fail("UE-2", k, "exp(d) != g");
            }
        }
        return {};
    };
    auto derivative_eq = [&](const char* eq, bool left_h) -> NCSReport {
        auto prod = left_h ? ncs_detail::multiply(host, x.g, x.h, n) : ncs_detail::multiply(host, x.m, x.g, n);
        for (unsigned k = 0; k + 1 <= n; ++k) {
            A dg = host.scale(Rational(k + 1), at(host, x.g, k + 1));
            if (!host.equal(dg, prod[k])) {
                return fail(eq, k, left_h ? "dg/dt != g h" : "dg/dt != m g");
            }
        }
        return {};
    };

    std::vector<std::future<NCSReport>> jobs;
    jobs.push_back(std::async(std::launch::async, ue0));
    jobs.push_back(std::async(std::launch::async, ue1));
    jobs.push_back(std::async(std::launch::async, ue2));
    jobs.push_back(std::async(std::launch::async, derivative_eq, "UE-3", true));
    jobs.push_back(std::async(std::launch::async, derivative_eq, "UE-4", false));
    NCSReport out;
    for (auto& j : jobs) {
        NCSReport r = j.get();
        if (out.ok && !r.ok) {
            out = r;
        }
    }
    return out;
}

} // namespace ncstree
