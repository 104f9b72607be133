#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature with deterministic summation.
//
// Intervals are bisected worst-first (ties broken by position) and the final
// sum is taken pairwise over intervals sorted by left endpoint, so results
// are bit-identical for identical inputs regardless of how the integrand is
// evaluated.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "rsb/errors.hpp"
#include "rsb/types.hpp"

namespace rsb::quad {

struct Options {
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    int max_intervals = 2000;
    int initial_intervals = 1;
};

template <class V>
struct Result {
    V value{};
    double error = 0.0;
    int evaluations = 0;
};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const cplx& v) { return std::abs(v); }
inline double magnitude(const ComplexVec3& v) { return norm(v); }
inline double magnitude(const RealVec3& v) { return norm(v); }

/// Fixed-order pairwise sum; the same input order always gives the same bits.
template <class V>
V pairwise_sum(std::span<const V> xs) {
    if (xs.empty()) return V{};
    if (xs.size() == 1) return xs[0];
    if (xs.size() == 2) return xs[0] + xs[1];
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

namespace detail {

inline constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                  0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                  0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                  0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                  0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                  0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                  0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                 0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Segment {
    double a, b;
    V value;
    double error;
};

template <class V, class F>
Segment<V> gk15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const V fc = f(center);
    V kronrod = fc * wgk[7];
    V gauss = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const V f1 = f(center - dx);
        const V f2 = f(center + dx);
        kronrod += (f1 + f2) * wgk[j];
        if (j % 2 == 1) gauss += (f1 + f2) * wg[j / 2];
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, magnitude(kronrod - gauss)};
}

}  // namespace detail

/// Integral of f over [a, b]. Throws QuadratureError (carrying the best
/// estimate's magnitude) when the interval budget is exhausted.
template <class F>
auto integrate(const F& f, double a, double b, const Options& opt = {}) {
    using V = decltype(f(a));
    using Seg = detail::Segment<V>;
    Result<V> out;
    if (a == b) return out;

    std::vector<Seg> segs;
    const int initial = std::max(1, opt.initial_intervals);
    for (int i = 0; i < initial; ++i) {
        const double lo = a + (b - a) * i / initial;
        const double hi = (i + 1 == initial) ? b : a + (b - a) * (i + 1) / initial;
        segs.push_back(detail::gk15<V>(f, lo, hi));
    }

    auto totals = [&] {
        std::sort(segs.begin(), segs.end(), [](const Seg& l, const Seg& r) { return l.a < r.a; });
        std::vector<V> values;
        std::vector<double> errors;
        values.reserve(segs.size());
        errors.reserve(segs.size());
        for (const auto& s : segs) {
            values.push_back(s.value);
            errors.push_back(s.error);
        }
        out.value = pairwise_sum<V>(values);
        out.error = pairwise_sum<double>(errors);
    };

    totals();
    while (out.error > std::max(opt.abs_tol, opt.rel_tol * magnitude(out.value))) {
        if (int(segs.size()) >= opt.max_intervals) {
            out.evaluations = int(segs.size()) * 15;
            throw QuadratureError("adaptive quadrature did not converge within " +
                                      std::to_string(opt.max_intervals) + " intervals",
                                  magnitude(out.value), out.error);
        }
        auto worst = std::max_element(segs.begin(), segs.end(), [](const Seg& l, const Seg& r) {
            return l.error < r.error || (l.error == r.error && l.a > r.a);
        });
        const Seg s = *worst;
        const double mid = 0.5 * (s.a + s.b);
        *worst = detail::gk15<V>(f, s.a, mid);
        segs.push_back(detail::gk15<V>(f, mid, s.b));
        totals();
    }
    out.evaluations = int(segs.size()) * 15;
    return out;
}

/// Composite 15-point Kronrod rule on `panels` equal panels; no adaptivity.
template <class F>
auto fixed_panels(const F& f, double a, double b, int panels) {
    using V = decltype(f(a));
    if (panels < 1) throw DomainError("fixed_panels: need at least one panel");
    std::vector<V> values;
    values.reserve(panels);
    double error = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + (b - a) * i / panels;
        const double hi = (i + 1 == panels) ? b : a + (b - a) * (i + 1) / panels;
        const auto s = detail::gk15<V>(f, lo, hi);
        values.push_back(s.value);
        error += s.error;
    }
    return Result<V>{pairwise_sum<V>(values), error, 15 * panels};
}

/// Nodes and weights of the composite rule used by fixed_panels, for
/// integrands that are cheaper to tabulate once and reweight.
struct NodeTable {
    std::vector<double> x;
    std::vector<double> w;
};

inline NodeTable panel_nodes(double a, double b, int panels) {
    if (panels < 1) throw DomainError("panel_nodes: need at least one panel");
    NodeTable t;
    t.x.reserve(15 * panels);
    t.w.reserve(15 * panels);
    for (int i = 0; i < panels; ++i) {
        const double lo = a + (b - a) * i / panels;
        const double hi = (i + 1 == panels) ? b : a + (b - a) * (i + 1) / panels;
        const double center = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int j = 0; j < 7; ++j) {
            t.x.push_back(center - half * detail::xgk[j]);
            t.w.push_back(half * detail::wgk[j]);
        }
        t.x.push_back(center);
        t.w.push_back(half * detail::wgk[7]);
        for (int j = 6; j >= 0; --j) {
            t.x.push_back(center + half * detail::xgk[j]);
            t.w.push_back(half * detail::wgk[j]);
        }
    }
    return t;
}

/// Integral of f over [a, inf) through x = a - scale * ln(1 - u), u in [0, 1).
/// `scale` should be of the order of the integrand's decay length.
template <class F>
auto integrate_semi_infinite(const F& f, double a, double scale, const Options& opt = {}) {
    using V = decltype(f(a));
    auto mapped = [&](double u) -> V {
        const double one_minus = 1.0 - u;
        const double x = a - scale * std::log(one_minus);
        return f(x) * (scale / one_minus);
    };
    return integrate(mapped, 0.0, 1.0, opt);
}

}  // namespace rsb::quad
