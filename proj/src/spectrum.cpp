#include "rsb/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "rsb/errors.hpp"
#include "rsb/quadrature.hpp"
#include "rsb/specfun.hpp"

namespace rsb {

namespace {

// Time scale l^2 Omega / c^2: the line width in omega is 1 / tau.
double line_time(const LGBeamSpec& s, const Constants& c) { return s.l * s.l * s.omega / (c.c * c.c); }

void check_inputs(const LGBeamSpec& spec, const Constants& consts) {
    spec.validate();
    if (!consts.valid()) throw DomainError("spectrum: invalid constants");
}

// Unnormalized weight at x = |omega| - Omega >= 0.
double shape(const LGBeamSpec& s, double x, const Constants& c) {
    return std::pow(x / c.c, s.weight_power()) * std::exp(-line_time(s, c) * x);
}

double weight_at(const LGBeamSpec& s, double C, double omega, const Constants& c, bool* mismatch) {
    *mismatch = omega != 0.0 && (omega > 0.0 ? 1 : -1) != s.sigma;
    const double x = std::abs(omega) - s.omega;
    if (*mismatch || x < 0.0) return 0.0;
    return C * shape(s, x, c);
}

}  // namespace

SpectralMap spectral_parameters(const LGBeamSpec& spec, double omega, const Constants& consts) {
    check_inputs(spec, consts);
    const double a = std::abs(omega);
    if (a < spec.omega) throw DomainError("spectral_parameters: |omega| below the cutoff");
    return {(2.0 * spec.omega - a) / consts.c, 2.0 * std::sqrt((a - spec.omega) * spec.omega) / consts.c,
            (a - spec.omega) / consts.c};
}

double spectral_normalization(const LGBeamSpec& spec, const Constants& consts) {
    check_inputs(spec, consts);
    // Pointwise evaluation along a curve reuses the last constant.
    struct Memo {
        double omega, l, c;
        int n, m;
        double value;
    };
    thread_local Memo memo{-1.0, 0.0, 0.0, 0, 0, 0.0};
    if (memo.omega == spec.omega && memo.l == spec.l && memo.c == consts.c && memo.n == spec.n && memo.m == spec.m)
        return memo.value;
    const double tau = line_time(spec, consts);
    const double scale = (spec.weight_power() + 1.0) / tau;
    const auto r = quad::integrate_semi_infinite([&](double x) { return shape(spec, x, consts); }, 0.0, scale,
                                                 {0.0, 1e-13, 4000, 8});
    memo = {spec.omega, spec.l, consts.c, spec.n, spec.m, 1.0 / r.value};
    return memo.value;
}

SpectralSample spectral_weight_sample(const LGBeamSpec& spec, double omega, const Constants& consts) {
    if (!std::isfinite(omega)) throw DomainError("spectral_weight: non-finite omega");
    SpectralSample out;
    out.value = weight_at(spec, spectral_normalization(spec, consts), omega, consts, &out.sign_mismatch);
    return out;
}

double spectral_weight(const LGBeamSpec& spec, double omega, const Constants& consts) {
    return spectral_weight_sample(spec, omega, consts).value;
}

SpectralPeak spectral_peak(const LGBeamSpec& spec, const Constants& consts, double rel_tol) {
    const double C = spectral_normalization(spec, consts);
    const double tau = line_time(spec, consts);
    const double s = spec.weight_power();
    auto log_w = [&](double x) { return x > 0.0 ? s * std::log(x) - tau * x : (s == 0.0 ? 0.0 : -HUGE_VAL); };

    // Golden section on [0, X]; ln w is concave there.
    const double X = (s + 1.0 + 10.0 * std::sqrt(s + 1.0)) / tau;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.0, b = X;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = log_w(x1), f2 = log_w(x2);
    while (b - a > rel_tol * X) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = log_w(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = log_w(x1);
        }
    }
    // A maximum at the cutoff is pinned there.
    const double x = s == 0.0 ? 0.0 : 0.5 * (a + b);
    return {spec.sigma * (spec.omega + x), C * shape(spec, x, consts)};
}

double SpectralCurve::integral() const {
    double sum = 0.0;
    for (std::size_t i = 1; i < w.size(); ++i) sum += 0.5 * (w[i] + w[i - 1]) * std::abs(omega[i] - omega[i - 1]);
    return sum;
}

std::size_t SpectralCurve::argmax() const {
    return std::size_t(std::max_element(w.begin(), w.end()) - w.begin());
}

SpectralCurve spectral_curve(const LGBeamSpec& spec, double abs_lo, double abs_hi, int count,
                             const Constants& consts) {
    if (count < 2) throw DomainError("spectral_curve: need at least two samples");
    if (!(abs_lo > 0.0) || !(abs_hi > abs_lo) || !std::isfinite(abs_hi))
        throw DomainError("spectral_curve: need 0 < lo < hi");
    SpectralCurve c;
    c.spec = spec;
    c.normalization = spectral_normalization(spec, consts);
    c.omega.resize(count);
    c.w.resize(count);
    for (int i = 0; i < count; ++i) {
        const double a = (i + 1 == count) ? abs_hi : abs_lo + (abs_hi - abs_lo) * i / (count - 1);
        bool mismatch = false;
        c.omega[i] = spec.sigma * a;
        c.w[i] = weight_at(spec, c.normalization, c.omega[i], consts, &mismatch);
    }
    return c;
}

std::pair<double, double> spectral_band(const LGBeamSpec& spec, const Constants& consts, double lo, double hi) {
    check_inputs(spec, consts);
    if (!(lo > 0.0 && lo < hi && hi < 1.0)) throw DomainError("spectral_band: need 0 < lo < hi < 1");
    // In x = |omega| - Omega the normalized weight is a Gamma(s + 1, 1 / tau) density.
    const double shape_k = spec.weight_power() + 1.0;
    const double tau = line_time(spec, consts);
    return {spec.omega + boost::math::gamma_p_inv(shape_k, lo) / tau,
            spec.omega + boost::math::gamma_p_inv(shape_k, hi) / tau};
}

FourierCrosscheck fourier_crosscheck(const LGBeamSpec& spec, const SpacetimePoint& p, double T,
                                     const Constants& consts, const FourierOptions& opt) {
    check_inputs(spec, consts);
    if (!p.finite()) throw DomainError("fourier_crosscheck: non-finite point");
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("fourier_crosscheck: window must be positive");
    if (opt.count < 2) throw DomainError("fourier_crosscheck: need at least two samples");
    const double tau = line_time(spec, consts);
    if (T / tau < 10.0)
        throw InsufficientResolutionError("fourier_crosscheck: window shorter than 10 l^2 Omega / c^2");

    const double s = spec.weight_power();
    const double above = opt.above > 0.0 ? opt.above : s + 5.0 + 8.0 * std::sqrt(s + 1.0);
    const double lo = std::max(spec.omega - opt.below / tau, 0.0);
    const double hi = spec.omega + above / tau;

    // Tabulate the windowed chi once with the carrier removed; the remainder
    // varies on the scale tau and the largest detuning sets the node density.
    const double detune = std::max(spec.omega - lo, hi - spec.omega);
    const int panels = int(std::ceil(0.5 * T * (detune + 1.0 / tau))) + 8;
    const quad::NodeTable nodes = quad::panel_nodes(-0.5 * T, 0.5 * T, panels);
    std::vector<cplx> g(nodes.x.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double t = nodes.x[j];
        const double hann = std::pow(std::cos(pi * t / T), 2);
        const cplx chi = lg_chi(spec, {p.x, p.y, p.z, t}, consts);
        g[j] = chi * (nodes.w[j] * hann) * std::polar(1.0, spec.sigma * spec.omega * t);
    }

    FourierCrosscheck out;
    const double C = spectral_normalization(spec, consts);
    const double rho = std::hypot(p.x, p.y);
    out.omega.resize(opt.count);
    out.transform.resize(opt.count);
    out.model.resize(opt.count);
    for (int i = 0; i < opt.count; ++i) {
        const double a = lo + (hi - lo) * i / (opt.count - 1);
        const double x = a - spec.omega;
        cplx sum = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) sum += g[j] * std::polar(1.0, spec.sigma * x * nodes.x[j]);
        out.omega[i] = spec.sigma * a;
        out.transform[i] = sum / (2.0 * pi);
        if (x >= 0.0) {
            const SpectralMap k = spectral_parameters(spec, a, consts);
            out.model[i] = C * shape(spec, x, consts) * std::abs(specfun::bessel_j(spec.m, k.k_perp * rho));
        }
        out.peak = std::max(out.peak, std::abs(out.transform[i]));
    }

    std::tie(out.band_lo, out.band_hi) = spectral_band(spec, consts, opt.band_lo, opt.band_hi);
    auto in_band = [&](int i) {
        const double a = std::abs(out.omega[i]);
        return a >= out.band_lo && a <= out.band_hi;
    };
    double num = 0.0, den = 0.0;
    for (int i = 0; i < opt.count; ++i)
        if (in_band(i)) {
            num += std::abs(out.transform[i]) * out.model[i];
            den += out.model[i] * out.model[i];
        }
    out.fitted = den > 0.0;
    if (out.fitted) {
        out.scale = num / den;
        for (int i = 0; i < opt.count; ++i)
            if (in_band(i))
                out.shape_deviation = std::max(out.shape_deviation,
                                               std::abs(std::abs(out.transform[i]) / (out.scale * out.model[i]) - 1.0));
    }

    // Two Hann main-lobe half-widths below the cutoff.
    out.guard = 8.0 * pi / T;
    if (out.peak > 0.0)
        for (int i = 0; i < opt.count; ++i)
            if (std::abs(out.omega[i]) < spec.omega - out.guard)
                out.leakage = std::max(out.leakage, std::abs(out.transform[i]) / out.peak);
    return out;
}

}  // namespace rsb
