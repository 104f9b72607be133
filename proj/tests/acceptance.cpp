// Acceptance report: one PASS/FAIL line per criterion at the contract
// tolerances. Exit status counts failures other than the known conflict
// listed in README.md (the +i form of the polarization identity).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "rsb/beams.hpp"
#include "rsb/fields.hpp"
#include "rsb/momentum.hpp"
#include "rsb/operators.hpp"
#include "rsb/quadrature.hpp"
#include "rsb/specfun.hpp"
#include "rsb/spectrum.hpp"

using namespace rsb;

namespace {

const Constants nat = Constants::natural();
std::mt19937_64 gen(0xacce97ULL);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }

SpacetimePoint random_point(double rmax = 6.0) {
    return SpacetimePoint::cylindrical(uniform(0.1, rmax), uniform(0, 2 * pi), uniform(-3, 3), uniform(-3, 3));
}

double rel(const ComplexVec3& a, const ComplexVec3& b) {
    const double s = std::max(norm(a), norm(b));
    return s == 0.0 ? 0.0 : norm(a - b) / s;
}

double slope(const std::vector<double>& h, const std::vector<double>& e) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double x = std::log(h[i]), y = std::log(e[i]);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int unexpected_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail, bool known_conflict = false) {
    std::printf("criterion %2d %-28s %s  %s\n", id, name, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass && !known_conflict) ++unexpected_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

const std::vector<BesselBeamSpec>& bessel_cases() {
    static const std::vector<BesselBeamSpec> cases = [] {
        std::vector<BesselBeamSpec> v;
        for (int m : {0, 2, 5})
            for (int sigma : {1, -1}) v.push_back({1.0, 5.0, m, sigma});
        return v;
    }();
    return cases;
}

void criterion_1() {
    const FDSpec fd = FDSpec::uniform(1e-3, 4);
    double worst = 0.0, slope_lo = 1e9, slope_hi = -1e9;
    for (const auto& s : bessel_cases()) {
        const RSField f = bessel_field(s, nat, false);
        for (int i = 0; i < 100; ++i) worst = std::max(worst, maxwell_residual(f, random_point(), nat, fd).relative());
        // Refinement above the roundoff floor.
        const std::vector<double> h{4e-2, 2e-2, 1e-2};
        const SpacetimePoint p = random_point(4.0);
        std::vector<double> e;
        for (double step : h) e.push_back(maxwell_residual(f, p, nat, FDSpec::uniform(step, 4)).relative());
        const double k = slope(h, e);
        slope_lo = std::min(slope_lo, k);
        slope_hi = std::max(slope_hi, k);
    }
    const bool pass = worst < 1e-8 && slope_lo > 3.7 && slope_hi < 4.3;
    report(1, "Maxwell residual", pass, fmt("max rel %.2e (< 1e-8), order %.3f..%.3f (4 +- 0.3)", worst, slope_lo, slope_hi));
}

void criterion_2() {
    // The catalog chi carries exact derivatives; that path is gated pointwise.
    // The FD path is gated against the peak |F| of the sample set, since
    // pointwise ratios blow up where F passes near zero.
    const FDSpec fd = FDSpec::uniform(1e-3, 4);
    double jet_worst = 0.0, fd_pointwise = 0.0, fd_scaled = 0.0;
    for (const auto& s : bessel_cases()) {
        const ScalarWaveField chi_fd = bessel_scalar_field(s, nat, false);
        const ScalarWaveField chi_jet = bessel_scalar_field(s, nat, true);
        double peak = 0.0, abs_err = 0.0;
        for (int i = 0; i < 100; ++i) {
            const SpacetimePoint p = random_point();
            const ComplexVec3 closed = bessel_rs_field(s, p, nat);
            const ComplexVec3 by_fd = whittaker_map(chi_fd, p, nat, fd);
            fd_pointwise = std::max(fd_pointwise, rel(by_fd, closed));
            abs_err = std::max(abs_err, norm(by_fd - closed));
            peak = std::max(peak, norm(closed));
            jet_worst = std::max(jet_worst, rel(whittaker_map(chi_jet, p, nat, fd), closed));
        }
        fd_scaled = std::max(fd_scaled, abs_err / peak);
    }
    report(2, "Whittaker consistency", jet_worst < 1e-8 && fd_scaled < 1e-8,
           fmt("max rel exact derivatives %.2e, FD vs peak |F| %.2e (< 1e-8); FD pointwise %.2e", jet_worst, fd_scaled,
               fd_pointwise));
}

void criterion_3() {
    double worst = 0.0;
    int count = 0;
    for (int sigma : {1, -1})
        for (int m : {0, 1, 2, 5})
            for (double kz : {2.5, -1.5}) {
                const BesselBeamSpec s{1.2, kz, m, sigma};
                const auto amp = BesselAmplitude::for_mode(s);
                for (int i = 0; i < 7 && count < 100; ++i, ++count) {
                    const SpacetimePoint p = random_point(5.0);
                    worst = std::max(worst, rel(synthesize_bessel_field(amp, p, nat), bessel_rs_field(s, p, nat)));
                }
            }
    while (count < 100) {
        const BesselBeamSpec s{1.0, 3.0, 3, 1};
        const SpacetimePoint p = random_point(5.0);
        worst = std::max(worst, rel(synthesize_bessel_field(BesselAmplitude::for_mode(s), p, nat), bessel_rs_field(s, p, nat)));
        ++count;
    }
    report(3, "Synthesis oracle", worst < 1e-8, fmt("max rel %.2e over %.0f points (< 1e-8)", worst, count));
}

void criterion_4() {
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double kperp = uniform(0.1, 3.0);
        const WaveVector k = WaveVector::cylindrical(kperp, uniform(0, 2 * pi), uniform(-3, 3));
        const double rho = uniform(0.0, 10.0 / kperp);
        const SpacetimePoint r = SpacetimePoint::cylindrical(rho, uniform(0, 2 * pi), uniform(-3, 3), 0.0);
        const cplx exact = std::polar(1.0, k.kx * r.x + k.ky * r.y + k.kz * r.z);
        worst = std::max(worst, std::abs(plane_wave_bessel_expansion(k, r, 40) - exact));
    }
    report(4, "Plane-wave/Bessel expansion", worst < 1e-10, fmt("max abs %.2e at |m| <= 40, k_perp rho <= 10 (< 1e-10)", worst));
}

void criterion_5() {
    double worst = 0.0;
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= 4; ++m)
            for (double a : {0.7, 1.3, 2.5})
                for (double b : {0.3, 0.8, 1.7}) {
                    auto f = [&](double x) {
                        return std::pow(x, n + 0.5 * m) * std::exp(-a * x) * specfun::bessel_j(m, 2 * b * std::sqrt(x));
                    };
                    const double p = n + 0.5 * m + 1.0;
                    const double envelope = std::tgamma(p) / std::pow(a, p);
                    const double numeric =
                        quad::integrate_semi_infinite(f, 0.0, p / a, {1e-14 * envelope, 1e-12, 4000, 8}).value;
                    const double y = b * b / a;
                    const double closed = std::tgamma(n + 1.0) * std::pow(b, m) * std::exp(-y) *
                                          specfun::laguerre(n, m, y) / std::pow(a, n + m + 1);
                    worst = std::max(worst, std::abs(numeric - closed) / std::abs(closed));
                }
    report(5, "Laguerre integral identity", worst < 1e-6, fmt("max rel %.2e over n,m <= 4 (< 1e-6)", worst));
}

void criterion_6() {
    double dal = 0.0, max = 0.0;
    for (int n = 0; n <= 2; ++n)
        for (int m = 0; m <= 2; ++m)
            for (int sigma : {1, -1}) {
                const LGBeamSpec s{10.0, n, m, 1.0, sigma};
                const FDSpec fd = FDSpec::for_scales(s.omega, s.omega);
                const ScalarWaveField chi = lg_scalar_field(s, nat, false);
                const RSField F = lg_field(s, nat);
                for (int i = 0; i < 10; ++i) {
                    const SpacetimePoint p{uniform(-1.5, 1.5), uniform(-1.5, 1.5), uniform(-1, 1), uniform(-1, 1)};
                    dal = std::max(dal, dalembert_residual(chi, p, nat, fd).relative());
                    max = std::max(max, maxwell_residual(F, p, nat, fd).relative());
                }
            }
    report(6, "Exact-LG validity", std::max(dal, max) < 1e-6,
           fmt("d'Alembert %.2e, Maxwell %.2e (< 1e-6, 4th-order FD)", dal, max));
}

void criterion_7() {
    double worst = 0.0;
    const FDSpec fd = FDSpec::uniform(1e-3);
    for (const auto& s : bessel_cases()) {
        const RSField f = bessel_field(s, nat, true);
        const RSField psi = s.sigma == 1 ? f : conjugate_as_wavefunction(f);
        std::vector<SpacetimePoint> pts;
        for (int i = 0; i < 40; ++i) pts.push_back(random_point());
        auto dev = [&](const FieldOperator& op, double expected, double scale, bool residual) {
            const EigenEstimate e = estimate_eigenvalue(op, psi, pts);
            worst = std::max(worst, std::abs(e.rayleigh - expected) / scale);
            if (residual) worst = std::max(worst, e.max_residual);
        };
        dev([&](const RSField& g, const SpacetimePoint& p) { return apply_pz(g, p, nat, fd); }, s.k_z, s.k_z, true);
        dev([&](const RSField& g, const SpacetimePoint& p) { return apply_pperp2(g, p, nat, fd); },
            s.k_perp * s.k_perp, s.k_perp * s.k_perp, true);
        dev([&](const RSField& g, const SpacetimePoint& p) { return apply_mz(g, p, nat, fd); }, s.m,
            std::max(1, s.m), s.m != 0);
        for (const auto& p : pts)
            worst = std::max(worst, norm(helicity_residual(psi, p, s.k(), s.sigma, fd)) / (s.k() * norm(psi.value(p))));
    }
    report(7, "Eigenvalue suite", worst < 1e-6, fmt("max rel %.2e for p_z, p_perp^2, M_z, helicity (< 1e-6)", worst));
}

void criterion_8() {
    double mz = 0.0, hel = 0.0, classical = 0.0;
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= 6; ++m)
            for (double omega : {5.0, 20.0, 60.0})
                for (double l : {0.5, 1.5})
                    for (int sigma : {1, -1}) {
                        const LGBeamSpec s{omega, n, m, l, sigma};
                        const auto amp = LGAmplitude::single(s, cplx(0.7, -0.4));
                        mz = std::max(mz, std::abs(expectation_mz(amp, nat) / nat.hbar - m));
                        hel = std::max(hel, std::abs(expectation_helicity(amp, nat) - sigma));
                        const auto cs = coherent_state_decompose(amp, nat);
                        const double expected = cs.mean_photon_number * nat.hbar * m;
                        classical = std::max(classical, std::abs(classical_mz(amp, nat) - expected) /
                                                            std::max(1e-300, std::abs(expected) + (m == 0)));
                    }
    report(8, "Correspondence", mz < 1e-8 && hel == 0.0 && classical < 1e-10,
           fmt("|<M_z>/hbar - m| %.2e (< 1e-8), |<L> - sigma| %.1e (exact), classical vs <N>hbar m %.2e", mz, hel,
               classical));
}

void criterion_9() {
    bool pass = true;
    double norm_dev = 0.0, peak_dev = 0.0;
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= 4; ++m) {
            const LGBeamSpec s{uniform(5, 60), n, m, uniform(0.5, 2.0), 1};
            const double W = 1.0 / (s.l * s.l * s.omega);
            pass = pass && spectral_weight(s, 0.5 * s.omega, nat) == 0.0 &&
                   spectral_weight(s, std::nextafter(s.omega, 0.0), nat) == 0.0;
            const auto r = quad::integrate([&](double w) { return spectral_weight(s, w, nat); }, s.omega,
                                           s.omega + 40.0 * W, {0.0, 1e-12, 2000, 16});
            norm_dev = std::max(norm_dev, std::abs(r.value - 1.0));
            // Brute-force argmax against the stationarity prediction.
            const int N = 20000;
            const double span = (s.weight_power() + 20.0) * W;
            double best = -1.0, arg = 0.0;
            for (int i = 0; i <= N; ++i) {
                const double a = s.omega + span * i / N;
                const double v = spectral_weight(s, a, nat);
                if (v > best) best = v, arg = a;
            }
            peak_dev = std::max(peak_dev, std::abs(arg - (s.omega + s.weight_power() * W)) / (span / N));
        }
    pass = pass && norm_dev < 1e-6 && peak_dev <= 1.0;

    const Constants si = Constants::si();
    const double Omega = 1e15, l = 1e-3, W = si.c * si.c / (l * l * Omega);
    double prev = HUGE_VAL;
    bool ordered = true, local = true;
    for (int nm : {0, 1, 2}) {
        const SpectralCurve c = spectral_curve({Omega, nm, nm, l, 1}, Omega, Omega + 60 * W, 6001, si);
        const std::size_t i = c.argmax();
        ordered = ordered && c.w[i] < prev;
        prev = c.w[i];
        local = local && c.omega[i] >= Omega && c.omega[i] <= Omega + 9.0 * W;
    }
    pass = pass && ordered && local;
    report(9, "Spectrum", pass,
           fmt("cutoff exact, |int w - 1| %.2e (< 1e-6), peak within %.2f grid steps; figure ordering and localization ",
               norm_dev, peak_dev) +
               (ordered && local ? "hold" : "violated"));
}

void criterion_10() {
    const auto& S = spin_matrices();
    double comm = 0.0;
    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3, k = (a + 2) % 3;
        const Mat3 lhs = mat_sub(mat_mul(S[a], S[b]), mat_mul(S[b], S[a]));
        comm = std::max(comm, mat_max_abs(mat_sub(lhs, mat_scale(S[k], I))));
        for (int c = 0; c < 3; ++c) comm = std::max(comm, mat_max_abs(mat_sub(mat_mul(S[c], S[c]), mat_mul(S[c], S[c]))));
    }

    double ne = 0.0, plus_i = 0.0, minus_i = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const WaveVector k{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
        const ComplexVec3 e = polarization_vector(k);
        const RealVec3 n = k.direction();
        ne = std::max(ne, norm(cross(ComplexVec3{n[0], n[1], n[2]}, e) + e * I));
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const cplx lhs = e[a] * std::conj(e[b]) - std::conj(e[a]) * e[b];
                const int c = 3 - a - b;
                const double eps = a == b ? 0.0 : ((b - a + 3) % 3 == 1 ? 1.0 : -1.0);
                const cplx en = a == b ? 0.0 : cplx(eps * n[c]);
                plus_i = std::max(plus_i, std::abs(lhs - I * en));
                minus_i = std::max(minus_i, std::abs(lhs + I * en));
            }
    }

    double closure = 0.0;
    const FDSpec inner = FDSpec::uniform(1e-4);
    FDSpec outer = inner;
    for (double& s : outer.h) s = std::sqrt(s);
    for (Gauge g : {Gauge::whittaker, Gauge::alternate})
        for (int h : {1, -1}) {
            MomentumSpaceAmplitude amp;
            amp.helicity = h;
            amp.value = [](const WaveVector& k) {
                const double dx = k.kx - 1.0, dy = k.ky - 0.5, dz = k.kz - 2.0;
                return std::exp(-(dx * dx + dy * dy + dz * dz)) * std::polar(1.0, 0.3 * k.kx - 0.7 * k.kz);
            };
            for (int t = 0; t < 5; ++t) {
                const WaveVector k{uniform(0.3, 1.7), uniform(-0.2, 1.2), uniform(1.2, 2.8)};
                const auto mx = apply_momentum_m(0, amp, g, nat, inner);
                const auto my = apply_momentum_m(1, amp, g, nat, inner);
                const double scale = std::abs(apply_momentum_m(0, my, g, nat, outer).value(k)) +
                                     std::abs(apply_momentum_m(1, mx, g, nat, outer).value(k));
                closure = std::max(closure, std::abs(momentum_commutator_residual(amp, k, g, nat, inner)) / scale);
            }
        }

    const bool rest = comm < 1e-14 && ne < 1e-12 && closure < 1e-5;
    const bool literal = plus_i < 1e-12;
    report(10, "Algebraic identities", rest && literal,
           fmt("spin %.1e (< 1e-14), n x e = -ie %.1e (< 1e-12), [M_x,M_y] = i hbar M_z %.1e (< 1e-5)", comm, ne,
               closure),
           rest);
    std::printf("             polarization identity with +i: max dev %.2e (FAIL); with -i: %.2e. The +i form contradicts\n"
                "             n x e = -i e for the same e(k); see README.md, Known deviations.\n",
                plus_i, minus_i);
    if (!rest) ++unexpected_failures;
}

void criterion_11() {
    const LGBeamSpec s{50.0, 0, 0, 1.0, 1};
    const double tau = s.l * s.l * s.omega;
    const FourierCrosscheck r = fourier_crosscheck(s, {0.0, 0.0, 0.3, 0.0}, 400 * tau, nat);
    report(11, "Fourier cross-check", r.fitted && r.shape_deviation < 0.01,
           fmt("shape deviation %.2e over the central 80%% (< 1e-2), leakage below cutoff %.1e", r.shape_deviation,
               r.leakage));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("unexpected failures: %d\n", unexpected_failures);
    return unexpected_failures == 0 ? 0 : 1;
}
