#include "rsb/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rsb/errors.hpp"
#include "rsb/jet.hpp"

namespace rsb {

namespace {

constexpr double two_pi = 2.0 * pi;
const double sqrt2 = std::sqrt(2.0);

}  // namespace

BesselAmplitude BesselAmplitude::bare(const BesselBeamSpec& spec) {
    spec.validate();
    return {spec, 1.0};
}

BesselAmplitude BesselAmplitude::for_mode(const BesselBeamSpec& spec) {
    spec.validate();
    return {spec, ipow(I * double(spec.sigma), spec.m) / (sqrt2 * spec.k() * spec.k_perp)};
}

cplx BesselAmplitude::profile(double phi) const {
    const cplx plus = ipow(-I, spec.m) * (sqrt2 * two_pi * two_pi * spec.k()) * std::polar(1.0, spec.m * phi);
    return coefficient * (spec.sigma == 1 ? plus : std::conj(plus));
}

ComplexVec3 synthesize_bessel_field(const BesselAmplitude& amp, const SpacetimePoint& p, const Constants& consts,
                                    const quad::Options& opt) {
    amp.spec.validate();
    if (!p.finite()) throw DomainError("synthesize_bessel_field: non-finite point");
    const BesselBeamSpec& s = amp.spec;
    const double omega = s.omega(consts);
    // The profile has constant modulus; integrate the unit-modulus part.
    const double size = std::abs(amp.profile(0.0));
    if (size == 0.0) return {};
    auto integrand = [&](double phi) -> ComplexVec3 {
        const WaveVector k = WaveVector::cylindrical(s.k_perp, phi, s.k_z);
        const double phase = k.kx * p.x + k.ky * p.y + k.kz * p.z - omega * p.t;
        return polarization_vector(k) * (amp.profile(phi) / size * std::polar(1.0, s.sigma * phase));
    };
    const auto r = quad::integrate(integrand, 0.0, two_pi, opt);
    return r.value * (size * s.k_perp / (two_pi * two_pi * two_pi));
}

LGAmplitude LGAmplitude::single(const LGBeamSpec& spec, cplx coefficient) {
    spec.validate();
    return {spec.omega, {{spec.n, spec.m, spec.l, spec.sigma, coefficient}}};
}

void LGAmplitude::validate() const {
    for (const auto& t : terms) spec(t).validate();
    if (terms.empty()) (void)spec({});
}

LGBeamSpec LGAmplitude::spec(const LGTerm& t) const {
    LGBeamSpec s{omega, t.n, t.m, t.l, t.sigma};
    s.validate();
    return s;
}

LGAmplitude LGAmplitude::scaled(cplx factor) const {
    LGAmplitude r = *this;
    for (auto& t : r.terms) t.coefficient *= factor;
    return r;
}

namespace {

// sqrt2 (2pi)^2 sqrt(Omega k_- / c) k_-^{n+m/2} e^{-l^2 Omega k_- / c}
double lg_radial(const LGBeamSpec& s, double k_minus, const Constants& consts) {
    if (k_minus <= 0.0) return 0.0;
    const double kp = s.omega / consts.c;
    const double beta = s.l * s.l * kp;
    return sqrt2 * two_pi * two_pi * std::sqrt(kp * k_minus) *
           std::exp(s.weight_power() * std::log(k_minus) - beta * k_minus);
}

}  // namespace

cplx LGAmplitude::classical(int sigma, double k_minus, double phi, const Constants& consts) const {
    cplx sum = 0.0;
    for (const auto& t : terms) {
        if (t.sigma != sigma) continue;
        const cplx plus = ipow(-I, t.m) * std::polar(1.0, t.m * phi) * lg_radial(spec(t), k_minus, consts);
        sum += t.coefficient * (sigma == 1 ? plus : std::conj(plus));
    }
    return sum;
}

cplx LGAmplitude::wave_function(int sigma, double k_minus, double phi, const Constants& consts) const {
    const cplx f = classical(sigma, k_minus, phi, consts);
    return sigma == 1 ? f : std::conj(f);
}

namespace {

// Reduced moments of |psi|^2 over dk/omega, grouped by helicity and m.
struct Moments {
    double norm[2] = {0.0, 0.0};  // index 0: sigma = +1, 1: sigma = -1
    double mz = 0.0;              // sum m N_{sigma,m}
    double k_minus = 0.0;         // int k_- |psi|^2
};

Moments moments(const LGAmplitude& amp, const Constants& consts) {
    amp.validate();
    if (!consts.valid()) throw DomainError("momentum: invalid constants");
    // Measure dk/omega = 2 dk_+ dk_- dphi' / ((2pi)^3 c); the phi' integral gives 2pi per m.
    const double measure = 2.0 * two_pi / (two_pi * two_pi * two_pi * consts.c);
    std::map<std::pair<int, int>, std::vector<const LGTerm*>> groups;
    for (const auto& t : amp.terms) groups[{t.sigma, t.m}].push_back(&t);

    Moments out;
    for (const auto& [key, members] : groups) {
        const auto [sigma, m] = key;
        double scale = 0.0;
        for (const LGTerm* t : members) {
            const LGBeamSpec s = amp.spec(*t);
            scale = std::max(scale, (s.weight_power() + 1.0) / (s.l * s.l * s.omega / consts.c));
        }
        auto radial = [&](double km) {
            cplx r = 0.0;
            for (const LGTerm* t : members) {
                const cplx c = sigma == 1 ? t->coefficient : std::conj(t->coefficient);
                r += c * lg_radial(amp.spec(*t), km, consts);
            }
            return std::norm(r);
        };
        const quad::Options opt{0.0, 1e-13, 4000, 4};
        const double i0 = quad::integrate_semi_infinite(radial, 0.0, scale, opt).value;
        const double i1 =
            quad::integrate_semi_infinite([&](double km) { return km * radial(km); }, 0.0, scale, opt).value;
        const double n = measure * i0;
        out.norm[sigma == 1 ? 0 : 1] += n;
        out.mz += m * n;
        out.k_minus += measure * i1;
    }
    return out;
}

double total(const Moments& m) { return m.norm[0] + m.norm[1]; }

double require_norm(const Moments& m) {
    const double n = total(m);
    if (!(n > 0.0)) throw DomainError("expectation value undefined for a vanishing amplitude");
    return n;
}

}  // namespace

double photon_norm(const LGAmplitude& amp, const Constants& consts) { return total(moments(amp, consts)); }

double photon_norm(const LGAmplitude& amp, int sigma, const Constants& consts) {
    if (sigma != 1 && sigma != -1) throw DomainError("photon_norm: sigma must be +1 or -1");
    return moments(amp, consts).norm[sigma == 1 ? 0 : 1];
}

double photon_norm(const BesselAmplitude&, const Constants&) {
    throw NonNormalizableError("Bessel amplitudes are delta-normalized; the photon norm diverges");
}

double expectation_mz(const LGAmplitude& amp, const Constants& consts) {
    const Moments m = moments(amp, consts);
    return consts.hbar * m.mz / require_norm(m);
}

double expectation_mz(const BesselAmplitude& amp, const Constants& consts) { return photon_norm(amp, consts); }

double expectation_energy(const LGAmplitude& amp, const Constants& consts) {
    // hbar omega = hbar (Omega + c k_-)
    const Moments m = moments(amp, consts);
    const double n = require_norm(m);
    return consts.hbar * (amp.omega * n + consts.c * m.k_minus) / n;
}

double expectation_pz(const LGAmplitude& amp, const Constants& consts) {
    // hbar k_z = hbar (Omega / c - k_-)
    const Moments m = moments(amp, consts);
    const double n = require_norm(m);
    return consts.hbar * (amp.omega / consts.c * n - m.k_minus) / n;
}

double expectation_helicity(const LGAmplitude& amp, const Constants& consts) {
    const Moments m = moments(amp, consts);
    return (m.norm[0] - m.norm[1]) / require_norm(m);
}

double classical_mz(const LGAmplitude& amp, const Constants& consts) { return moments(amp, consts).mz; }

CoherentStateData coherent_state_decompose(const LGAmplitude& classical, const Constants& consts) {
    CoherentStateData d;
    const double n = photon_norm(classical, consts);
    d.mean_photon_number = n / consts.hbar;
    d.wave_function = classical;
    if (n > 0.0) {
        d.wave_function = classical.scaled(1.0 / std::sqrt(n));
        d.defined = true;
    }
    return d;
}

void LGPacket::validate(const Constants& consts) const {
    carrier.validate();
    if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("LGPacket: width must be positive");
    if (carrier.omega / consts.c - 6.0 * width <= 0.0)
        throw DomainError("LGPacket: window reaches K <= 0; reduce the width");
    if (panels < 1) throw DomainError("LGPacket: need at least one panel");
}

double LGPacket::weight(double K, const Constants& consts) const {
    const double d = (K - carrier.omega / consts.c) / width;
    return std::exp(-0.5 * d * d);
}

ComplexVec3 lg_packet_field(const LGPacket& packet, const SpacetimePoint& p, const Constants& consts) {
    packet.validate(consts);
    const double K0 = packet.carrier.omega / consts.c;
    auto integrand = [&](double K) {
        LGBeamSpec s = packet.carrier;
        s.omega = consts.c * K;
        return lg_rs_field(s, p, consts) * packet.weight(K, consts);
    };
    return quad::fixed_panels(integrand, K0 - 6.0 * packet.width, K0 + 6.0 * packet.width, packet.panels).value;
}

PacketTotals lg_packet_totals(const LGPacket& packet, const Constants& consts) {
    packet.validate(consts);
    const double s = packet.carrier.weight_power();
    const double l2 = packet.carrier.l * packet.carrier.l;
    const double K0 = packet.carrier.omega / consts.c;
    // G^2 K int dk_- k_-^{2s+1+j} e^{-2 l^2 K k_-}, j = 0, 1
    auto moment = [&](int j) {
        auto f = [&](double K) {
            const double g = packet.weight(K, consts);
            const double p = 2.0 * s + 2.0 + j;
            return g * g * K * std::exp(std::lgamma(p) - p * std::log(2.0 * l2 * K));
        };
        return quad::integrate(f, K0 - 6.0 * packet.width, K0 + 6.0 * packet.width, {0.0, 1e-13, 2000, 8}).value;
    };
    auto moment_k = [&] {
        auto f = [&](double K) {
            const double g = packet.weight(K, consts);
            const double p = 2.0 * s + 2.0;
            return g * g * K * K * std::exp(std::lgamma(p) - p * std::log(2.0 * l2 * K));
        };
        return quad::integrate(f, K0 - 6.0 * packet.width, K0 + 6.0 * packet.width, {0.0, 1e-13, 2000, 8}).value;
    };
    const double c16 = 16.0 * pi * pi;
    const double i0 = moment(0), i1 = moment(1), ik = moment_k();
    PacketTotals t;
    t.photon_number = c16 / consts.c * i0 / consts.hbar;
    t.energy = c16 * (ik + i1);
    t.pz = c16 / consts.c * (ik - i1);
    t.mz = consts.hbar * packet.carrier.m * t.photon_number;
    return t;
}

ClassicalTotals axisymmetric_totals(const std::function<ComplexVec3(const SpacetimePoint&)>& field, double t,
                                    double rho_max, double z_max, int rho_panels, int z_panels,
                                    const Constants& consts) {
    // (energy, P_z, M_z) densities
    auto ring = [&](double rho) {
        auto line = [&](double z) {
            const ComplexVec3 F = field({rho, 0.0, z, t});
            const RealVec3 P = momentum_density(F, consts);
            return RealVec3{energy_density(F), P[2], rho * P[1]};
        };
        return quad::fixed_panels(line, -z_max, z_max, z_panels).value * (two_pi * rho);
    };
    const RealVec3 d = quad::fixed_panels(ring, 0.0, rho_max, rho_panels).value;
    return {d[0], d[1], d[2]};
}

}  // namespace rsb
