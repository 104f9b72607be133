#include "rsb/beams.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "rsb/errors.hpp"
#include "rsb/specfun.hpp"

namespace rsb {
namespace {

void check_sigma(int sigma, const char* who) {
    if (sigma != 1 && sigma != -1) throw DomainError(std::string(who) + ": sigma must be +1 or -1");
}

cplx i_power(int m) {
    switch (((m % 4) + 4) % 4) {
        case 0: return 1.0;
        case 1: return I;
        case 2: return -1.0;
        default: return -I;
    }
}

// Linear combination of cylindrical harmonics T_q = e^{i s q phi} J_q(kp rho).
// Cartesian derivatives map harmonics to their neighbours:
//   d/dx T_q = kp/2 (T_{q-1} - T_{q+1}),  d/dy T_q = i s kp/2 (T_{q+1} + T_{q-1}).
struct HarmonicSum {
    int s;
    double kp;
    std::vector<std::pair<int, cplx>> terms;

    [[nodiscard]] HarmonicSum dx() const {
        HarmonicSum r{s, kp, {}};
        for (auto [q, c] : terms) {
            r.terms.emplace_back(q - 1, 0.5 * kp * c);
            r.terms.emplace_back(q + 1, -0.5 * kp * c);
        }
        return r;
    }
    [[nodiscard]] HarmonicSum dy() const {
        HarmonicSum r{s, kp, {}};
        const cplx f = I * double(s) * 0.5 * kp;
        for (auto [q, c] : terms) {
            r.terms.emplace_back(q + 1, f * c);
            r.terms.emplace_back(q - 1, f * c);
        }
        return r;
    }
    [[nodiscard]] cplx operator()(double rho, double phi) const {
        cplx sum = 0.0;
        for (auto [q, c] : terms)
            sum += c * std::polar(1.0, s * q * phi) * specfun::bessel_j(q, kp * rho);
        return sum;
    }
};

// Common prefactor and phase e^{-i s (omega t - k_z z)}.
cplx axial_phase(const BesselBeamSpec& spec, const SpacetimePoint& p, const Constants& c) {
    return std::polar(1.0, -spec.sigma * (spec.omega(c) * p.t - spec.k_z * p.z));
}

std::array<HarmonicSum, 3> bessel_field_harmonics(const BesselBeamSpec& spec) {
    const int s = spec.sigma;
    const double kp = spec.k_perp;
    const cplx pref = ipow(I * double(s), spec.m) / (std::sqrt(2.0) * spec.k());
    const double km = spec.k_minus(), kpl = spec.k_plus();
    const cplx is = I * double(s);
    HarmonicSum fx{s, kp, {{spec.m + 1, pref * is * km}, {spec.m - 1, pref * is * kpl}}};
    HarmonicSum fy{s, kp, {{spec.m + 1, pref * km}, {spec.m - 1, -pref * kpl}}};
    HarmonicSum fz{s, kp, {{spec.m, pref * kp}}};
    return {fx, fy, fz};
}

template <class T>
T power(const T& base, int p) {
    if constexpr (std::is_same_v<T, Jet>)
        return pow(base, p);
    else
        return ipow(base, p);
}

template <class T>
T near_axis_generic(double k_z, int m, int sigma, const T& x, const T& y, const T& z, const T& t,
                    const Constants& c) {
    using std::exp;
    const double k = std::abs(k_z);
    const cplx pref = ipow(I * double(sigma), m) / (std::sqrt(2.0) * k * std::ldexp(1.0, m) * std::tgamma(m + 1.0));
    const T phase = exp(T(-I * double(sigma)) * (T(k * c.c) * t - T(k_z) * z));
    return T(pref) * phase * power(x + T(I * double(sigma)) * y, m);
}

template <class T>
T lg_generic(const LGBeamSpec& spec, const T& x, const T& y, const T& z, const T& t, const Constants& c) {
    using std::exp;
    const double s = spec.sigma;
    const T t_plus = t + z * T(1.0 / c.c);
    const T t_minus = t - z * T(1.0 / c.c);
    const T a = T(spec.l * spec.l) + T(I * s * c.c * c.c / spec.omega) * t_plus;
    const T u = x + T(I * s) * y;  // rho e^{i s phi}
    const T q = (x * x + y * y) / a;
    const T carrier = exp(T(-I * s * spec.omega) * t_minus);
    return T(spec.amplitude_constant(c)) * carrier * power(u, spec.m) * power(a, -(spec.n + spec.m + 1)) *
           exp(-q) * specfun::laguerre_recurrence(spec.n, spec.m, q);
}

std::array<Jet, 4> seeds(const SpacetimePoint& p) {
    return {Jet::variable(0, p.x), Jet::variable(1, p.y), Jet::variable(2, p.z), Jet::variable(3, p.t)};
}

}  // namespace

ComplexVec3 polarization_vector(const WaveVector& kv) {
    const double kp = kv.k_perp();
    const double k = kv.k();
    if (!(kp > 0.0))
        throw SingularDirectionError("polarization_vector: k_perp = 0, the normalization diverges on the z axis");
    const double N = 1.0 / (std::sqrt(2.0) * k * kp);
    return ComplexVec3{cplx(-kv.kx * kv.kz, k * kv.ky), cplx(-kv.ky * kv.kz, -k * kv.kx), cplx(kp * kp, 0.0)} * N;
}

void BesselBeamSpec::validate() const {
    if (!(k_perp > 0.0) || !std::isfinite(k_perp)) throw DomainError("BesselBeamSpec: k_perp must be > 0");
    if (!std::isfinite(k_z)) throw DomainError("BesselBeamSpec: k_z must be finite");
    check_sigma(sigma, "BesselBeamSpec");
}

cplx bessel_chi(const BesselBeamSpec& spec, const SpacetimePoint& p, const Constants& consts) {
    spec.validate();
    const double s = spec.sigma;
    const cplx pref = ipow(I * s, spec.m) / (std::sqrt(2.0) * spec.k() * spec.k_perp);
    const double phase = -s * (spec.omega(consts) * p.t - spec.k_z * p.z - spec.m * p.phi());
    return pref * std::polar(1.0, phase) * specfun::bessel_j(spec.m, spec.k_perp * p.rho());
}

Jet bessel_chi_jet(const BesselBeamSpec& spec, const SpacetimePoint& p, const Constants& consts) {
    spec.validate();
    const double s = spec.sigma;
    const cplx pref = ipow(I * s, spec.m) / (std::sqrt(2.0) * spec.k() * spec.k_perp);
    const HarmonicSum base{spec.sigma, spec.k_perp, {{spec.m, pref}}};
    const cplx P = axial_phase(spec, p, consts);
    // d/dz and d/dt act on the axial phase only.
    const cplx gz = I * s * spec.k_z;
    const cplx gt = -I * s * spec.omega(consts);
    const double rho = p.rho(), phi = p.phi();

    const HarmonicSum bx = base.dx(), by = base.dy();
    const cplx v = base(rho, phi), vx = bx(rho, phi), vy = by(rho, phi);
    const cplx vxx = bx.dx()(rho, phi), vxy = bx.dy()(rho, phi), vyy = by.dy()(rho, phi);

    std::array<cplx, 4> grad{vx * P, vy * P, gz * v * P, gt * v * P};
    std::array<std::array<cplx, 4>, 4> hess{};
    const std::array<cplx, 2> tr{vx, vy};
    hess[0][0] = vxx * P;
    hess[0][1] = hess[1][0] = vxy * P;
    hess[1][1] = vyy * P;
    for (int i = 0; i < 2; ++i) {
        hess[i][2] = hess[2][i] = gz * tr[i] * P;
        hess[i][3] = hess[3][i] = gt * tr[i] * P;
    }
    hess[2][2] = gz * gz * v * P;
    hess[3][3] = gt * gt * v * P;
    hess[2][3] = hess[3][2] = gz * gt * v * P;
    return Jet::from_parts(v * P, grad, hess);
}

ComplexVec3 cylindrical_to_cartesian(const ComplexVec3& cyl, double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    return {c * cyl[0] - s * cyl[1], s * cyl[0] + c * cyl[1], cyl[2]};
}

ComplexVec3 bessel_rs_field(const BesselBeamSpec& spec, const SpacetimePoint& p, const Constants& consts,
                            Basis basis) {
    spec.validate();
    const double s = spec.sigma;
    const int m = spec.m;
    const double k = spec.k();
    const double rho = p.rho(), phi = p.phi();
    const double xi = spec.k_perp * rho;
    const cplx front = ipow(I * s, m) / (std::sqrt(2.0) * k) *
                       std::polar(1.0, -s * (spec.omega(consts) * p.t - spec.k_z * p.z - m * phi));
    const double jm = specfun::bessel_j(m, xi);

    if (basis == Basis::cylindrical) {
        if (rho == 0.0) throw OnAxisBasisError("bessel_rs_field: cylindrical components are undefined at rho = 0");
        const double jp = specfun::bessel_j_prime(m, xi);
        const cplx f_rho = I * s * spec.k_z * jp + I * k * double(m) * jm / xi;
        const cplx f_phi = -s * k * jp - spec.k_z * double(m) * jm / xi;
        return ComplexVec3{f_rho, f_phi, cplx(spec.k_perp * jm)} * front;
    }

    const double jup = specfun::bessel_j(m + 1, xi), jdown = specfun::bessel_j(m - 1, xi);
    const cplx up = std::polar(1.0, s * phi), down = std::polar(1.0, -s * phi);
    const double km = spec.k_minus(), kpl = spec.k_plus();
    const cplx is = I * s;
    return ComplexVec3{is * km * up * jup + is * kpl * down * jdown, km * up * jup - kpl * down * jdown,
                       cplx(spec.k_perp * jm)} *
           front;
}

FieldJacobian bessel_rs_jacobian(const BesselBeamSpec& spec, const SpacetimePoint& p, const Constants& consts) {
    spec.validate();
    const double s = spec.sigma;
    const auto comps = bessel_field_harmonics(spec);
    const cplx P = axial_phase(spec, p, consts);
    const double rho = p.rho(), phi = p.phi();
    const cplx gz = I * s * spec.k_z;
    const cplx gt = -I * s * spec.omega(consts);
    FieldJacobian j;
    for (std::size_t c = 0; c < 3; ++c) {
        const cplx v = comps[c](rho, phi) * P;
        j.value[c] = v;
        j.d[0][c] = comps[c].dx()(rho, phi) * P;
        j.d[1][c] = comps[c].dy()(rho, phi) * P;
        j.d[2][c] = gz * v;
        j.d[3][c] = gt * v;
    }
    return j;
}

ScalarWaveField bessel_scalar_field(const BesselBeamSpec& spec, const Constants& consts, bool analytic_derivatives) {
    spec.validate();
    ScalarWaveField f;
    f.value = [spec, consts](const SpacetimePoint& p) { return bessel_chi(spec, p, consts); };
    if (analytic_derivatives)
        f.derivatives = [spec, consts](const SpacetimePoint& p) { return bessel_chi_jet(spec, p, consts); };
    f.label = "bessel";
    return f;
}

RSField bessel_field(const BesselBeamSpec& spec, const Constants& consts, bool analytic_jacobian) {
    spec.validate();
    RSField f;
    f.value = [spec, consts](const SpacetimePoint& p) { return bessel_rs_field(spec, p, consts); };
    if (analytic_jacobian)
        f.jacobian = [spec, consts](const SpacetimePoint& p) { return bessel_rs_jacobian(spec, p, consts); };
    f.label = "bessel";
    return f;
}

cplx bessel_near_axis_chi(double k_z, int m, int sigma, const SpacetimePoint& p, const Constants& consts) {
    if (m < 1) throw DomainError("bessel_near_axis_chi: m must be >= 1");
    if (!(k_z != 0.0) || !std::isfinite(k_z)) throw DomainError("bessel_near_axis_chi: k_z must be finite and nonzero");
    check_sigma(sigma, "bessel_near_axis_chi");
    return near_axis_generic<cplx>(k_z, m, sigma, p.x, p.y, p.z, p.t, consts);
}

Jet bessel_near_axis_chi_jet(double k_z, int m, int sigma, const SpacetimePoint& p, const Constants& consts) {
    if (m < 1) throw DomainError("bessel_near_axis_chi: m must be >= 1");
    if (!(k_z != 0.0) || !std::isfinite(k_z)) throw DomainError("bessel_near_axis_chi: k_z must be finite and nonzero");
    check_sigma(sigma, "bessel_near_axis_chi");
    const auto v = seeds(p);
    return near_axis_generic<Jet>(k_z, m, sigma, v[0], v[1], v[2], v[3], consts);
}

ScalarWaveField near_axis_scalar_field(double k_z, int m, int sigma, const Constants& consts,
                                       bool analytic_derivatives) {
    bessel_near_axis_chi(k_z, m, sigma, {}, consts);  // validates
    ScalarWaveField f;
    f.value = [=](const SpacetimePoint& p) { return bessel_near_axis_chi(k_z, m, sigma, p, consts); };
    if (analytic_derivatives)
        f.derivatives = [=](const SpacetimePoint& p) { return bessel_near_axis_chi_jet(k_z, m, sigma, p, consts); };
    f.label = "near_axis";
    return f;
}

cplx plane_wave_bessel_expansion(const WaveVector& k, const SpacetimePoint& r, int order) {
    const double xi = k.k_perp() * r.rho();
    const double dphi = r.phi() - k.azimuth();
    cplx sum = 0.0;
    for (int m = -order; m <= order; ++m) sum += i_power(m) * std::polar(1.0, m * dphi) * specfun::bessel_j(m, xi);
    return std::polar(1.0, k.kz * r.z) * sum;
}

void LGBeamSpec::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("LGBeamSpec: Omega must be > 0");
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("LGBeamSpec: l must be > 0");
    if (m < 0) throw DomainError("LGBeamSpec: m must be >= 0 for exact LG beams");
    specfun::check_laguerre_indices(n, m);
    check_sigma(sigma, "LGBeamSpec");
}

double LGBeamSpec::amplitude_constant(const Constants& c) const {
    return std::tgamma(n + 1.0) * std::pow(c.c / omega, weight_power() + 1.0);
}

cplx lg_chi(const LGBeamSpec& spec, const SpacetimePoint& p, const Constants& consts) {
    spec.validate();
    return lg_generic<cplx>(spec, p.x, p.y, p.z, p.t, consts);
}

Jet lg_chi_jet(const LGBeamSpec& spec, const SpacetimePoint& p, const Constants& consts) {
    spec.validate();
    const auto v = seeds(p);
    return lg_generic<Jet>(spec, v[0], v[1], v[2], v[3], consts);
}

ComplexVec3 lg_rs_field(const LGBeamSpec& spec, const SpacetimePoint& p, const Constants& consts) {
    return whittaker_from_jet(lg_chi_jet(spec, p, consts), consts);
}

ScalarWaveField lg_scalar_field(const LGBeamSpec& spec, const Constants& consts, bool analytic_derivatives) {
    spec.validate();
    ScalarWaveField f;
    f.value = [spec, consts](const SpacetimePoint& p) { return lg_chi(spec, p, consts); };
    if (analytic_derivatives)
        f.derivatives = [spec, consts](const SpacetimePoint& p) { return lg_chi_jet(spec, p, consts); };
    f.label = "lg";
    return f;
}

RSField lg_field(const LGBeamSpec& spec, const Constants& consts) {
    spec.validate();
    RSField f;
    f.value = [spec, consts](const SpacetimePoint& p) { return lg_rs_field(spec, p, consts); };
    f.label = "lg";
    return f;
}

}  // namespace rsb
