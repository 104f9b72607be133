#pragma once

#include "rsb/fields.hpp"
#include "rsb/jet.hpp"
#include "rsb/types.hpp"

namespace rsb {

struct WaveVector {
    double kx = 0, ky = 0, kz = 0;

    [[nodiscard]] double k() const { return std::sqrt(kx * kx + ky * ky + kz * kz); }
    [[nodiscard]] double k_perp() const { return std::hypot(kx, ky); }
    [[nodiscard]] double azimuth() const { return std::atan2(ky, kx); }
    [[nodiscard]] RealVec3 direction() const {
        const double n = k();
        return {kx / n, ky / n, kz / n};
    }
    static WaveVector cylindrical(double k_perp, double azimuth, double kz) {
        return {k_perp * std::cos(azimuth), k_perp * std::sin(azimuth), kz};
    }
};

/// Unit polarization vector of the Whittaker gauge, solving n x e = -i e.
/// Throws SingularDirectionError when k_perp = 0.
ComplexVec3 polarization_vector(const WaveVector& k);

/// Monochromatic Bessel beam labelled by (k_perp, k_z, m, sigma).
struct BesselBeamSpec {
    double k_perp = 1.0;
    double k_z = 1.0;
    int m = 0;
    int sigma = 1;

    void validate() const;
    [[nodiscard]] double k() const { return std::hypot(k_z, k_perp); }
    [[nodiscard]] double omega(const Constants& c) const { return c.c * k(); }
    /// k_+(sigma) = (sigma k + k_z) / 2
    [[nodiscard]] double k_plus() const { return 0.5 * (sigma * k() + k_z); }
    /// k_-(sigma) = (sigma k - k_z) / 2
    [[nodiscard]] double k_minus() const { return 0.5 * (sigma * k() - k_z); }
};

enum class Basis { cartesian, cylindrical };

cplx bessel_chi(const BesselBeamSpec& spec, const SpacetimePoint& p, const Constants& consts);
/// chi with its exact first and second derivatives.
Jet bessel_chi_jet(const BesselBeamSpec& spec, const SpacetimePoint& p, const Constants& consts);

/// Closed-form RS field. Cylindrical components (F_rho, F_phi, F_z) throw
/// OnAxisBasisError at rho = 0.
ComplexVec3 bessel_rs_field(const BesselBeamSpec& spec, const SpacetimePoint& p, const Constants& consts,
                            Basis basis = Basis::cartesian);
/// Exact first derivatives of the Cartesian closed-form field.
FieldJacobian bessel_rs_jacobian(const BesselBeamSpec& spec, const SpacetimePoint& p, const Constants& consts);

ScalarWaveField bessel_scalar_field(const BesselBeamSpec& spec, const Constants& consts,
                                    bool analytic_derivatives = true);
RSField bessel_field(const BesselBeamSpec& spec, const Constants& consts, bool analytic_jacobian = true);

/// Rotates (F_rho, F_phi, F_z) at azimuth phi into Cartesian components.
ComplexVec3 cylindrical_to_cartesian(const ComplexVec3& cyl, double phi);

/// k_perp -> 0 limit of chi / k_perp^(m-1); m >= 1, k = |k_z|.
cplx bessel_near_axis_chi(double k_z, int m, int sigma, const SpacetimePoint& p, const Constants& consts);
Jet bessel_near_axis_chi_jet(double k_z, int m, int sigma, const SpacetimePoint& p, const Constants& consts);
ScalarWaveField near_axis_scalar_field(double k_z, int m, int sigma, const Constants& consts,
                                       bool analytic_derivatives = true);

/// Truncated expansion e^{i k.r} ~ e^{i k_z z} sum_{|m|<=order} i^m e^{i m (phi - phi_k)} J_m(k_perp rho).
cplx plane_wave_bessel_expansion(const WaveVector& k, const SpacetimePoint& r, int order);

/// Exact (non-paraxial) Laguerre-Gauss beam.
struct LGBeamSpec {
    double omega = 10.0;  ///< carrier Omega
    int n = 0;
    int m = 0;
    double l = 1.0;       ///< waist length
    int sigma = 1;

    void validate() const;
    /// s = n + m/2, the power of k_- in the spectral weight.
    [[nodiscard]] double weight_power() const { return n + 0.5 * m; }
    /// A = n! (c / Omega)^{n + m/2 + 1}
    [[nodiscard]] double amplitude_constant(const Constants& c) const;
    /// l^2 Omega / c^2, the modulation time of the envelope.
    [[nodiscard]] double modulation_time(const Constants& c) const { return l * l * omega / (c.c * c.c); }
};

cplx lg_chi(const LGBeamSpec& spec, const SpacetimePoint& p, const Constants& consts);
Jet lg_chi_jet(const LGBeamSpec& spec, const SpacetimePoint& p, const Constants& consts);
/// Whittaker map of lg_chi evaluated with exact derivatives.
ComplexVec3 lg_rs_field(const LGBeamSpec& spec, const SpacetimePoint& p, const Constants& consts);

ScalarWaveField lg_scalar_field(const LGBeamSpec& spec, const Constants& consts, bool analytic_derivatives = true);
RSField lg_field(const LGBeamSpec& spec, const Constants& consts);

}  // namespace rsb
