#pragma once

#include <vector>

#include "rsb/beams.hpp"
#include "rsb/quadrature.hpp"
#include "rsb/types.hpp"

namespace rsb {

/// Bessel-beam amplitude on the surface k_perp' = k_perp, k_z' = k_z. The
/// deltas are kept structural; only the smooth phi' profile is stored.
struct BesselAmplitude {
    BesselBeamSpec spec;
    cplx coefficient = 1.0;

    /// coefficient 1: the profile (-i)^m sqrt2 (2pi)^2 k e^{i m phi'} (conjugated for sigma = -1).
    /// It synthesizes sqrt2 k k_perp (-i sigma)^m times bessel_rs_field.
    static BesselAmplitude bare(const BesselBeamSpec& spec);
    /// Scaled so that the synthesis equals bessel_rs_field.
    static BesselAmplitude for_mode(const BesselBeamSpec& spec);

    /// Factor multiplying delta(k_perp' - k_perp) delta(k_z' - k_z).
    [[nodiscard]] cplx profile(double phi) const;
};

/// Plane-wave superposition of the amplitude, integrated over phi' on the delta surface.
ComplexVec3 synthesize_bessel_field(const BesselAmplitude& amp, const SpacetimePoint& p, const Constants& consts,
                                    const quad::Options& opt = {1e-14, 1e-11, 2000, 8});

/// One exact-LG component of an amplitude sharing the carrier k_+' = Omega / c.
struct LGTerm {
    int n = 0;
    int m = 0;
    double l = 1.0;
    int sigma = 1;
    cplx coefficient = 1.0;
};

/// Superposition of exact-LG amplitudes with a common carrier. A term with
/// coefficient 1 synthesizes lg_rs_field of the matching LGBeamSpec.
struct LGAmplitude {
    double omega = 10.0;
    std::vector<LGTerm> terms;

    static LGAmplitude single(const LGBeamSpec& spec, cplx coefficient = 1.0);
    void validate() const;
    [[nodiscard]] LGBeamSpec spec(const LGTerm& term) const;
    [[nodiscard]] LGAmplitude scaled(cplx factor) const;

    /// Classical amplitude f^sigma(k_-', phi') with delta(k_+' - Omega/c) consumed.
    [[nodiscard]] cplx classical(int sigma, double k_minus, double phi, const Constants& consts) const;
    /// Photon wave function: f^+ for sigma = +1, (f^-)* for sigma = -1.
    [[nodiscard]] cplx wave_function(int sigma, double k_minus, double phi, const Constants& consts) const;
};

/// int dk/omega (|psi+|^2 + |psi-|^2) per unit delta(0) in k_+.
/// The BesselAmplitude overload throws NonNormalizableError.
double photon_norm(const LGAmplitude& amp, const Constants& consts);
double photon_norm(const BesselAmplitude& amp, const Constants& consts);

/// Partial norm of one helicity.
double photon_norm(const LGAmplitude& amp, int sigma, const Constants& consts);

double expectation_mz(const LGAmplitude& amp, const Constants& consts);
double expectation_mz(const BesselAmplitude& amp, const Constants& consts);
double expectation_energy(const LGAmplitude& amp, const Constants& consts);
double expectation_pz(const LGAmplitude& amp, const Constants& consts);
/// (N+ - N-) / (N+ + N-)
double expectation_helicity(const LGAmplitude& amp, const Constants& consts);

/// int dk/omega f*(-i d_phi') f over both helicities, per unit delta(0).
double classical_mz(const LGAmplitude& amp, const Constants& consts);

struct CoherentStateData {
    double mean_photon_number = 0.0;
    LGAmplitude wave_function;  ///< classical amplitude / sqrt(hbar <N>)
    bool defined = false;       ///< false for a vanishing field
};

/// Mean photon number and normalized wave functions of the coherent state
/// built on a classical amplitude (both helicity slots).
CoherentStateData coherent_state_decompose(const LGAmplitude& classical, const Constants& consts);

/// Finite-energy packet: exact-LG beams with Omega = c K superposed over K
/// with weight exp(-(K - K0)^2 / (2 width^2)), K0 = Omega_carrier / c,
/// truncated at K0 +- 6 width.
struct LGPacket {
    LGBeamSpec carrier;
    double width = 2.0;
    int panels = 8;

    void validate(const Constants& consts) const;
    [[nodiscard]] double weight(double K, const Constants& consts) const;
};

ComplexVec3 lg_packet_field(const LGPacket& packet, const SpacetimePoint& p, const Constants& consts);

/// Momentum-space totals of the packet (coefficient-1 amplitude).
struct PacketTotals {
    double photon_number;  ///< <N>
    double energy;         ///< int |F|^2 d^3r
    double pz;             ///< classical momentum along z
    double mz;             ///< hbar m <N>
};
PacketTotals lg_packet_totals(const LGPacket& packet, const Constants& consts);

/// Position-space energy, P_z and M_z of a field whose densities do not
/// depend on the azimuth, on the cylinder rho <= rho_max, |z| <= z_max.
struct ClassicalTotals {
    double energy;
    double pz;
    double mz;
};
ClassicalTotals axisymmetric_totals(const std::function<ComplexVec3(const SpacetimePoint&)>& field, double t,
                                    double rho_max, double z_max, int rho_panels, int z_panels,
                                    const Constants& consts);

}  // namespace rsb
