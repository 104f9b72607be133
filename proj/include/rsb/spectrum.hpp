#pragma once

// Temporal spectrum of exact LG beams. Each frequency |omega| >= Omega maps
// to one Bessel mode; the weight over frequency is
//   w(omega) = C theta(|omega| - Omega) k_-^{n+m/2} exp(-l^2 Omega k_- / c),
// normalized numerically so that int w domega = 1.

#include <vector>

#include "rsb/beams.hpp"
#include "rsb/types.hpp"

namespace rsb {

/// Bessel-mode parameters carried by frequency omega (sign ignored).
struct SpectralMap {
    double k_z;
    double k_perp;
    double k_minus;
};
SpectralMap spectral_parameters(const LGBeamSpec& spec, double omega, const Constants& consts);

/// C making int w domega = 1, by quadrature.
double spectral_normalization(const LGBeamSpec& spec, const Constants& consts);

struct SpectralSample {
    double value = 0.0;
    bool sign_mismatch = false;  ///< sign(omega) differs from sigma; value is 0
};

double spectral_weight(const LGBeamSpec& spec, double omega, const Constants& consts);
SpectralSample spectral_weight_sample(const LGBeamSpec& spec, double omega, const Constants& consts);

struct SpectralPeak {
    double omega;  ///< signed, sigma |omega|
    double value;
};
/// Golden-section maximization of ln w above the cutoff.
SpectralPeak spectral_peak(const LGBeamSpec& spec, const Constants& consts, double rel_tol = 1e-10);

struct SpectralCurve {
    std::vector<double> omega;  ///< signed, sigma |omega|
    std::vector<double> w;
    LGBeamSpec spec;
    double normalization = 0.0;

    /// Trapezoid rule over the samples.
    [[nodiscard]] double integral() const;
    [[nodiscard]] std::size_t argmax() const;
};

/// count uniform samples of |omega| in [abs_lo, abs_hi], 0 < abs_lo < abs_hi.
SpectralCurve spectral_curve(const LGBeamSpec& spec, double abs_lo, double abs_hi, int count,
                             const Constants& consts);

/// Central band of the weight: |omega| between the lo and hi quantiles.
std::pair<double, double> spectral_band(const LGBeamSpec& spec, const Constants& consts, double lo = 0.1,
                                        double hi = 0.9);

struct FourierOptions {
    int count = 241;        ///< omega samples
    double below = 4.0;     ///< grid starts at Omega - below / tau
    double above = 0.0;     ///< grid ends at Omega + above / tau; 0 picks from n, m
    double band_lo = 0.1;   ///< quantiles bounding the compared band
    double band_hi = 0.9;
};

/// Hann-windowed transform (1/2pi) int chi(t) e^{i omega t} dt over [-T/2, T/2]
/// at a fixed point, against |w(omega) J_m(k_perp(omega) rho)|.
struct FourierCrosscheck {
    std::vector<double> omega;     ///< signed
    std::vector<cplx> transform;
    std::vector<double> model;     ///< |w J_m| with the numeric C
    double scale = 0.0;            ///< least-squares |transform| / model over the band
    double band_lo = 0.0;          ///< |omega| bounds of the compared band
    double band_hi = 0.0;
    double shape_deviation = 0.0;  ///< max | |transform| / (scale model) - 1 | in the band
    double peak = 0.0;             ///< max |transform|
    double leakage = 0.0;          ///< max |transform| / peak below the cutoff guard
    double guard = 0.0;            ///< |omega| < Omega - guard counts as below cutoff
    bool fitted = false;           ///< false when the model vanishes (J_m(0) = 0)
};

/// T is the window length. Throws InsufficientResolutionError when
/// T c^2 / (l^2 Omega) < 10.
FourierCrosscheck fourier_crosscheck(const LGBeamSpec& spec, const SpacetimePoint& p, double T,
                                     const Constants& consts, const FourierOptions& opt = {});

}  // namespace rsb
