#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rsb/beams.hpp"
#include "rsb/fields.hpp"
#include "rsb/types.hpp"

namespace rsb {

using Mat3 = std::array<std::array<cplx, 3>, 3>;

Mat3 mat_mul(const Mat3& a, const Mat3& b);
Mat3 mat_sub(const Mat3& a, const Mat3& b);
Mat3 mat_scale(const Mat3& a, cplx s);
ComplexVec3 mat_apply(const Mat3& a, const ComplexVec3& v);
double mat_max_abs(const Mat3& a);

/// Spin-one matrices, (s_i)_jk = -i eps_ijk.
struct Spin1Matrices {
    std::array<Mat3, 3> s;

    [[nodiscard]] const Mat3& operator[](int i) const { return s[i]; }
    /// s . n
    [[nodiscard]] Mat3 along(const RealVec3& n) const;
};

const Spin1Matrices& spin_matrices();

/// -i (s . grad) F, which equals curl F.
ComplexVec3 curl_via_spin(const RSField& f, const SpacetimePoint& p, const FDSpec& fd);

/// -i hbar dF/dz
ComplexVec3 apply_pz(const RSField& f, const SpacetimePoint& p, const Constants& consts, const FDSpec& fd);
/// -hbar^2 (d_x^2 + d_y^2) F. With an exact jacobian only the outer derivative is differenced.
ComplexVec3 apply_pperp2(const RSField& f, const SpacetimePoint& p, const Constants& consts, const FDSpec& fd);
/// -i hbar (x d_y - y d_x) F + hbar s_z F
ComplexVec3 apply_mz(const RSField& f, const SpacetimePoint& p, const Constants& consts, const FDSpec& fd);
/// curl F - sigma k F. Throws DomainError unless k > 0 and sigma = +-1.
ComplexVec3 helicity_residual(const RSField& f, const SpacetimePoint& p, double k, int sigma, const FDSpec& fd);

/// Photon wave function of a negative-frequency mode: the complex conjugate field.
RSField conjugate_as_wavefunction(const RSField& f);

using FieldOperator = std::function<ComplexVec3(const RSField&, const SpacetimePoint&)>;

struct EigenEstimate {
    cplx rayleigh;                 ///< sum <F, OF> / sum <F, F>
    std::vector<cplx> pointwise;   ///< <F, OF> / <F, F> per sample
    std::vector<bool> flagged;     ///< |F| below 1e-10 of the largest sample
    double max_residual = 0.0;     ///< max |OF - rayleigh F| / (|rayleigh| |F|) over unflagged samples
};

EigenEstimate estimate_eigenvalue(const FieldOperator& op, const RSField& f, const std::vector<SpacetimePoint>& points);

enum class Gauge { whittaker, alternate };

/// Photon wave function psi(k) of helicity +-1 in momentum representation.
struct MomentumSpaceAmplitude {
    std::function<cplx(const WaveVector&)> value;
    int helicity = 1;
    std::string label;
};

/// -i hbar (k x d_k)_z psi, plus hbar (+-1) psi in the alternate gauge.
cplx momentum_mz(const MomentumSpaceAmplitude& amp, const WaveVector& k, Gauge gauge, const Constants& consts,
                 const FDSpec& fd);
/// (M_x psi, M_y psi). Throws SingularDirectionError on the axis (Whittaker gauge)
/// or on the backward axis k_z = -k (alternate gauge).
std::pair<cplx, cplx> momentum_mx_my(const MomentumSpaceAmplitude& amp, const WaveVector& k, Gauge gauge,
                                     const Constants& consts, const FDSpec& fd);

/// M_axis psi as a new amplitude, for composing operators.
MomentumSpaceAmplitude apply_momentum_m(int axis, const MomentumSpaceAmplitude& amp, Gauge gauge,
                                        const Constants& consts, const FDSpec& fd);

/// ([M_x, M_y] - i hbar M_z) psi. The outer derivatives use steps sqrt(h_inner).
cplx momentum_commutator_residual(const MomentumSpaceAmplitude& amp, const WaveVector& k, Gauge gauge,
                                  const Constants& consts, const FDSpec& inner);

/// (k . M psi) / (hbar k)
cplx momentum_helicity(const MomentumSpaceAmplitude& amp, const WaveVector& k, Gauge gauge, const Constants& consts,
                       const FDSpec& fd);

}  // namespace rsb
