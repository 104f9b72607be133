#include "rsb/operators.hpp"

#include <algorithm>
#include <cmath>

#include "rsb/errors.hpp"

namespace rsb {

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

Mat3 mat_sub(const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

Mat3 mat_scale(const Mat3& a, cplx s) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] * s;
    return r;
}

ComplexVec3 mat_apply(const Mat3& a, const ComplexVec3& v) {
    ComplexVec3 r;
    for (int i = 0; i < 3; ++i) r[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
    return r;
}

double mat_max_abs(const Mat3& a) {
    double m = 0.0;
    for (const auto& row : a)
        for (cplx x : row) m = std::max(m, std::abs(x));
    return m;
}

Mat3 Spin1Matrices::along(const RealVec3& n) const {
    Mat3 r{};
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i][j] += n[a] * s[a][i][j];
    return r;
}

const Spin1Matrices& spin_matrices() {
    static const Spin1Matrices m = [] {
        Spin1Matrices r{};
        for (int a = 0; a < 3; ++a)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    const int eps = (a - j) * (j - k) * (k - a) / 2;
                    r.s[a][j][k] = cplx(0.0, -double(eps));
                }
        return r;
    }();
    return m;
}

ComplexVec3 curl_via_spin(const RSField& f, const SpacetimePoint& p, const FDSpec& fd) {
    const FieldJacobian j = field_jacobian(f, p, fd);
    const Spin1Matrices& s = spin_matrices();
    ComplexVec3 r;
    for (int a = 0; a < 3; ++a) r = r + mat_apply(s[a], j.d[a]);
    return r * (-I);
}

ComplexVec3 apply_pz(const RSField& f, const SpacetimePoint& p, const Constants& consts, const FDSpec& fd) {
    return field_jacobian(f, p, fd).d[2] * (-I * consts.hbar);
}

ComplexVec3 apply_pperp2(const RSField& f, const SpacetimePoint& p, const Constants& consts, const FDSpec& fd) {
    fd.validate();
    ComplexVec3 lap;
    for (int axis = 0; axis < 2; ++axis) {
        if (f.has_jacobian()) {
            auto first = [&](const SpacetimePoint& q) { return f.jacobian(q).d[axis]; };
            lap = lap + fd_first<ComplexVec3>(first, p, axis, fd);
        } else {
            lap = lap + fd_second<ComplexVec3>(f.value, p, axis, axis, fd);
        }
    }
    if (!finite(lap)) throw EvaluationError("apply_pperp2: non-finite field samples");
    return lap * (-consts.hbar * consts.hbar);
}

ComplexVec3 apply_mz(const RSField& f, const SpacetimePoint& p, const Constants& consts, const FDSpec& fd) {
    const FieldJacobian j = field_jacobian(f, p, fd);
    const ComplexVec3 orbital = (j.d[1] * p.x - j.d[0] * p.y) * (-I);
    return (orbital + mat_apply(spin_matrices()[2], j.value)) * consts.hbar;
}

ComplexVec3 helicity_residual(const RSField& f, const SpacetimePoint& p, double k, int sigma, const FDSpec& fd) {
    if (!(k > 0) || !std::isfinite(k)) throw DomainError("helicity_residual: k must be positive");
    if (sigma != 1 && sigma != -1) throw DomainError("helicity_residual: sigma must be +1 or -1");
    const FieldJacobian j = field_jacobian(f, p, fd);
    return curl(j) - j.value * (sigma * k);
}

RSField conjugate_as_wavefunction(const RSField& f) {
    RSField r;
    r.label = f.label.empty() ? "conjugate" : "conj(" + f.label + ")";
    r.value = [v = f.value](const SpacetimePoint& p) { return conj(v(p)); };
    if (f.has_jacobian())
        r.jacobian = [jf = f.jacobian](const SpacetimePoint& p) {
            FieldJacobian j = jf(p);
            j.value = conj(j.value);
            for (auto& d : j.d) d = conj(d);
            return j;
        };
    return r;
}

EigenEstimate estimate_eigenvalue(const FieldOperator& op, const RSField& f, const std::vector<SpacetimePoint>& points) {
    EigenEstimate e;
    if (points.empty()) throw DomainError("estimate_eigenvalue: no sample points");
    std::vector<ComplexVec3> F, OF;
    double scale = 0.0;
    for (const auto& p : points) {
        F.push_back(f.value(p));
        OF.push_back(op(f, p));
        if (!finite(F.back()) || !finite(OF.back())) throw EvaluationError("estimate_eigenvalue: non-finite sample");
        scale = std::max(scale, norm(F.back()));
    }
    cplx num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) {
        const double ff = std::real(inner(F[i], F[i]));
        const cplx fo = inner(F[i], OF[i]);
        num += fo;
        den += ff;
        const bool small = norm(F[i]) < 1e-10 * scale;
        e.flagged.push_back(small);
        e.pointwise.push_back(small ? cplx(NAN, NAN) : fo / ff);
    }
    if (den == 0.0) throw EvaluationError("estimate_eigenvalue: field vanishes at every sample");
    e.rayleigh = num / den;
    const double lam = std::abs(e.rayleigh);
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (e.flagged[i]) continue;
        const double denom = (lam > 0 ? lam : 1.0) * norm(F[i]);
        e.max_residual = std::max(e.max_residual, norm(OF[i] - F[i] * e.rayleigh) / denom);
    }
    return e;
}

namespace {

void check_helicity(const MomentumSpaceAmplitude& amp) {
    if (!amp.value) throw DomainError("momentum operator: amplitude has no evaluator");
    if (amp.helicity != 1 && amp.helicity != -1) throw DomainError("momentum operator: helicity tag must be +1 or -1");
}

// Gradient of psi in k through the spacetime FD machinery (t unused).
std::array<cplx, 3> k_gradient(const MomentumSpaceAmplitude& amp, const WaveVector& k, const FDSpec& fd) {
    auto g = [&](const SpacetimePoint& q) { return amp.value({q.x, q.y, q.z}); };
    const SpacetimePoint p{k.kx, k.ky, k.kz, 0.0};
    std::array<cplx, 3> d;
    for (int a = 0; a < 3; ++a) d[a] = fd_first<cplx>(g, p, a, fd);
    for (cplx v : d)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw EvaluationError("momentum operator: non-finite amplitude samples");
    return d;
}

// -i (k x d_k)
std::array<cplx, 3> orbital(const std::array<cplx, 3>& d, const WaveVector& k) {
    return {-I * (k.ky * d[2] - k.kz * d[1]), -I * (k.kz * d[0] - k.kx * d[2]), -I * (k.kx * d[1] - k.ky * d[0])};
}

std::array<double, 3> gauge_terms(const WaveVector& k, Gauge gauge, bool need_transverse) {
    if (gauge == Gauge::whittaker) {
        if (!need_transverse) return {0.0, 0.0, 0.0};
        const double kp2 = k.kx * k.kx + k.ky * k.ky;
        if (kp2 == 0.0) throw SingularDirectionError("Whittaker-gauge M_x, M_y are singular on the k_z axis");
        const double kk = k.k();
        return {kk * k.kx / kp2, kk * k.ky / kp2, 0.0};
    }
    const double kk = k.k();
    const double den = kk + k.kz;
    if (need_transverse && !(den > 0.0))
        throw SingularDirectionError("alternate-gauge M_x, M_y are undefined on the backward axis k_z = -k");
    if (!need_transverse) return {0.0, 0.0, 1.0};
    return {k.kx / den, k.ky / den, 1.0};
}

std::array<cplx, 3> all_components(const MomentumSpaceAmplitude& amp, const WaveVector& k, Gauge gauge,
                                   const Constants& consts, const FDSpec& fd, bool need_transverse) {
    check_helicity(amp);
    fd.validate();
    const auto g = gauge_terms(k, gauge, need_transverse);
    const auto orb = orbital(k_gradient(amp, k, fd), k);
    const cplx psi = amp.value(k);
    std::array<cplx, 3> r;
    for (int a = 0; a < 3; ++a) r[a] = consts.hbar * (orb[a] + double(amp.helicity) * g[a] * psi);
    return r;
}

}  // namespace

cplx momentum_mz(const MomentumSpaceAmplitude& amp, const WaveVector& k, Gauge gauge, const Constants& consts,
                 const FDSpec& fd) {
    return all_components(amp, k, gauge, consts, fd, false)[2];
}

std::pair<cplx, cplx> momentum_mx_my(const MomentumSpaceAmplitude& amp, const WaveVector& k, Gauge gauge,
                                     const Constants& consts, const FDSpec& fd) {
    const auto r = all_components(amp, k, gauge, consts, fd, true);
    return {r[0], r[1]};
}

MomentumSpaceAmplitude apply_momentum_m(int axis, const MomentumSpaceAmplitude& amp, Gauge gauge,
                                        const Constants& consts, const FDSpec& fd) {
    if (axis < 0 || axis > 2) throw DomainError("apply_momentum_m: axis must be 0, 1 or 2");
    check_helicity(amp);
    MomentumSpaceAmplitude r;
    r.helicity = amp.helicity;
    r.label = "M" + std::string(1, "xyz"[axis]) + "(" + amp.label + ")";
    r.value = [=](const WaveVector& k) { return all_components(amp, k, gauge, consts, fd, axis != 2)[axis]; };
    return r;
}

cplx momentum_commutator_residual(const MomentumSpaceAmplitude& amp, const WaveVector& k, Gauge gauge,
                                  const Constants& consts, const FDSpec& inner) {
    inner.validate();
    FDSpec outer = inner;
    for (double& h : outer.h) h = std::sqrt(h);
    const auto mx = apply_momentum_m(0, amp, gauge, consts, inner);
    const auto my = apply_momentum_m(1, amp, gauge, consts, inner);
    const cplx xy = apply_momentum_m(0, my, gauge, consts, outer).value(k);
    const cplx yx = apply_momentum_m(1, mx, gauge, consts, outer).value(k);
    return xy - yx - I * consts.hbar * momentum_mz(amp, k, gauge, consts, inner);
}

cplx momentum_helicity(const MomentumSpaceAmplitude& amp, const WaveVector& k, Gauge gauge, const Constants& consts,
                       const FDSpec& fd) {
    const auto m = all_components(amp, k, gauge, consts, fd, true);
    return (k.kx * m[0] + k.ky * m[1] + k.kz * m[2]) / (consts.hbar * k.k());
}

}  // namespace rsb
