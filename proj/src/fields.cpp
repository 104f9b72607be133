#include "rsb/fields.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rsb/errors.hpp"

namespace rsb {

FDSpec FDSpec::uniform(double step, int order) {
    FDSpec fd;
    fd.h = {step, step, step, step};
    fd.order = order;
    fd.validate();
    return fd;
}

FDSpec FDSpec::for_scales(double wavenumber, double omega, int order) {
    if (!(wavenumber > 0) || !(omega > 0)) throw DomainError("FDSpec::for_scales: scales must be positive");
    FDSpec fd;
    const double hs = 1e-3 / wavenumber;
    fd.h = {hs, hs, hs, 1e-3 / omega};
    fd.order = order;
    fd.validate();
    return fd;
}

void FDSpec::validate() const {
    if (order != 2 && order != 4) throw DomainError("FDSpec: order must be 2 or 4, got " + std::to_string(order));
    for (double s : h)
        if (!(s > 0) || !std::isfinite(s)) throw DomainError("FDSpec: steps must be finite and positive");
}

void check_step(double coordinate, double h) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (coordinate + h == coordinate || h < 64.0 * eps * std::abs(coordinate))
        throw ToleranceError("finite-difference step " + std::to_string(h) +
                             " underflows against coordinate " + std::to_string(coordinate));
}

ComplexVec3 whittaker_from_jet(const Jet& chi, const Constants& consts) {
    const cplx ic = I / consts.c;
    return {chi.dd(0, 2) + ic * chi.dd(1, 3), chi.dd(1, 2) - ic * chi.dd(0, 3), -(chi.dd(0, 0) + chi.dd(1, 1))};
}

ComplexVec3 whittaker_map(const ScalarWaveField& chi, const SpacetimePoint& p, const Constants& consts,
                          const FDSpec& fd) {
    if (chi.has_derivatives()) return whittaker_from_jet(chi.derivatives(p), consts);
    fd.validate();
    auto d2 = [&](int i, int j) { return fd_second<cplx>(chi.value, p, i, j, fd); };
    const cplx ic = I / consts.c;
    ComplexVec3 F{d2(0, 2) + ic * d2(1, 3), d2(1, 2) - ic * d2(0, 3), -(d2(0, 0) + d2(1, 1))};
    if (!finite(F)) throw EvaluationError("whittaker_map: non-finite field at the requested point");
    return F;
}

FieldJacobian field_jacobian(const RSField& f, const SpacetimePoint& p, const FDSpec& fd) {
    if (f.has_jacobian()) return f.jacobian(p);
    fd.validate();
    FieldJacobian j;
    j.value = f.value(p);
    if (!finite(j.value)) throw EvaluationError("field_jacobian: non-finite field sample");
    for (int axis = 0; axis < 4; ++axis) {
        j.d[axis] = fd_first<ComplexVec3>(f.value, p, axis, fd);
        if (!finite(j.d[axis])) throw EvaluationError("field_jacobian: non-finite field sample");
    }
    return j;
}

ComplexVec3 curl(const FieldJacobian& j) {
    // d[axis][component]
    return {j.d[1][2] - j.d[2][1], j.d[2][0] - j.d[0][2], j.d[0][1] - j.d[1][0]};
}

cplx divergence(const FieldJacobian& j) { return j.d[0][0] + j.d[1][1] + j.d[2][2]; }

double MaxwellResidual::relative() const {
    const double r = std::max(norm(curl), std::abs(div));
    return scale == 0.0 ? r : r / scale;
}

MaxwellResidual maxwell_residual(const RSField& f, const SpacetimePoint& p, const Constants& consts,
                                 const FDSpec& fd) {
    const FieldJacobian j = field_jacobian(f, p, fd);
    const ComplexVec3 rot = curl(j);
    MaxwellResidual r;
    r.curl = j.d[3] + (I * consts.c) * rot;
    r.div = divergence(j);
    r.scale = norm(j.d[3]) + consts.c * norm(rot) +
              consts.c * (std::abs(j.d[0][0]) + std::abs(j.d[1][1]) + std::abs(j.d[2][2]));
    return r;
}

double DalembertResidual::relative() const { return scale == 0.0 ? std::abs(value) : std::abs(value) / scale; }

DalembertResidual dalembert_residual(const ScalarWaveField& chi, const SpacetimePoint& p, const Constants& consts,
                                     const FDSpec& fd) {
    std::array<cplx, 4> second;
    if (chi.has_derivatives()) {
        const Jet j = chi.derivatives(p);
        for (int i = 0; i < 4; ++i) second[i] = j.dd(i, i);
    } else {
        fd.validate();
        for (int i = 0; i < 4; ++i) second[i] = fd_second<cplx>(chi.value, p, i, i, fd);
    }
    const double c2 = consts.c * consts.c;
    DalembertResidual r;
    r.value = second[3] / c2 - (second[0] + second[1] + second[2]);
    r.scale = std::abs(second[3]) / c2 + std::abs(second[0]) + std::abs(second[1]) + std::abs(second[2]);
    if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
        throw EvaluationError("dalembert_residual: non-finite samples");
    return r;
}

double energy_density(const ComplexVec3& F) { return std::norm(F[0]) + std::norm(F[1]) + std::norm(F[2]); }

ComplexVec3 momentum_density_bilinear(const ComplexVec3& F, const Constants& consts) {
    return cross(conj(F), F) * (-I / consts.c);
}

RealVec3 momentum_density(const ComplexVec3& F, const Constants& consts) {
    return real(momentum_density_bilinear(F, consts));
}

RealVec3 angular_momentum_density(const ComplexVec3& F, const RealVec3& r, const Constants& consts) {
    return cross(r, momentum_density(F, consts));
}

}  // namespace rsb
