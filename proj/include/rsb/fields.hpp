#pragma once

#include <array>
#include <functional>
#include <string>

#include "rsb/jet.hpp"
#include "rsb/quadrature.hpp"
#include "rsb/types.hpp"

namespace rsb {

/// Complex scalar solution chi of the d'Alembert equation, the Whittaker
/// potential of an RS field.
struct ScalarWaveField {
    std::function<cplx(const SpacetimePoint&)> value;
    /// Optional exact derivatives up to second order in (x, y, z, t).
    std::function<Jet(const SpacetimePoint&)> derivatives;
    std::string label;

    [[nodiscard]] bool has_derivatives() const { return static_cast<bool>(derivatives); }
};

/// Value of an RS field and its first partial derivatives in (x, y, z, t).
struct FieldJacobian {
    ComplexVec3 value;
    std::array<ComplexVec3, 4> d;
};

/// Riemann-Silberstein field F(r, t).
struct RSField {
    std::function<ComplexVec3(const SpacetimePoint&)> value;
    /// Optional exact first derivatives.
    std::function<FieldJacobian(const SpacetimePoint&)> jacobian;
    std::string label;

    [[nodiscard]] bool has_jacobian() const { return static_cast<bool>(jacobian); }
};

/// Central finite-difference stencil: per-coordinate step and order 2 or 4.
struct FDSpec {
    std::array<double, 4> h{1e-3, 1e-3, 1e-3, 1e-3};
    int order = 4;

    static FDSpec uniform(double step, int order = 4);
    /// Steps of 1e-3 times the characteristic scale: 1/k in space, 1/omega in time.
    static FDSpec for_scales(double wavenumber, double omega, int order = 4);
    /// Throws DomainError for non-positive steps or an unsupported order.
    void validate() const;
};

/// d/dx_axis of f at p. f maps SpacetimePoint -> V for any vector-space V.
template <class V, class F>
V fd_first(const F& f, SpacetimePoint p, int axis, const FDSpec& fd);

/// d^2/dx_i dx_j of f at p; nested first-difference stencils when i != j.
template <class V, class F>
V fd_second(const F& f, SpacetimePoint p, int i, int j, const FDSpec& fd);

/// Throws ToleranceError when a step is lost against the coordinate magnitude.
void check_step(double coordinate, double h);

/// Whittaker map from the exact second derivatives of chi.
ComplexVec3 whittaker_from_jet(const Jet& chi, const Constants& consts);

/// F from chi: analytic derivatives when chi supplies them, FD otherwise.
ComplexVec3 whittaker_map(const ScalarWaveField& chi, const SpacetimePoint& p, const Constants& consts,
                          const FDSpec& fd);

/// Exact jacobian if the field supplies one, FD otherwise.
FieldJacobian field_jacobian(const RSField& f, const SpacetimePoint& p, const FDSpec& fd);

ComplexVec3 curl(const FieldJacobian& j);
cplx divergence(const FieldJacobian& j);

struct MaxwellResidual {
    ComplexVec3 curl;  ///< dF/dt + i c curl F
    cplx div;          ///< div F
    double scale;      ///< |dF/dt| + c |curl F| + c sum |dF_i/dx_i|

    [[nodiscard]] double relative() const;
};

MaxwellResidual maxwell_residual(const RSField& f, const SpacetimePoint& p, const Constants& consts,
                                 const FDSpec& fd);

struct DalembertResidual {
    cplx value;    ///< (1/c^2) d_t^2 chi - Laplacian chi
    double scale;  ///< sum of the magnitudes of the four terms

    [[nodiscard]] double relative() const;
};

DalembertResidual dalembert_residual(const ScalarWaveField& chi, const SpacetimePoint& p, const Constants& consts,
                                     const FDSpec& fd);

/// F* . F
double energy_density(const ComplexVec3& F);
/// (-i/c) F* x F before discarding the (vanishing) imaginary part.
ComplexVec3 momentum_density_bilinear(const ComplexVec3& F, const Constants& consts);
RealVec3 momentum_density(const ComplexVec3& F, const Constants& consts);
RealVec3 angular_momentum_density(const ComplexVec3& F, const RealVec3& r, const Constants& consts);

/// Integral over the disc rho <= R of density(rho, phi, z, t) rho drho dphi.
/// Nested adaptive quadrature; the density must decay inside R.
template <class F>
auto transverse_integral(const F& density, double z, double t, double radius, const quad::Options& opt = {}) {
    using V = decltype(density(SpacetimePoint{}));
    double inner_error = 0.0;
    quad::Options inner = opt;
    inner.abs_tol = opt.abs_tol / (2.0 * pi);
    inner.initial_intervals = std::max(4, opt.initial_intervals);
    auto ring = [&](double rho) -> V {
        auto integrand = [&](double phi) -> V { return density(SpacetimePoint::cylindrical(rho, phi, z, t)); };
        const auto r = quad::integrate(integrand, 0.0, 2.0 * pi, inner);
        inner_error = std::max(inner_error, r.error * rho);
        return r.value * rho;
    };
    auto result = quad::integrate(ring, 0.0, radius, opt);
    result.error += inner_error * radius;
    return result;
}

// ---------------------------------------------------------------------------

template <class V, class F>
V fd_first(const F& f, SpacetimePoint p, int axis, const FDSpec& fd) {
    const double h = fd.h[axis];
    const double x0 = p[axis];
    check_step(x0, h);
    auto at = [&](double offset) {
        SpacetimePoint q = p;
        q[axis] = x0 + offset;
        return V(f(q));
    };
    if (fd.order == 2) return (at(h) - at(-h)) * (1.0 / (2.0 * h));
    return (at(-2.0 * h) - at(2.0 * h) + (at(h) - at(-h)) * 8.0) * (1.0 / (12.0 * h));
}

template <class V, class F>
V fd_second(const F& f, SpacetimePoint p, int i, int j, const FDSpec& fd) {
    if (i != j) {
        auto inner = [&](const SpacetimePoint& q) { return fd_first<V>(f, q, j, fd); };
        return fd_first<V>(inner, p, i, fd);
    }
    const double h = fd.h[i];
    const double x0 = p[i];
    check_step(x0, h);
    auto at = [&](double offset) {
        SpacetimePoint q = p;
        q[i] = x0 + offset;
        return V(f(q));
    };
    if (fd.order == 2) return (at(h) + at(-h) - at(0.0) * 2.0) * (1.0 / (h * h));
    return ((at(h) + at(-h)) * 16.0 - at(2.0 * h) - at(-2.0 * h) - at(0.0) * 30.0) * (1.0 / (12.0 * h * h));
}

}  // namespace rsb
