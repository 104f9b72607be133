#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace rsb {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Physical constants of the unit system in use. Library code is unit-agnostic.
struct Constants {
    double c = 1.0;     ///< speed of light
    double hbar = 1.0;  ///< action quantum
    double eps0 = 1.0;  ///< vacuum permittivity

    static constexpr Constants natural() { return {}; }
    /// CODATA 2018 exact/recommended values.
    static constexpr Constants si() { return {299792458.0, 1.054571817e-34, 8.8541878128e-12}; }

    [[nodiscard]] bool valid() const { return c > 0 && hbar > 0 && eps0 > 0; }
};

struct SpacetimePoint {
    double x = 0, y = 0, z = 0, t = 0;

    [[nodiscard]] double rho() const { return std::hypot(x, y); }
    /// Azimuth, with the convention phi = 0 on the axis.
    [[nodiscard]] double phi() const { return (x == 0.0 && y == 0.0) ? 0.0 : std::atan2(y, x); }
    [[nodiscard]] bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) && std::isfinite(t);
    }

    static SpacetimePoint cylindrical(double rho, double phi, double z, double t) {
        return {rho * std::cos(phi), rho * std::sin(phi), z, t};
    }

    /// Coordinate by index: 0..3 = x, y, z, t.
    [[nodiscard]] double operator[](int i) const {
        switch (i) {
            case 0: return x;
            case 1: return y;
            case 2: return z;
            default: return t;
        }
    }
    double& operator[](int i) {
        switch (i) {
            case 0: return x;
            case 1: return y;
            case 2: return z;
            default: return t;
        }
    }
};

/// Fixed-size 3-vector with arithmetic; instantiated for real and complex components.
template <class T>
struct Vec3 {
    std::array<T, 3> v{};

    constexpr Vec3() = default;
    constexpr Vec3(T a, T b, T c) : v{a, b, c} {}

    constexpr T& operator[](std::size_t i) { return v[i]; }
    constexpr const T& operator[](std::size_t i) const { return v[i]; }

    Vec3& operator+=(const Vec3& o) {
        for (std::size_t i = 0; i < 3; ++i) v[i] += o.v[i];
        return *this;
    }
    Vec3& operator-=(const Vec3& o) {
        for (std::size_t i = 0; i < 3; ++i) v[i] -= o.v[i];
        return *this;
    }
    template <class S>
    Vec3& operator*=(const S& s) {
        for (auto& x : v) x *= s;
        return *this;
    }
    friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend Vec3 operator-(Vec3 a) {
        for (auto& x : a.v) x = -x;
        return a;
    }
    template <class S>
    friend Vec3 operator*(Vec3 a, const S& s) { return a *= s; }
    template <class S>
    friend Vec3 operator*(const S& s, Vec3 a) { return a *= s; }
    template <class S>
    friend Vec3 operator/(Vec3 a, const S& s) {
        for (auto& x : a.v) x /= s;
        return a;
    }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

using ComplexVec3 = Vec3<cplx>;
using RealVec3 = Vec3<double>;

inline double norm(const ComplexVec3& a) {
    return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}
inline double norm(const RealVec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

inline ComplexVec3 conj(const ComplexVec3& a) {
    return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])};
}

/// Hermitian inner product <a, b> = sum conj(a_i) b_i.
inline cplx inner(const ComplexVec3& a, const ComplexVec3& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline bool finite(const ComplexVec3& a) {
    for (const auto& c : a.v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

inline RealVec3 real(const ComplexVec3& a) { return {a[0].real(), a[1].real(), a[2].real()}; }
inline RealVec3 imag(const ComplexVec3& a) { return {a[0].imag(), a[1].imag(), a[2].imag()}; }

}  // namespace rsb
