#pragma once

#include <array>
#include <complex>

#include "rsb/types.hpp"

namespace rsb {

/// Integer power by repeated squaring; ipow(0, 0) == 1.
inline cplx ipow(cplx base, int p) {
    if (p < 0) return 1.0 / ipow(base, -p);
    cplx result = 1.0;
    while (p > 0) {
        if (p & 1) result *= base;
        base *= base;
        p >>= 1;
    }
    return result;
}

/// Complex value with exact first and second partial derivatives in the
/// four spacetime coordinates (x, y, z, t), propagated by forward-mode
/// differentiation.
class Jet {
public:
    static constexpr int dim = 4;

    Jet() = default;
    Jet(cplx value) : v_(value) {}  // NOLINT: constants promote implicitly
    Jet(double value) : v_(value) {}

    /// Independent variable number `index` at `value`.
    static Jet variable(int index, double value) {
        Jet j(value);
        j.d_[index] = 1.0;
        return j;
    }

    /// Jet assembled from known value, gradient and (symmetric) Hessian.
    static Jet from_parts(cplx value, const std::array<cplx, dim>& grad,
                          const std::array<std::array<cplx, dim>, dim>& hess) {
        Jet j(value);
        j.d_ = grad;
        j.h_ = hess;
        return j;
    }

    [[nodiscard]] cplx value() const { return v_; }
    [[nodiscard]] cplx d(int i) const { return d_[i]; }
    [[nodiscard]] cplx dd(int i, int j) const { return h_[i][j]; }

    Jet& operator+=(const Jet& o) {
        v_ += o.v_;
        for (int i = 0; i < dim; ++i) {
            d_[i] += o.d_[i];
            for (int j = 0; j < dim; ++j) h_[i][j] += o.h_[i][j];
        }
        return *this;
    }
    Jet& operator-=(const Jet& o) { return *this += -o; }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this / o; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(const Jet& a) { return a.scaled(-1.0); }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        r.v_ = a.v_ * b.v_;
        for (int i = 0; i < dim; ++i) {
            r.d_[i] = a.d_[i] * b.v_ + a.v_ * b.d_[i];
            for (int j = 0; j < dim; ++j)
                r.h_[i][j] = a.h_[i][j] * b.v_ + a.d_[i] * b.d_[j] + a.d_[j] * b.d_[i] + a.v_ * b.h_[i][j];
        }
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

    /// Chain rule for a scalar function with value f0 and derivatives f1, f2.
    [[nodiscard]] Jet compose(cplx f0, cplx f1, cplx f2) const {
        Jet r;
        r.v_ = f0;
        for (int i = 0; i < dim; ++i) {
            r.d_[i] = f1 * d_[i];
            for (int j = 0; j < dim; ++j) r.h_[i][j] = f2 * d_[i] * d_[j] + f1 * h_[i][j];
        }
        return r;
    }

    friend Jet reciprocal(const Jet& a) {
        const cplx inv = 1.0 / a.v_;
        return a.compose(inv, -inv * inv, 2.0 * inv * inv * inv);
    }
    friend Jet exp(const Jet& a) {
        const cplx e = std::exp(a.v_);
        return a.compose(e, e, e);
    }
    /// Integer power, any sign of p.
    friend Jet pow(const Jet& a, int p) {
        if (p == 0) return Jet(1.0);
        const cplx f2 = (p == 1) ? cplx(0.0) : double(p) * (p - 1.0) * ipow(a.v_, p - 2);
        const cplx f1 = double(p) * ipow(a.v_, p - 1);
        return a.compose(ipow(a.v_, p), f1, f2);
    }

private:
    [[nodiscard]] Jet scaled(cplx s) const {
        Jet r = *this;
        r.v_ *= s;
        for (int i = 0; i < dim; ++i) {
            r.d_[i] *= s;
            for (int j = 0; j < dim; ++j) r.h_[i][j] *= s;
        }
        return r;
    }

    cplx v_{};
    std::array<cplx, dim> d_{};
    std::array<std::array<cplx, dim>, dim> h_{};
};

}  // namespace rsb
