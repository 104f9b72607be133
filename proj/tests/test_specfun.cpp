#include <doctest.h>

#include <cmath>

#include "rsb/errors.hpp"
#include "rsb/quadrature.hpp"
#include "rsb/specfun.hpp"
#include "test_util.hpp"

using namespace rsb::specfun;
using testutil::uniform;
using testutil::uniform_int;

namespace {

// Independent oracle: long-double ascending series, summed to convergence.
long double series_oracle(int m, long double x) {
    long double term = 1.0L;
    for (int k = 1; k <= m; ++k) term *= x / (2.0L * k);
    long double sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= -(x * x / 4.0L) / (static_cast<long double>(k) * (k + m));
        sum += term;
    }
    return sum;
}

// Explicit Laguerre sum: L_n^m(x) = sum_j (-1)^j C(n+m, n-j) x^j / j!.
double laguerre_explicit(int n, int m, double x) {
    long double sum = 0.0L;
    for (int j = 0; j <= n; ++j) {
        long double binom = 1.0L;  // C(n+m, n-j)
        for (int i = 1; i <= n - j; ++i) binom = binom * (m + j + i) / i;
        long double power = 1.0L;
        for (int i = 1; i <= j; ++i) power = power * x / i;
        sum += ((j % 2) ? -1.0L : 1.0L) * binom * power;
    }
    return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("bessel_j examples") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(bessel_j(-4, 0.0) == 0.0);
    const double zero = 2.404825557695773;
    CHECK(std::abs(static_cast<double>(series_oracle(0, zero))) < 1e-12);
    CHECK(std::abs(bessel_j(0, zero)) < 1e-12);
}

TEST_CASE("bessel_j rejects non-finite or negative arguments") {
    CHECK_THROWS_AS(bessel_j(0, NAN), rsb::DomainError);
    CHECK_THROWS_AS(bessel_j(2, INFINITY), rsb::DomainError);
    CHECK_THROWS_AS(bessel_j(2, -1.0), rsb::DomainError);
    CHECK_THROWS_AS(bessel_j_prime(2, NAN), rsb::DomainError);
}

TEST_CASE("bessel_j agrees with the series oracle and the standard library") {
    for (int i = 0; i < 400; ++i) {
        const int m = uniform_int(0, 25);
        const double x = uniform(0.0, 12.0);
        const double want = static_cast<double>(series_oracle(m, x));
        CHECK(std::abs(bessel_j(m, x) - want) < 1e-13);
    }
    for (int i = 0; i < 400; ++i) {
        const int m = uniform_int(0, 45);
        const double x = uniform(0.0, 200.0);
        CHECK(std::abs(bessel_j(m, x) - std::cyl_bessel_j(double(m), x)) < 1e-12);
    }
}

TEST_CASE("bessel_j_prime examples") {
    CHECK(bessel_j_prime(0, 0.0) == 0.0);
    CHECK(bessel_j_prime(1, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    const double h = 1e-4;
    const double fd = (bessel_j(3, 2.0 + h) - bessel_j(3, 2.0 - h)) / (2 * h);
    CHECK(std::abs(bessel_j_prime(3, 2.0) - fd) < 1e-8);
}

TEST_CASE("Bessel recurrence, derivative and parity properties") {
    for (int i = 0; i < 1000; ++i) {
        const int m = uniform_int(-20, 20);
        const double x = uniform(1e-6, 50.0);
        const double jm1 = bessel_j(m - 1, x), j = bessel_j(m, x), jp1 = bessel_j(m + 1, x);
        const double lhs = 2.0 * m * j;
        const double rhs = x * (jm1 + jp1);
        const double scale = std::max({std::abs(lhs), x * std::abs(jm1), x * std::abs(jp1), 1e-300});
        CHECK(std::abs(lhs - rhs) / scale < 1e-10);

        CHECK(2.0 * bessel_j_prime(m, x) == jm1 - jp1);
        const double h = 1e-5;
        const double fd = (bessel_j(m, x + h) - bessel_j(m, x - h)) / (2 * h);
        CHECK(std::abs(bessel_j_prime(m, x) - fd) < 1e-8);

        const double parity = (std::abs(m) % 2) ? -1.0 : 1.0;
        CHECK(bessel_j(-m, x) == parity * j);
    }
}

TEST_CASE("laguerre examples and errors") {
    CHECK(laguerre(0, 5, 7.3) == 1.0);
    CHECK(laguerre(1, 0, 2.0) == doctest::Approx(-1.0));
    CHECK(laguerre(2, 1, 0.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(laguerre(-1, 0, 1.0), rsb::DomainError);
    CHECK_THROWS_AS(laguerre(1, -2, 1.0), rsb::DomainError);
    CHECK_THROWS_AS(laguerre(max_laguerre_degree + 1, 0, 1.0), rsb::DomainError);
}

TEST_CASE("laguerre matches the explicit sum and its own recurrence") {
    for (int n = 0; n <= 10; ++n) {
        for (int m = 0; m <= 6; ++m) {
            for (double x : {0.0, 0.3, 1.7, 4.2, 9.5}) {
                const double l = laguerre(n, m, x);
                const double want = laguerre_explicit(n, m, x);
                CHECK(std::abs(l - want) <= 1e-12 * std::max(1.0, std::abs(want)));
                if (n >= 1) {
                    const double lhs = (n + 1) * laguerre(n + 1, m, x);
                    const double rhs = (2 * n + m + 1 - x) * l - (n + m) * laguerre(n - 1, m, x);
                    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
                }
            }
        }
    }
    const double binom = std::exp(std::lgamma(9.0) - std::lgamma(5.0) - std::lgamma(5.0));
    CHECK(laguerre(4, 4, 0.0) == doctest::Approx(binom).epsilon(1e-14));
}

TEST_CASE("Laguerre integral identity") {
    // int_0^inf x^{n+m/2} e^{-a x} J_m(2 b sqrt x) dx = n! b^m e^{-b^2/a} L_n^m(b^2/a) / a^{n+m+1}
    for (int n = 0; n <= 4; ++n)
        for (int m = 0; m <= 4; ++m)
            for (double a : {0.7, 1.3, 2.5})
                for (double b : {0.3, 0.8, 1.7}) {
                    auto f = [&](double x) { return std::pow(x, n + 0.5 * m) * std::exp(-a * x) * bessel_j(m, 2 * b * std::sqrt(x)); };
                    // Absolute tolerance from the envelope integral Gamma(p) / a^p; the identity can nearly cancel.
                    const double p = n + 0.5 * m + 1.0;
                    const double envelope = std::tgamma(p) / std::pow(a, p);
                    const double numeric =
                        rsb::quad::integrate_semi_infinite(f, 0.0, p / a, {1e-14 * envelope, 1e-12, 4000, 8}).value;
                    const double y = b * b / a;
                    const double closed =
                        std::tgamma(n + 1.0) * std::pow(b, m) * std::exp(-y) * laguerre(n, m, y) / std::pow(a, n + m + 1);
                    CHECK(std::abs(numeric - closed) <= 1e-6 * std::abs(closed));
                }
}
