#include "rsb/specfun.hpp"

#include <cmath>
#include <string>

#include "rsb/errors.hpp"

namespace rsb::specfun {
namespace {

// Below this argument the ascending series is free of harmful cancellation.
constexpr double series_limit = 4.0;

double bessel_series(int m, double x) {
    const double half = 0.5 * x;
    const double q = half * half;
    double term = std::exp(m * std::log(half) - std::lgamma(m + 1.0));
    double sum = term;
    for (int k = 1; k < 300; ++k) {
        term *= -q / (double(k) * double(k + m));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Miller's backward recurrence normalised with J_0 + 2 sum J_{2k} = 1.
double bessel_miller(int m, double x) {
    const double big = 1e250;
    const double top = std::max(double(m), x);
    int start = int(top) + 30 + int(std::sqrt(60.0 * top));
    start += start % 2;

    double jp1 = 0.0;
    double j = 1e-300;
    double sum = 0.0;
    double result = (start == m) ? j : 0.0;
    for (int n = start; n > 0; --n) {
        const double jm1 = (2.0 * n / x) * j - jp1;
        jp1 = j;
        j = jm1;
        if (std::abs(j) > big) {
            j /= big;
            jp1 /= big;
            sum /= big;
            result /= big;
        }
        if (n - 1 == m) result = j;
        if ((n - 1) % 2 == 0 && n - 1 > 0) sum += 2.0 * j;
    }
    return result / (j + sum);
}

}  // namespace

double bessel_j(int m, double x) {
    if (!std::isfinite(x) || x < 0.0)
        throw DomainError("bessel_j: argument must be finite and >= 0, got " + std::to_string(x));
    const int order = m < 0 ? -m : m;
    const double sign = (m < 0 && order % 2 == 1) ? -1.0 : 1.0;
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    const double value = x < series_limit ? bessel_series(order, x) : bessel_miller(order, x);
    return sign * value;
}

double bessel_j_prime(int m, double x) { return 0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x)); }

void check_laguerre_indices(int n, int m) {
    if (n < 0 || m < 0 || n > max_laguerre_degree)
        throw DomainError("laguerre: need 0 <= n <= " + std::to_string(max_laguerre_degree) +
                          " and m >= 0, got n=" + std::to_string(n) + ", m=" + std::to_string(m));
}

double laguerre(int n, int m, double x) {
    check_laguerre_indices(n, m);
    return laguerre_recurrence(n, m, x);
}

}  // namespace rsb::specfun
