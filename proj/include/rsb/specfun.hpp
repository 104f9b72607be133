#pragma once

// Cylindrical Bessel functions of integer order and associated Laguerre
// polynomials. Pure functions, safe to call concurrently.

namespace rsb::specfun {

/// Largest Laguerre degree accepted.
inline constexpr int max_laguerre_degree = 64;

/// J_m(x) for any integer m and finite x >= 0.
double bessel_j(int m, double x);

/// dJ_m/dx from 2 J_m' = J_{m-1} - J_{m+1}.
double bessel_j_prime(int m, double x);

/// Associated Laguerre polynomial L_n^m(x), n, m >= 0.
double laguerre(int n, int m, double x);

/// Upward three-term recurrence in n shared by the real and complex
/// evaluations: (k+1) L_{k+1} = (2k+m+1-x) L_k - (k+m) L_{k-1}.
/// Indices are assumed already validated.
template <class T>
T laguerre_recurrence(int n, int m, const T& x) {
    T prev = T(1.0);
    if (n == 0) return prev;
    T cur = T(1.0 + m) - x;
    for (int k = 1; k < n; ++k) {
        T next = (T(2.0 * k + m + 1.0) - x) * cur - T(double(k + m)) * prev;
        next = next * T(1.0 / (k + 1.0));
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Throws DomainError unless 0 <= n <= max_laguerre_degree and m >= 0.
void check_laguerre_indices(int n, int m);

}  // namespace rsb::specfun
