#pragma once

#include <stdexcept>
#include <string>

namespace rsb {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Direction with k_perp = 0 where the polarization normalization diverges.
class SingularDirectionError : public Error {
public:
    explicit SingularDirectionError(const std::string& what) : Error(what) {}
};

/// Cylindrical basis vectors requested on the z axis.
class OnAxisBasisError : public Error {
public:
    explicit OnAxisBasisError(const std::string& what) : Error(what) {}
};

/// Finite-difference step too small to resolve the coordinate.
class ToleranceError : public Error {
public:
    explicit ToleranceError(const std::string& what) : Error(what) {}
};

/// A field evaluation produced a non-finite sample.
class EvaluationError : public Error {
public:
    explicit EvaluationError(const std::string& what) : Error(what) {}
};

/// Delta-supported amplitudes have no finite norm.
class NonNormalizableError : public Error {
public:
    explicit NonNormalizableError(const std::string& what) : Error(what) {}
};

/// Time window too short to resolve the spectral line.
class InsufficientResolutionError : public Error {
public:
    explicit InsufficientResolutionError(const std::string& what) : Error(what) {}
};

/// Adaptive quadrature ran out of budget; carries the best estimate.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double best_estimate, double error_estimate)
        : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    [[nodiscard]] double best_estimate() const noexcept { return best_estimate_; }
    [[nodiscard]] double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

}  // namespace rsb
