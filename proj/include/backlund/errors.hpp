#pragma once

#include <stdexcept>
#include <string>

namespace backlund {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter is outside its admissible range (a = 0, omega <= 0, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A closed-form field was evaluated outside its domain of definition.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Grid construction or stencil placement is invalid.
class GridError : public Error {
public:
    using Error::Error;
};

/// Field evaluation failed while sampling a grid.
class SampleError : public Error {
public:
    SampleError(const std::string& what, std::size_t node)
        : Error(what), node_(node) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// The amplitude has a component along the propagation direction.
class TransversalityError : public Error {
public:
    TransversalityError(const std::string& what, double longitudinal)
        : Error(what), longitudinal_(longitudinal) {}

    /// |khat . E0| of the offending amplitude.
    double longitudinal() const noexcept { return longitudinal_; }

private:
    double longitudinal_;
};

/// Real-form construction requested for a non-linearly polarized amplitude.
class PolarizationError : public Error {
public:
    using Error::Error;
};

/// A conducting medium was handed to the vacuum constructors.
class WrongMediumError : public Error {
public:
    using Error::Error;
};

/// Wavenumber/attenuation pair does not satisfy the conductor dispersion system.
class DispersionMismatchError : public Error {
public:
    DispersionMismatchError(const std::string& what, double real_residual, double imag_residual)
        : Error(what), real_residual_(real_residual), imag_residual_(imag_residual) {}

    double real_residual() const noexcept { return real_residual_; }
    double imag_residual() const noexcept { return imag_residual_; }

private:
    double real_residual_;
    double imag_residual_;
};

/// Polynomial handed to the Cauchy-Riemann integrator has a nonzero Laplacian.
class NotHarmonicError : public Error {
public:
    NotHarmonicError(const std::string& what, int x_power, int y_power, double coefficient)
        : Error(what), x_power_(x_power), y_power_(y_power), coefficient_(coefficient) {}

    int x_power() const noexcept { return x_power_; }
    int y_power() const noexcept { return y_power_; }
    double coefficient() const noexcept { return coefficient_; }

private:
    int x_power_;
    int y_power_;
    double coefficient_;
};

}  // namespace backlund
