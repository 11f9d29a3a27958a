#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fracneum {

/// Base of every error thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input parameter is out of range. `field()` names the offending input.
class ParameterError : public Error {
public:
    ParameterError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Geometric precondition violated (overlapping intervals, cell touching a cut, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A GridFunction was used with a mesh it is not bound to.
class BindingError : public Error {
public:
    using Error::Error;
};

/// Problem configuration is inconsistent or incomplete.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An exterior cell has no coupling to the interior.
class ConnectivityError : public Error {
public:
    using Error::Error;
};

/// Non-finite data handed to an operation that needs finite input.
class InputError : public Error {
public:
    using Error::Error;
};

class UnsupportedModeError : public Error {
public:
    using Error::Error;
};

/// Mountain-pass geometry could not be certified on the sampled spheres.
class GeometryError : public Error {
public:
    GeometryError(const std::string& what, std::vector<double> radii, std::vector<double> ring_minima)
        : Error(what), radii_(std::move(radii)), ring_minima_(std::move(ring_minima)) {}
    const std::vector<double>& radii() const noexcept { return radii_; }
    const std::vector<double>& ring_minima() const noexcept { return ring_minima_; }

private:
    std::vector<double> radii_;
    std::vector<double> ring_minima_;
};

/// Descent produced a non-finite energy. Carries the last finite iterate.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, std::vector<double> last_iterate)
        : Error(what), last_(std::move(last_iterate)) {}
    const std::vector<double>& last_iterate() const noexcept { return last_; }

private:
    std::vector<double> last_;
};

}  // namespace fracneum
