#pragma once

#include <stdexcept>
#include <string>

namespace permsep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A permutation does not match the slot count of the matrix it is applied to,
/// or is not a bijection.
class InvalidPermutation : public Error {
public:
    using Error::Error;
};

/// A density matrix failed validation. `invariant()` names the violated
/// property ("shape", "finite", "hermitian", "trace", "psd") and
/// `magnitude()` the measured violation.
class InvalidState : public Error {
public:
    InvalidState(std::string invariant, double magnitude, const std::string& what)
        : Error(what), invariant_(std::move(invariant)), magnitude_(magnitude) {}

    const std::string& invariant() const noexcept { return invariant_; }
    double magnitude() const noexcept { return magnitude_; }

private:
    std::string invariant_;
    double magnitude_;
};

/// Refused because the requested work exceeds the desk-scale limits.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

} // namespace permsep
