#pragma once

#include <stdexcept>
#include <string>

namespace dce {

/// Precondition or type-invariant violation on caller-supplied values.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A first-order expansion was asked to operate outside its validity domain.
class ValidityError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Evaluation requested inside the excluded neighbourhood of a coherent drive line.
class GuardBandError : public std::domain_error {
public:
    GuardBandError(const std::string& what, double line_omega)
        : std::domain_error(what), line_omega_(line_omega) {}
    [[nodiscard]] double line_omega() const noexcept { return line_omega_; }

private:
    double line_omega_;
};

/// Non-convergence, underflow or cancellation in a numerical routine.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid configuration; `path()` names the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    [[nodiscard]] const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace dce
