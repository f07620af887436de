#pragma once

#include <stdexcept>
#include <string>

namespace ffp {

/// Bad registered-map name, bad t-norm name, and similar configuration
/// mistakes. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by certify_affine_contraction when the Lipschitz bound is >= 1.
class NotAContractionError : public std::runtime_error {
public:
    NotAContractionError(double lipschitz, const std::string& what)
        : std::runtime_error(what), lipschitz_(lipschitz) {}

    double lipschitz() const noexcept { return lipschitz_; }

private:
    double lipschitz_;
};

/// Thrown when a map does not preserve the kernel of the seminorm it is
/// being certified against; no Lipschitz constant exists relative to that
/// seminorm in the first place.
class CertificationRefusedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// I - A is singular: the affine map has no unique fixed point.
class NoUniqueFixedPointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ffp
