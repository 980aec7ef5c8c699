#pragma once

#include <stdexcept>
#include <string>

namespace rising {

// Invalid instance, experiment, or curve parameters.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operation called outside its mathematical domain (n = 0, t > T, c_k <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Request that would exceed a hard size limit (brute-force enumeration).
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace rising
