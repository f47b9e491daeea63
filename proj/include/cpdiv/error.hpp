#pragma once

#include <stdexcept>
#include <string>

namespace cpdiv {

// Malformed input (CSV rows, config files, command-line values).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value outside the domain of the operation (k out of range, theta on the boundary, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace cpdiv
