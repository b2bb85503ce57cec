#pragma once

#include <stdexcept>
#include <string>

namespace drcw {

// Rejected input: bad sizes, invalid null specifications, malformed documents.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical stage could not produce a usable result.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace drcw
