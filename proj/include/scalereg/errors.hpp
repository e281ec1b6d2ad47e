#pragma once

#include <stdexcept>
#include <string>

namespace scalereg {

/// Invalid arguments or malformed input data.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical computation has no well-defined answer for this input
/// (zero variance, collinear regressors, singular matrix).
class DegenerateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace scalereg
