#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lph {

using cplx = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Thrown when an argument violates an operation's contract (maps to CLI exit 2).
struct param_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when input data is malformed (non-finite samples, bad files, ...).
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lph
