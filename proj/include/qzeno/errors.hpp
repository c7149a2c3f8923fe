#pragma once

#include <stdexcept>
#include <string>

namespace qzeno {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operand shapes do not fit together.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A physical or protocol parameter lies outside its admissible range.
class ParameterError : public Error {
public:
    using Error::Error;
};

// A conditional branch whose probability fell below the dead-end threshold.
class DeadEndError : public Error {
public:
    DeadEndError(const std::string& what, double probability)
        : Error(what), probability_(probability) {}
    double probability() const noexcept { return probability_; }

private:
    double probability_;
};

// Failure of an iterative numerical routine or an input that is not Hermitian.
class NumericalError : public Error {
public:
    using Error::Error;
};

// Malformed configuration or data file.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace qzeno
