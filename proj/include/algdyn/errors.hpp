#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace algdyn {

// Bad input or violated precondition.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : InputError(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Two independent computations of the same quantity disagree.
class CrossCheckError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside the supported regime: caps, infinite varieties, unmet budgets.
class RegimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numeric refinement did not reach the requested certainty.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace algdyn
