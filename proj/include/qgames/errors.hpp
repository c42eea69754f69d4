#pragma once

#include <stdexcept>
#include <string>

namespace qgames {

// Caller supplied something malformed: bad dimensions, out-of-range parameters,
// unparsable literals. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical post-condition failed (e.g. a trace that should be real is not).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Construction bug guard; should never fire for valid inputs.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qgames
