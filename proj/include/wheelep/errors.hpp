#pragma once

#include <stdexcept>

namespace wheelep {

/// Raised on malformed graph6 / edge-list input and invalid generator specs.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace wheelep
