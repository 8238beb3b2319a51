#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncstree {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error in one of the text grammars; `position` is a 0-based offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class InvalidLabel : public Error {
public:
    using Error::Error;
};

class TruncationMismatch : public Error {
public:
    using Error::Error;
};

class InvalidAutomorphism : public Error {
public:
    using Error::Error;
};

class WeightOverflow : public Error {
public:
    using Error::Error;
};

} // namespace ncstree
