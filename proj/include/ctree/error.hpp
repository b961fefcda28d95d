#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ctree {

enum class ErrorCode {
    Syntax,
    SyntaxShape,
    Arity,
    LevelMisalignment,
    IsomorphicLeftChildren,
    NotLowerIsomorphic,
    InvalidTree,
    InvalidInput,
    NotAParent,
    LevelOutOfRange,
    Decode,
    EmptyInterval,
    InvalidPoint,
    InfiniteInterval,
    NotIsomorphic,
    LabelMismatch,
    NotStrictlyBelow,
    NotInGamma,
    SignatureMismatch,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised by the expression parser; `position` is a byte offset into the input.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, std::string expected)
        : Error(ErrorCode::Syntax,
                "at offset " + std::to_string(position) + ": expected " + expected),
          position_(position), expected_(std::move(expected)) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

}  // namespace ctree
