#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lsys {

enum class ErrorKind {
    InvalidArgument,
    Io,
    Parse,
    IncompatibleStep,
    IncompatibleSequence,
    CapExceeded,
    MissingProduction,
    WordTooLong,
};

/// Short machine-readable tag, e.g. "cap-exceeded".
const char* error_tag(ErrorKind kind);

/// Process exit code for the CLI: 1 usage/IO, 2 incompatible sequence, 3 cap exceeded.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class IncompatibleSequenceError : public Error {
public:
    IncompatibleSequenceError(std::size_t step, const std::string& message)
        : Error(ErrorKind::IncompatibleSequence, message), step_(step) {}

    /// Index j of the failing step w_j => w_{j+1}.
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

class CapExceededError : public Error {
public:
    CapExceededError(std::uint64_t partial_count, const std::string& message)
        : Error(ErrorKind::CapExceeded, message), partial_count_(partial_count) {}

    /// Number of items produced before the cap was hit.
    std::uint64_t partial_count() const noexcept { return partial_count_; }

private:
    std::uint64_t partial_count_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace lsys
