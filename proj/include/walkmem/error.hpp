#pragma once

#include <stdexcept>
#include <string>

namespace walkmem {

/// Base class for every error raised by the library. `code()` is a stable
/// machine-readable tag used by the CLI when it reports failures as JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("parse_error", "line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& message) : Error("invalid_argument", message) {}
};

/// A walker reached a node without out-neighbors.
class DeadEndError : public Error {
public:
    explicit DeadEndError(const std::string& message) : Error("dead_end", message) {}
};

class DisconnectedGraph : public Error {
public:
    explicit DisconnectedGraph(const std::string& message) : Error("disconnected_graph", message) {}
};

class GenerationError : public Error {
public:
    explicit GenerationError(const std::string& message) : Error("generation_failed", message) {}
};

class UnreachableTarget : public Error {
public:
    explicit UnreachableTarget(const std::string& message) : Error("unreachable_target", message) {}
};

class ReducibleChain : public Error {
public:
    explicit ReducibleChain(const std::string& message) : Error("reducible_chain", message) {}
};

class SizeLimitExceeded : public Error {
public:
    explicit SizeLimitExceeded(const std::string& message) : Error("size_limit", message) {}
};

class CensoredTrajectories : public Error {
public:
    explicit CensoredTrajectories(const std::string& message)
        : Error("too_many_censored", message) {}
};

class DatasetError : public Error {
public:
    explicit DatasetError(const std::string& message) : Error("dataset_error", message) {}
};

}  // namespace walkmem
