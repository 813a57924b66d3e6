#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace riddler {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad configuration value (unsupported language, invalid setting key, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

class IngestError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Numeric precondition failure (dimension mismatch, zero norm, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

// Fewer eligible sentences than requested.
class InsufficientContextError : public Error {
public:
    using Error::Error;
};

// Neither role assignment of a pair produced a riddle.
class NoRiddleError : public Error {
public:
    using Error::Error;
};

class EmptyQueueError : public Error {
public:
    EmptyQueueError() : Error("no riddles available") {}
};

class ConsistencyError : public Error {
public:
    using Error::Error;
};

class UnknownTermError : public Error {
public:
    explicit UnknownTermError(const std::string& term)
        : Error("unknown term: " + term), term_(term) {}
    const std::string& term() const noexcept { return term_; }

private:
    std::string term_;
};

class OracleContractError : public Error {
public:
    using Error::Error;
};

class DegenerateComparisonError : public Error {
public:
    using Error::Error;
};

class UnsupportedTemplateError : public Error {
public:
    using Error::Error;
};

class UndefinedValueError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

class ConflictError : public Error {
public:
    using Error::Error;
};

class AuthError : public Error {
public:
    using Error::Error;
};

class ForbiddenError : public Error {
public:
    using Error::Error;
};

}  // namespace riddler
