#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace oscstat {

/// Base of every error raised by the toolkit. `origin()` names the module
/// that detected the problem so front ends can report it.
class Error : public std::runtime_error {
public:
    Error(std::string origin, const std::string& what)
        : std::runtime_error(what), origin_(std::move(origin)) {}

    [[nodiscard]] const std::string& origin() const noexcept { return origin_; }

private:
    std::string origin_;
};

/// A physical precondition does not hold (invalid chemical potential,
/// undefined threshold, enumeration too large, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input data is structurally inconsistent (closure violation, length
/// mismatch, non-positive parameters).
class MalformedInputError : public Error {
public:
    using Error::Error;
};

/// Exhaustive enumeration would exceed the configuration cap.
class EnumerationLimitError : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace oscstat
