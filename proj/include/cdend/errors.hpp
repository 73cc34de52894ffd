#pragma once

#include <stdexcept>
#include <string>

namespace cdend {

// Base for all library errors. `kind` is a stable short tag such as
// "NotContractible" or "LegMismatch"; `witness` carries a human readable
// description of the offending data when one is available.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg, std::string witness = {})
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)), witness_(std::move(witness)) {}

    const std::string& kind() const noexcept { return kind_; }
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string kind_;
    std::string witness_;
};

// Input data does not satisfy the invariants of the type being built.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A search would exceed the configured cap.
class SizeBoundExceeded : public Error {
public:
    explicit SizeBoundExceeded(const std::string& msg) : Error("SizeBoundExceeded", msg) {}
};

// Input could not be parsed or refers to unknown names.
class MalformedInput : public Error {
public:
    explicit MalformedInput(const std::string& msg) : Error("MalformedInput", msg) {}
};

} // namespace cdend
