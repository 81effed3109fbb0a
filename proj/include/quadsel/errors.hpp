#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace quadsel {

/// Argument outside the mathematical domain of an operation (even modulus, zero ideal, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computed invariant contradicts a theorem the library relies on. Always a bug.
class TheoremViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A bounded search ran out of room before it could decide.
class InconclusiveError : public std::runtime_error {
public:
    InconclusiveError(const std::string& what, std::uint64_t bound)
        : std::runtime_error(what + " (bound " + std::to_string(bound) + ")"), bound_(bound) {}
    std::uint64_t bound() const { return bound_; }

private:
    std::uint64_t bound_;
};

}  // namespace quadsel
