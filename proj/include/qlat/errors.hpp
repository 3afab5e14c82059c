#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qlat {

/// Argument outside the mathematical domain of an operation (e.g. k > n, inv(0)).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller misuse: mismatched lattices, bad flags, wrong vector lengths.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured cap was exceeded. `partial` carries how far the work got.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::uint64_t partial = 0)
        : std::runtime_error(what), partial_(partial) {}
    std::uint64_t partial() const noexcept { return partial_; }

private:
    std::uint64_t partial_;
};

/// Malformed, truncated or tampered cache file.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qlat
