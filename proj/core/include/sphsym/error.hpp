#pragma once

#include <stdexcept>
#include <string>

namespace sphsym
{
/// Raised when an input violates a documented precondition or invariant.
class InvalidArgument final : public std::invalid_argument
{
public:
        explicit InvalidArgument(const std::string& what)
                : std::invalid_argument(what)
        {
        }
};

/// Raised when a numerical routine cannot reach its documented tolerance.
class ToleranceBreach final : public std::runtime_error
{
public:
        explicit ToleranceBreach(const std::string& what)
                : std::runtime_error(what)
        {
        }
};

[[noreturn]] inline void invalid_argument(const std::string& what)
{
        throw InvalidArgument(what);
}
}
