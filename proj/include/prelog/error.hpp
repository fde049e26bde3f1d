// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace prelog {

/// Argument outside the domain of an operation (W out of range, snr <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Structurally invalid input data (overlapping segments, malformed JSON, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A model does not satisfy the assumptions a bound needs.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Numerical failure or a broken internal invariant.
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_domain(bool ok, const std::string& what)
{
    if (!ok) throw DomainError(what);
}

} // namespace detail
} // namespace prelog
