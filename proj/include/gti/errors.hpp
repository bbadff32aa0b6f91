#pragma once

#include <stdexcept>
#include <string>

namespace gti {

/// Input outside the mathematical domain of an operation (m < 3, mixed
/// parity tuples, negative chamber coordinates, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller misuse: mismatched field contexts, wrong dimensions, unknown rows.
class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A desk-scale guard was exceeded.
class resource_error : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace gti
