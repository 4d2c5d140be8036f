#pragma once

#include <stdexcept>
#include <string>

namespace isqm {

/// Input outside an operation's domain (zero divisor, 0^0, bad parameters).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NotResidueError : public DomainError {
public:
    using DomainError::DomainError;
};

class NotInvertibleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The group or field does not meet a variant's preconditions.
class UnsupportedGroupError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A linear congruence with d not dividing the right-hand side.
class NoSolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Both sides of a collision congruence vanish mod N: no information.
class DegenerateCollisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TooManyCandidatesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scripted decision list ran out before the walk finished.
class DecisionExhaustedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace isqm
