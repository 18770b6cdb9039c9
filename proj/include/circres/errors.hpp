#pragma once

#include <stdexcept>
#include <string>

namespace circres {

/// Argument outside an operation's domain (vertex out of range, even N for a
/// closed form, u == v for a forest count, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The graph is disconnected, so resistance / hitting times are infinite.
class DisconnectedGraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Request falls in a case with no closed form (gcd(r, N) > 1, several
/// deleted classes, weighted specs).
class UnsupportedCaseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exact computation produced a value that must be an integer but is not.
/// Always indicates a bug.
class IntegralityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Monte Carlo run aborted (too many truncated walks).
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace circres
