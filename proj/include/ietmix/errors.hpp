/**
 * @file errors.hpp
 * @brief Structured error types.  Every failure mode that callers are meant
 *        to react to carries its data as fields, not as message text.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace ietmix {

/// Rauzy-Veech induction hit a tie (a connection): the two candidate
/// intervals have exactly equal length and the step is undefined.
struct ConnectionError : std::runtime_error {
    int steps_completed;
    explicit ConnectionError(int steps)
        : std::runtime_error("rauzy-veech connection after " + std::to_string(steps) + " steps"),
          steps_completed(steps) {}
};

/// An orbit ran into an exceptional / singular point of an observable.
struct SingularityHit : std::runtime_error {
    long long index;  ///< orbit index i such that T^i x is the offending point
    explicit SingularityHit(long long i)
        : std::runtime_error("orbit hits a singular point at iterate " + std::to_string(i)), index(i) {}
};

/// Numeric evaluation was requested closer to a singularity than the guard radius.
struct SingularEval : std::runtime_error {
    double distance;
    explicit SingularEval(double dist)
        : std::runtime_error("evaluation within guard radius of a singularity"), distance(dist) {}
};

/// A configured resource cap (memory, interval count, crossing budget) was exceeded.
struct ResourceCap : std::runtime_error {
    explicit ResourceCap(const std::string& what_cap) : std::runtime_error(what_cap) {}
};

/// The return count failed to be monotone across an interval that was
/// supposed to be a good (shearing) one.
struct ShearNonMonotone : std::runtime_error {
    double at;  ///< base coordinate where the violation surfaced
    explicit ShearNonMonotone(double x)
        : std::runtime_error("return count is not monotone on the interval"), at(x) {}
};

/// A section trajectory stopped producing crossings within the time cap.
struct CrossingStarvation : std::runtime_error {
    double time_reached;
    explicit CrossingStarvation(double t)
        : std::runtime_error("no section crossing before time cap"), time_reached(t) {}
};

/// A quantitative bound that a construction promises on its retained output
/// failed on a concrete interval or orbit point.
struct BoundViolation : std::runtime_error {
    explicit BoundViolation(const std::string& detail) : std::runtime_error(detail) {}
};

}  // namespace ietmix
