/**
 * @file exact_orbit.hpp
 * @brief Fast exact orbit iteration.
 *
 * Every point of an orbit of an exchange with rational data lives on the
 * lattice (1/D)Z where D is the common denominator of the starting point and
 * the lengths.  Representing positions as integer numerators over that fixed
 * D turns an orbit step into one big-integer add and a comparison or two;
 * no gcd reduction ever runs in the loop.
 */
#pragma once

#include <vector>

#include "ietmix/iet.hpp"
#include "ietmix/rational.hpp"

namespace ietmix {

class ExactOrbit {
  public:
    ExactOrbit(const Iet& T, const Rat& x0);

    /// Current interval index (same convention as Iet::interval_index).
    int index() const {
        int j = 0;
        while (num_ >= breaks_[j + 1]) ++j;
        return j;
    }

    void step() { num_ += shift_[index()]; }

    /// One inverse step (precomputed from T^-1).
    void step_back() { num_ += back_shift_[back_index()]; }

    double value() const { return to_double(num_) * inv_den_; }
    Rat position() const { return Rat(num_, den_); }
    const Int& numerator() const { return num_; }
    const Int& denominator() const { return den_; }

    /// Move to an arbitrary exact position (must lie in [0, total)).
    void reset(const Rat& x0);

  private:
    int back_index() const {
        int j = 0;
        while (num_ >= back_breaks_[j + 1]) ++j;
        return j;
    }

    Int den_;
    double inv_den_ = 0.0;
    std::vector<Int> breaks_, shift_;
    std::vector<Int> back_breaks_, back_shift_;
    Int num_;
};

/// One piece of an interval orbit: the half-open [lo/D, hi/D).
struct OrbitPiece {
    Int lo, hi;
};

/**
 * Exact pushforward of an interval under an exchange.  Each step() maps every
 * piece by T, splitting pieces that straddle a domain breakpoint, so after j
 * steps the pieces tile T^j([lo, hi)) exactly.
 */
class IntervalOrbit {
  public:
    IntervalOrbit(const Iet& T, const Rat& lo, const Rat& hi);

    void step();

    int piece_count() const { return static_cast<int>(pieces_.size()); }
    const std::vector<OrbitPiece>& pieces() const { return pieces_; }
    const Int& denominator() const { return den_; }

    /// True while the interval has never been split (continuity of T^j so far).
    bool intact() const { return pieces_.size() == 1; }

    /// Exact distance from the closure of the piece union to p (0 if covered).
    Rat distance_to(const Rat& p) const;

  private:
    Int den_;
    std::vector<Int> breaks_, shift_;
    std::vector<OrbitPiece> pieces_;
};

}  // namespace ietmix
