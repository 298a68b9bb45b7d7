/**
 * @file iet.hpp
 * @brief Interval exchange transformations with exact rational data.
 *
 * An exchange of d intervals is determined by a permutation pi and positive
 * lengths lambda_0..lambda_{d-1}.  The domain [0, L) is split at the partial
 * sums a_j of the lengths; the piece starting at a_j is translated so that the
 * pieces tile [0, L) again in the order prescribed by pi.  All endpoint
 * arithmetic is exact; a separate fixed-denominator fast path for long orbits
 * lives in exact_orbit.hpp.
 *
 * The map is defined on half-open pieces [a_j, a_{j+1}), so T is a bijection
 * of [0, L) and orbits never need tie-breaking.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ietmix/errors.hpp"
#include "ietmix/permutation.hpp"
#include "ietmix/rational.hpp"

namespace ietmix {

class Iet {
  public:
    Iet() = default;

    /**
     * Canonical constructor: validates dimensions and positivity and rescales
     * the lengths exactly so they sum to 1.  Reducible permutations are
     * accepted here (the identity exchange is a legitimate, if dull, map);
     * renormalization rejects them at its own door.
     */
    static Iet unit(const Permutation& pi, std::vector<Rat> lengths);

    /// Same validation, but lengths are kept as given (total may differ from 1).
    /// Used for induced maps living on a shortened interval.
    static Iet raw(const Permutation& pi, std::vector<Rat> lengths);

    int size() const { return pi_.size(); }
    const Permutation& permutation() const { return pi_; }
    const std::vector<Rat>& lengths() const { return lam_; }
    const Rat& total() const { return a_.back(); }

    /// Domain breakpoints a_0 = 0 < a_1 < ... < a_d = total.
    const std::vector<Rat>& breakpoints() const { return a_; }
    /// Image breakpoints a'_0 = 0 < ... < a'_d = total.
    const std::vector<Rat>& image_breakpoints() const { return ap_; }

    /// Index j with x in [a_j, a_{j+1}).  Throws std::domain_error outside [0, total).
    int interval_index(const Rat& x) const;

    /// The translation applied on piece j: T(x) = x + shift(j) there.
    Rat shift(int j) const { return ap_[pi_.apply(j)] - a_[j]; }

    Rat apply(const Rat& x) const;

    /// T^-1, again an exchange of d intervals (inverse permutation, lengths
    /// re-ordered by image position).
    Iet inverse() const;

    bool operator==(const Iet& o) const { return pi_ == o.pi_ && lam_ == o.lam_; }

    std::string to_json_string() const;
    static Iet from_json_string(const std::string& text);

  private:
    Iet(const Permutation& pi, std::vector<Rat> lengths, bool normalize);

    Permutation pi_;
    std::vector<Rat> lam_;
    std::vector<Rat> a_, ap_;
};

/**
 * A real-valued function on [0, L) minus finitely many exceptional points.
 * Evaluating at an exceptional point is an error (SingularityHit at the
 * orbit level), never a silent NaN.
 */
struct Observable {
    std::function<double(double)> eval;                 ///< numeric evaluation
    std::function<Rat(const Rat&)> eval_exact;          ///< optional exact evaluation
    std::vector<Rat> exceptional;                       ///< exact exceptional points

    bool is_exceptional(const Rat& x) const {
        for (const auto& p : exceptional)
            if (p == x) return true;
        return false;
    }
};

/// Birkhoff sum sum_{i<r} g(T^i x) along the exact orbit, accumulated with
/// compensated summation.  Throws SingularityHit{i} if T^i x is exceptional.
double birkhoff_sum(const Iet& T, const Observable& g, const Rat& x, long long r);

/// Fully exact variant; requires g.eval_exact.
Rat birkhoff_sum_exact(const Iet& T, const Observable& g, const Rat& x, long long r);

/// A forward orbit of an interior breakpoint landing on an interior breakpoint.
struct KeaneCollision {
    int from_breakpoint;  ///< k: the orbit of a_k ...
    int to_breakpoint;    ///< ... hits a_j ...
    long long at_step;    ///< ... after exactly this many steps (>= 1)
};

/// Scan breakpoint orbits up to n_steps for collisions.  Rational exchanges
/// always collide eventually; callers that need minimality over a horizon use
/// this to flag it rather than absorb it silently.
std::optional<KeaneCollision> keane_collision(const Iet& T, long long n_steps);

}  // namespace ietmix
