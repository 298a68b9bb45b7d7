/**
 * @file rauzy_veech.hpp
 * @brief Rauzy-Veech induction: renormalization of interval exchanges,
 *        cocycle matrices, return-time towers, and mixing diagnostics.
 *
 * The induction state is kept label-based.  Each of the d intervals carries a
 * fixed label (its position in the original exchange); `top` lists the labels
 * in current domain order, `bot` in current image order, and lengths are
 * indexed by label.  One step compares the last interval of the domain with
 * the last interval of the image and induces on the complement of the shorter
 * one.  In this indexing every step matrix is the identity plus a single unit
 * entry at (winner, loser), and lengths satisfy lambda^(n) = A_n lambda^(n+1)
 * exactly.
 *
 * Lengths are never rescaled: the exchange after n steps acts on
 * [0, |I^(n)|) with |I^(n)| < 1, so its floors embed directly into the
 * original unit interval as return-time towers.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ietmix/errors.hpp"
#include "ietmix/iet.hpp"
#include "ietmix/imatrix.hpp"

namespace ietmix {

/// One induction step.
struct RvStep {
    enum class Kind { Top, Bottom };

    Kind kind;       ///< Top: the domain-last interval won; Bottom: image-last won.
    int winner = 0;  ///< Label of the longer of the two compared intervals.
    int loser = 0;   ///< Label subtracted from the winner.
    IMatrix matrix;  ///< Label-indexed elementary matrix A_n.
    Iet induced;     ///< The induced exchange, absolute (unrescaled) lengths.
};

/// Full induction state after some number of steps.
struct RvLevel {
    std::vector<int> top;     ///< Label occupying each domain position.
    std::vector<int> bot;     ///< Label occupying each image position.
    std::vector<Rat> length;  ///< Current interval lengths, label-indexed.
    std::vector<Int> height;  ///< Return times to the induced domain, label-indexed.
    IMatrix cumulative;       ///< Product of all step matrices so far.

    Rat total() const;
    Int max_height() const;

    /// Permutation of the induced exchange (domain position -> image position).
    Permutation permutation() const;
    /// Lengths in domain order.
    std::vector<Rat> domain_lengths() const;
    /// The induced exchange as a standalone map on [0, total()).
    Iet iet() const;
};

struct RvTrajectory {
    Iet base;                          ///< The exchange the induction started from.
    std::vector<RvStep> steps;         ///< Completed steps.
    std::vector<RvLevel> levels;       ///< levels[n] is the state before step n.
    std::optional<int> connection_at;  ///< Step index where a length tie stopped the run.

    int completed() const { return static_cast<int>(steps.size()); }
};

/// Perform one induction step.  Throws ConnectionError on a length tie and
/// std::invalid_argument if the permutation is reducible.
RvStep rv_step(const Iet& iet);

/// Run n_steps induction steps.  Throws ConnectionError (carrying the number
/// of completed steps) if a tie occurs before n_steps.
RvTrajectory iterate(const Iet& iet, int n_steps);

/// Like iterate, but a tie ends the run early and is recorded in
/// connection_at instead of being thrown.
RvTrajectory iterate_partial(const Iet& iet, int n_steps);

/// Product A_m A_{m+1} ... A_{n-1} of step matrices; identity when m == n.
IMatrix cocycle_window(const RvTrajectory& traj, int m, int n);

/// Brute-force check of one cocycle column: follow the midpoint of the
/// level-n interval with the given label until it first returns to the
/// induced domain, tallying visits to each original interval.
struct VisitCounts {
    std::vector<Int> visits;  ///< visits[i] = hits of original interval i.
    long long return_time = 0;
};
VisitCounts visit_count_oracle(const RvTrajectory& traj, int n, int label);

/// One floor of a return-time tower: the r-th forward image of a base interval.
struct TowerFloor {
    int position;    ///< Domain position of the base interval at level n.
    int label;
    long long step;  ///< How many times the base has been pushed forward (0 = base).
    Rat left;
    Rat length;
};

struct TowerPartition {
    std::vector<TowerFloor> floors;
    Rat total_measure() const;
};

/// Materialize all tower floors over the level-n induced domain.  The floors
/// partition [0, 1) exactly; crossing a discontinuity while climbing is a
/// logic error.  Throws ResourceCap if the floor count exceeds max_floors.
TowerPartition tower_partition(const RvTrajectory& traj, int n,
                               long long max_floors = 20'000'000);

/// Hilbert projective distance between strictly positive vectors:
/// log(max_i a_i/b_i) - log(min_i a_i/b_i).  Zero iff proportional.
double hilbert_distance(const std::vector<double>& a, const std::vector<double>& b);

/// A candidate induction time, with the balance and growth quantities
/// measured at it.
struct DcCandidate {
    int step;           ///< Induction step n_l.
    double nu;          ///< Max ratio of interval lengths at this step.
    double kappa;       ///< Max ratio of tower heights at this step.
    double norm;        ///< Max entry of A^(n_l, n_{l+1}); NaN for the last candidate.
    double norm_growth; ///< norm / l^tau (l counted from 1); NaN for the last candidate.
    double sigma;       ///< (log norm / log max_height(n_l))^tau_prime; NaN if undefined.
};

/// Cocycle window between candidate times l and l + lbar.
struct DcWindow {
    int l;  ///< 1-based candidate index the window starts at.
    int from_step = 0;
    int to_step = 0;
    bool positive = false;     ///< All window entries strictly positive.
    double diameter = 0;       ///< Max Hilbert distance between sampled column images.
    double contraction = 0;    ///< Max sampled d(Wa, Wb)/d(a, b); NaN if not positive.
};

struct DcReport {
    double nu_cap = 0;
    double kappa_cap = 0;
    double tau = 0;
    double tau_prime = 0;
    int lbar = 0;
    std::vector<DcCandidate> candidates;
    std::vector<DcWindow> windows;
    bool any_candidates = false;
};

/// Scan a trajectory for induction times whose length and height ratios stay
/// under the given caps, then measure cocycle growth and Hilbert contraction
/// across windows of lbar consecutive candidates.  Finding no candidates is a
/// valid outcome, reported rather than raised.
DcReport dc_diagnostics(const RvTrajectory& traj, double nu_cap, double kappa_cap,
                        int lbar = 2, double tau = 1.5, double tau_prime = 0.9,
                        std::uint64_t seed = 1);

}  // namespace ietmix
