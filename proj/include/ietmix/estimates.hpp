/**
 * @file estimates.hpp
 * @brief Quantitative orbit estimates: special Birkhoff sums over single
 *        towers, decomposition of a long orbit into tower rides, verified
 *        growth bounds for the roof and its derivatives, the three-stage
 *        partial partitions used to control shearing up to a fixed time,
 *        and the power-law fit for deviations of ergodic averages.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ietmix/iet.hpp"
#include "ietmix/rational.hpp"
#include "ietmix/rauzy_veech.hpp"
#include "ietmix/roof.hpp"
#include "ietmix/util.hpp"

namespace ietmix {

/// Birkhoff sum of w along exactly one tower: h steps starting from x0,
/// where h is the return time of the level-n subinterval at domain position
/// j.  x0 must lie strictly inside that subinterval.  Throws SingularityHit
/// if the orbit lands on an exceptional point of w.
double special_birkhoff_sum(const RvTrajectory& traj, int n, int j, const Rat& x0,
                            const Observable& w);

/// One maximal full tower ride inside an orbit segment.
struct TowerRide {
    int position = -1;     ///< Domain position of the tower base at level n.
    int label = -1;
    long long start = 0;   ///< Orbit index at which the ride enters the base.
    long long height = 0;  ///< Return time of that base: the ride's exact length.
    Rat base_point;        ///< The orbit point inside the base subinterval.
};

/// A partial piece at either end of the decomposition: the tail of the tower
/// the orbit starts in, or the head of the tower it stops in.
struct EdgeRide {
    int position = -1;
    int label = -1;
    long long steps = 0;   ///< Orbit steps actually used (0 = empty piece).
    long long height = 0;  ///< Full height of the tower the piece lives in.
};

/// Decomposition of {T^i x0 : 0 <= i < r} into a leading partial tower, full
/// tower rides, and a trailing partial tower.  Step counts add up to r
/// exactly.
struct OrbitDecomposition {
    int level = 0;
    long long r = 0;
    Rat x0;
    EdgeRide head, tail;
    std::vector<TowerRide> towers;

    long long tower_steps() const;
    long long tower_count() const { return static_cast<long long>(towers.size()); }
};

/// Decompose the first r orbit points of x0 against the level-n towers.
/// Throws std::logic_error if the orbit and the tower structure disagree.
OrbitDecomposition decompose_orbit(const RvTrajectory& traj, const Rat& x0, long long r,
                                   int n);

/// One verified inequality: measured left side, assembled right side.
struct BsInequality {
    double lhs = 0;
    double rhs = 0;
    double slack = 0;  ///< rhs - lhs (or the signed margin for lower bounds).
    bool holds = false;
};

/// Measured Birkhoff sums of the roof and its derivatives at (x, r), the
/// orbit maxima entering the bounds, and the four assembled inequalities.
struct BsReport {
    Rat x;
    long long r = 0;
    int level = -1;        ///< Candidate index l with h^(n_l) <= r < h^(n_{l+1}).
    int step_lo = -1;      ///< Induction step n_l.
    int step_hi = -1;      ///< Induction step n_{l+1}.
    double s_f = 0, s_f1 = 0, s_f2 = 0;
    double u_max = 0;      ///< max over k and i < r of u~_k(T^i x).
    double v_max = 0;      ///< max over k and i < r of v~_k(T^i x).
    double max_log = 0;    ///< max over k and i < r of |log|T^i x - a_k||.
    double eps = 0;
    double kappa = 0;
    double f_const = 0;        ///< Constant used in the roof upper bound.
    double f_const_needed = 0; ///< Smallest constant that makes it hold here.
    BsInequality roof_upper;   ///< S_r(f)  <= (1 + eps/(C^+ + C^-)) r Int(f) + f_const max_log
    BsInequality deriv_upper;  ///< S_r(f') <= (C + eps) r log r + (C^- + 1)(floor(kappa) + 2) v_max
    BsInequality deriv_lower;  ///< S_r(f') >= (C - eps) r log r - (C^+ + 1)(floor(kappa) + 2) u_max
    BsInequality second_bound; ///< |S_r(f'')| against the combined growth bound

    bool all_hold() const {
        return roof_upper.holds && deriv_upper.holds && deriv_lower.holds &&
               second_bound.holds;
    }
};

/// Evaluate the four growth inequalities at (x, r).  kappa is taken from the
/// diagnostics report; eps < 0 selects the default |C|/2; f_const < 0 makes
/// the roof bound self-calibrating (it records the needed constant instead
/// of judging against a given one).  Preconditions checked: a candidate pair
/// must bracket r, and x must avoid the level's exclusion set when that set
/// is defined.
BsReport verify_bs_bounds(const RvTrajectory& traj, const DcReport& dc, const LogRoof& roof,
                          const Rat& x, long long r, double eps = -1.0,
                          double f_const = -1.0);

enum class PartitionStage { Preliminary, Stretching, Final };

/// One retained interval [lo, hi) with the orbit data sampled at it.
struct PartitionInterval {
    Rat lo, hi;
    long long r_mid = -1;  ///< Return count up to time t at the midpoint.
    double s_f = 0;        ///< Birkhoff sums of f, f', f'' at the midpoint...
    double s_f1 = 0;
    double s_f2 = 0;       ///< ...over r_mid steps.

    double length() const { return to_double(hi - lo); }
    Rat midpoint() const { return (lo + hi) / 2; }
};

/// A partial partition of [0, 1) at one construction stage, together with
/// the scale data the stage was built from and the constants fitted on it.
struct PartitionFamily {
    PartitionStage stage = PartitionStage::Preliminary;
    double t = 0;
    double margin = 0;  ///< The clearance multiplier M > 1.
    double alpha = 0;
    double m = 0;        ///< min f: the time unit converting t to iterates.
    long long steps = 0; ///< R(t) = floor(t/m) + 2, the continuity horizon.
    double c_f = 0;      ///< Fitted roof cap: f(T^j x) <= c_f log t on retained sets.

    int level = -1;      ///< l(t): candidate index with h^(n_l) <= R(t) < h^(n_{l+1}).
    int window = 0;      ///< L(t): how many candidate indices below l(t) are excluded.
    double c_prime = 0;        ///< Fitted |S_r(f')| / (t log t) lower constant.
    double c_tilde_prime = 0;  ///< Fitted |S_r(f')| / (t log t) upper constant.
    double c_second = 0;       ///< Fitted S_r(f'') margin constant.
    long long lookahead = 0;   ///< K(t): iterate window checked by the final stage.

    std::vector<PartitionInterval> intervals;
    double retained = 0;
    double removed = 0;
    long long dropped = 0;  ///< Intervals discarded by this stage alone.
};

/// Continuity intervals of T^R(t) with every piece that comes too close to a
/// breakpoint orbit removed or trimmed, then cut to the (ii) size band.
/// Degeneration to an empty family is reported through the fields, not
/// thrown.  Throws BoundViolation if a retained interval fails its promised
/// properties.
PartitionFamily build_partition_preliminary(const Iet& iet, const LogRoof& roof, double t,
                                            double margin, double alpha);

/// Remove every preliminary interval that meets the union of exclusion sets
/// for candidate levels l(t) - L(t) .. l(t), then sample the survivors'
/// return counts and derivative sums and assert the stretching bounds.
PartitionFamily build_partition_stretching(const PartitionFamily& prelim,
                                           const RvTrajectory& traj, const DcReport& dc,
                                           const LogRoof& roof);

/// Remove every stretching interval whose time-t image enters the thickened
/// (log t)^-2 neighborhood of the singularities anywhere in the K(t)-window,
/// and assert the clearance on the survivors.
PartitionFamily build_partition_final(const PartitionFamily& stretch,
                                      const RvTrajectory& traj, const LogRoof& roof);

/// An observable with a known integral, for deviation measurements.
struct DeviationObservable {
    std::function<double(double)> eval;
    double integral = 0;
    std::vector<Rat> exceptional;
};

/// Power-law fit of the worst deviation |S_r(h) - r Int(h)| over a geometric
/// r grid.  theta is the fitted exponent, constant the worst ratio to
/// r^theta.  degenerate flags the all-deviations-vanish case (theta = 0).
struct DeviationFit {
    double theta = 0;
    double constant = 0;
    bool degenerate = false;
    LinearFit fit;
    std::vector<long long> r_values;
    std::vector<double> deviations;
};

DeviationFit deviation_check(const Iet& iet, const DeviationObservable& h,
                             const std::vector<long long>& r_grid, int n_points = 32,
                             std::uint64_t seed = 20240515);

/// Observable wrappers for the roof and its attached singular functions,
/// carrying the exact exceptional points.
Observable roof_observable(const LogRoof& roof);
Observable roof_deriv_observable(const LogRoof& roof);
Observable aux_observable(const LogRoof& roof, AuxKind kind, int index);

/// Round v up to the nearest point of the 1e-12 grid, so a rational radius
/// built from a real one never undershoots it.
Rat snap_above(double v);

}  // namespace ietmix
