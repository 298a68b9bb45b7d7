/**
 * @file suspension.hpp
 * @brief The suspension flow over an interval exchange under a log-singular roof.
 *
 * Phase space: {(x, y) : x in [0,1), 0 <= y < f(x)} with unit vertical speed
 * and the identification (x, f(x)) ~ (Tx, 0).  The invariant measure is
 * dx dy; its total mass is the integral of f.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "ietmix/iet.hpp"
#include "ietmix/rauzy_veech.hpp"
#include "ietmix/roof.hpp"

namespace ietmix {

struct SuspensionPoint {
    double x = 0;
    double y = 0;
};

/// Points drawn uniformly under the roof graph, with the sampler's tallies.
struct SampleBatch {
    std::vector<SuspensionPoint> points;
    long long proposals = 0;         ///< rejection-sampling attempts consumed
    long long singular_discards = 0; ///< proposals that fell inside a singularity guard
    double majorant_mass = 0;        ///< integral of the piecewise-constant roof bound
};

/// One horizontal segment pushed through the flow for time t: the pieces on
/// which the return count is constant, with the accumulated vertical stretch.
struct ShearProfile {
    double a = 0, b = 0, t = 0;
    std::vector<double> jumps;       ///< u_0 = a < u_1 < ... < u_{N+1} = b
    std::vector<long long> piece_r;  ///< r(x,t) on [jumps[i], jumps[i+1])
    std::vector<double> stretch;     ///< cumulative vertical stretch at each u_i
    double total_stretch = 0;        ///< stretch over the whole segment
    double endpoint_delay = 0;       ///< S_r(f)(a) - S_r(f)(b) at the final r

    int jump_count() const { return static_cast<int>(jumps.size()) - 2; }
};

class Suspension {
  public:
    /// Orbit points closer than this to a roof singularity abort the walk.
    static constexpr double kOrbitGuard = 1e-13;

    /// The exchange must act on [0,1) and every roof singularity must sit on
    /// one of its breakpoints.
    Suspension(Iet iet, LogRoof roof);

    const Iet& iet() const { return iet_; }
    const LogRoof& roof() const { return roof_; }

    /// Mass of the invariant measure (the integral of the roof).
    double area() const { return roof_.integral(); }

    /// One application of T (resp. T^-1) in binary64.
    double apply_forward(double x) const;
    double apply_backward(double x) const;
    int base_index(double x) const;

    /// Largest r >= 0 with S_r(f)(x) <= t.
    long long return_count(double x, double t) const;

    /// Compensated Birkhoff sums of f and f' along the forward orbit.
    double birkhoff_f(double x, long long r) const;
    double birkhoff_f1(double x, long long r) const;

    /// phi_t; t may be negative (walks the inverse exchange).
    SuspensionPoint flow(SuspensionPoint p, double t) const;

    /// n points uniform under the roof via rejection from a per-cell
    /// piecewise-constant majorant.  Deterministic for a fixed seed.
    SampleBatch sample_uniform(std::uint64_t seed, long long n) const;

    const std::vector<double>& cell_caps() const { return cell_cap_; }

  private:
    void ensure_off_singularity(double x, long long step) const;

    Iet iet_;
    Iet inverse_;
    LogRoof roof_;
    std::vector<double> breaks_, shifts_;          // forward exchange tables
    std::vector<double> inv_breaks_, inv_shifts_;  // inverse exchange tables
    std::vector<double> cell_cap_;                 // roof majorant, 4096 cells
    std::vector<double> cell_cum_;                 // cumulative cap mass for sampling
};

/**
 * Membership test for the singular-avoidance set: true iff some forward
 * iterate T^i x with 0 <= i <= floor(sigma_l h^(n_{l+1})) comes within
 * sigma_l lambda^(n_l) of a singularity, where lambda^(n) is the total length
 * of the level-n induced interval.  Requires candidates l and l+1 in the
 * report; a degenerate sigma_l (NaN) is rejected.
 */
bool sigma_set_member(const RvTrajectory& traj, const DcReport& dc, const LogRoof& roof,
                      double x, int l);

/**
 * Decompose the horizontal segment [a,b) x {0} flowed for time t into its
 * constant-return-count pieces.  Jump points are located by bisection to
 * 1e-12 and assigned to the right piece; the per-piece vertical stretch is
 * the integral of |S_r(f')| by adaptive quadrature.  Throws ShearNonMonotone
 * if the return count is not monotone in the direction dictated by the sign
 * of C^+ - C^-.
 */
ShearProfile shear_profile(const Suspension& susp, double a, double b, double t);

}  // namespace ietmix
