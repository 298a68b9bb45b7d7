/**
 * @file roof.hpp
 * @brief Roof functions with asymmetric logarithmic singularities.
 *
 * f(x) = sum_k [C_k^+ u_k(x) + C_k^- v_k(x)] + e(x), where
 * u_k(x) = 1 - log(x - a_k) on (a_k, a_k + 1] and
 * v_k(x) = 1 - log(a_k - x) on [a_k - 1, a_k), both extended 1-periodically,
 * and e is a trigonometric polynomial plus a constant.  The one-sided
 * constants C_k^+ (right of a_k) and C_k^- (left of a_k) are strictly
 * positive; the roof blows up like C_k^+ |log s| as x = a_k + s approaches
 * the singularity from the right and like C_k^- |log s| from the left.
 */
#pragma once

#include <string>
#include <vector>

#include "ietmix/errors.hpp"
#include "ietmix/iet.hpp"
#include "ietmix/rational.hpp"

namespace ietmix {

/// c0 + sum_j (c_j cos(2 pi j x) + s_j sin(2 pi j x)), j counted from 1.
struct TrigPoly {
    double constant = 0.0;
    std::vector<double> cos_coef;
    std::vector<double> sin_coef;

    double eval(double x) const;
    double deriv1(double x) const;
    double deriv2(double x) const;
    double integral01() const { return constant; }

    /// Sup-norm bounds from coefficient sums (exact for the constant term).
    double sup() const;
    double sup1() const;
    double sup2() const;

    bool operator==(const TrigPoly& o) const = default;
};

class LogRoof {
  public:
    /// Evaluation closer than this to a singularity raises SingularEval.
    static constexpr double kGuard = 1e-14;

    /**
     * Build a roof with the given interior singularities (strictly increasing,
     * in (0,1)) and one-sided constants.  The minimum of f is located at
     * construction; a roof that is not strictly positive is rejected.
     */
    static LogRoof make(std::vector<Rat> singularities, std::vector<double> c_plus,
                        std::vector<double> c_minus, TrigPoly smooth);

    /// Same, with the singularities pinned to the interior breakpoints of the exchange.
    static LogRoof aligned(const Iet& iet, std::vector<double> c_plus,
                           std::vector<double> c_minus, TrigPoly smooth);

    int singular_count() const { return static_cast<int>(a_.size()); }
    const std::vector<Rat>& singularities() const { return a_; }
    const std::vector<double>& right_constants() const { return cp_; }
    const std::vector<double>& left_constants() const { return cm_; }
    const TrigPoly& smooth_part() const { return e_; }

    /// f, f', f''.  Any real x is accepted and wrapped into [0,1).
    double eval(double x) const;
    double deriv1(double x) const;
    double deriv2(double x) const;

    double c_plus_total() const { return cp_total_; }
    double c_minus_total() const { return cm_total_; }
    /// The mixing constant C = -C^+ + C^-.
    double asymmetry_constant() const { return -cp_total_ + cm_total_; }

    /// Exact integral over one period: each log term contributes 2, e contributes
    /// its constant.
    double integral() const { return 2.0 * (cp_total_ + cm_total_) + e_.constant; }

    /// min f, found on a 10^5-point grid and sharpened by golden-section descent.
    double floor_min() const { return floor_; }

    /// Circular distance from x to the nearest singularity (infinity if none).
    double distance_to_singularity(double x) const;

    std::string to_json_string() const;
    /// Constants from JSON, singularities from the exchange's interior breakpoints.
    static LogRoof from_json_string(const std::string& text, const Iet& iet);

    bool operator==(const LogRoof& o) const {
        return a_ == o.a_ && cp_ == o.cp_ && cm_ == o.cm_ && e_ == o.e_;
    }

  private:
    LogRoof() = default;

    std::vector<Rat> a_;
    std::vector<double> ad_;  // singularities as doubles
    std::vector<double> cp_, cm_;
    TrigPoly e_;
    double cp_total_ = 0, cm_total_ = 0;
    double floor_ = 0;
};

/// True iff the roof's singularities are exactly the interior breakpoints of the exchange.
bool aligned_with(const LogRoof& roof, const Iet& iet);

/// The four auxiliary singular functions attached to one singularity a:
/// u = 1 - log of the wrapped right gap, v the mirrored left one,
/// u~ = -u' and v~ = v' (both positive).
double aux_u(double a, double x);
double aux_v(double a, double x);
double aux_u_tilde(double a, double x);
double aux_v_tilde(double a, double x);

enum class AuxKind { U, V, Utilde, Vtilde };

struct AuxSingular {
    AuxKind kind;
    int index;
    double eval(const LogRoof& roof, double x) const;
};

/// Result of the sign-combination scan over the one-sided constants.
struct AsymmetryCheck {
    bool asymmetric = false;
    std::vector<int> witness;  ///< coefficients in {-1,0,1}, empty when asymmetric
    double value = 0.0;        ///< value of the vanishing combination
};

/// Exhaustive scan of all 3^m sign vectors over the given constants.  The
/// roof overload scans [C_1^+, ..., C_1^-, ...].  Throws ResourceCap above
/// 20 constants.
AsymmetryCheck check_asymmetric(const std::vector<double>& constants, double tolerance);
AsymmetryCheck check_asymmetric(const LogRoof& roof, double tolerance);

}  // namespace ietmix
