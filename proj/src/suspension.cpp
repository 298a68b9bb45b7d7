#include "ietmix/suspension.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

#include "ietmix/errors.hpp"
#include "ietmix/util.hpp"

namespace ietmix {

namespace {

constexpr int kCells = 4096;

void fill_tables(const Iet& iet, std::vector<double>& breaks, std::vector<double>& shifts) {
    const int d = iet.size();
    breaks.clear();
    shifts.clear();
    for (int j = 1; j < d; ++j) breaks.push_back(to_double(iet.breakpoints()[j]));
    for (int j = 0; j < d; ++j) shifts.push_back(to_double(iet.shift(j)));
}

int table_index(const std::vector<double>& breaks, double x) {
    return static_cast<int>(std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
}

double step_once(const std::vector<double>& breaks, const std::vector<double>& shifts, double x) {
    double y = x + shifts[table_index(breaks, x)];
    if (y < 0.0) y = 0.0;
    if (y >= 1.0) y = std::nextafter(1.0, 0.0);
    return y;
}

}  // namespace

Suspension::Suspension(Iet iet, LogRoof roof) : iet_(std::move(iet)), roof_(std::move(roof)) {
    if (iet_.total() != Rat(1))
        throw std::invalid_argument("Suspension: the exchange must fill the unit interval");
    const auto& bp = iet_.breakpoints();
    for (const Rat& a : roof_.singularities()) {
        bool on_break = false;
        for (int j = 1; j < iet_.size(); ++j)
            if (a == bp[j]) on_break = true;
        if (!on_break)
            throw std::invalid_argument("Suspension: roof singularity off the exchange breakpoints");
    }
    inverse_ = iet_.inverse();
    fill_tables(iet_, breaks_, shifts_);
    fill_tables(inverse_, inv_breaks_, inv_shifts_);

    // Piecewise-constant roof bound, one cap per cell.  Minus the guard bands
    // around the singularities, the singular part of f is convex on each cell
    // fragment, so its maximum there sits at a fragment endpoint.  The smooth
    // part is bounded through its derivative from three probes.
    std::vector<double> ad;
    for (const Rat& a : roof_.singularities()) ad.push_back(to_double(a));
    const auto& cp = roof_.right_constants();
    const auto& cm = roof_.left_constants();
    auto singular_sum = [&](double x) {
        double s = 0.0;
        for (std::size_t k = 0; k < ad.size(); ++k)
            s += cp[k] * aux_u(ad[k], x) + cm[k] * aux_v(ad[k], x);
        return s;
    };
    const TrigPoly& e = roof_.smooth_part();
    const double width = 1.0 / kCells;
    cell_cap_.assign(kCells, 0.0);
    cell_cum_.assign(kCells, 0.0);
    double cum = 0.0;
    for (int i = 0; i < kCells; ++i) {
        const double lo = i * width, hi = (i + 1) * width;
        std::vector<std::pair<double, double>> bands;
        for (double a : ad)
            for (double off : {-1.0, 0.0, 1.0}) {
                double c = a + off;
                if (c + kOrbitGuard > lo && c - kOrbitGuard < hi)
                    bands.push_back({c - kOrbitGuard, c + kOrbitGuard});
            }
        std::sort(bands.begin(), bands.end());
        double cap_sing = 0.0;
        double cursor = lo;
        auto probe = [&](double x) { cap_sing = std::max(cap_sing, singular_sum(x)); };
        for (const auto& [bl, br] : bands) {
            if (bl > cursor) {
                probe(cursor);
                probe(bl);
            }
            cursor = std::max(cursor, br);
        }
        if (cursor < hi) {
            probe(cursor);
            probe(hi);
        }
        double cap_smooth = std::max({e.eval(lo), e.eval(0.5 * (lo + hi)), e.eval(hi)}) +
                            e.sup1() * width / 4.0;
        cell_cap_[i] = cap_sing + cap_smooth + 1e-9;
        cum += cell_cap_[i] * width;
        cell_cum_[i] = cum;
    }
}

int Suspension::base_index(double x) const { return table_index(breaks_, x); }

double Suspension::apply_forward(double x) const { return step_once(breaks_, shifts_, x); }

double Suspension::apply_backward(double x) const { return step_once(inv_breaks_, inv_shifts_, x); }

void Suspension::ensure_off_singularity(double x, long long step) const {
    if (roof_.distance_to_singularity(x) < kOrbitGuard) throw SingularityHit(step);
}

long long Suspension::return_count(double x, double t) const {
    if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("return_count: base point outside [0,1)");
    if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("return_count: time must be finite and nonnegative");
    const long long ceiling = static_cast<long long>(t / roof_.floor_min()) + 2;
    double cur = x;
    KahanSum sum;
    long long r = 0;
    for (;;) {
        ensure_off_singularity(cur, r);
        double fx = roof_.eval(cur);
        if (sum.value() + fx > t) break;
        sum.add(fx);
        cur = apply_forward(cur);
        ++r;
        if (r > ceiling) throw std::logic_error("return_count: accumulation failed to reach the target");
    }
    return r;
}

double Suspension::birkhoff_f(double x, long long r) const {
    if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("birkhoff_f: base point outside [0,1)");
    if (r < 0) throw std::invalid_argument("birkhoff_f: negative iterate count");
    double cur = x;
    KahanSum sum;
    for (long long i = 0; i < r; ++i) {
        ensure_off_singularity(cur, i);
        sum.add(roof_.eval(cur));
        cur = apply_forward(cur);
    }
    return sum.value();
}

double Suspension::birkhoff_f1(double x, long long r) const {
    if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("birkhoff_f1: base point outside [0,1)");
    if (r < 0) throw std::invalid_argument("birkhoff_f1: negative iterate count");
    double cur = x;
    KahanSum sum;
    for (long long i = 0; i < r; ++i) {
        ensure_off_singularity(cur, i);
        sum.add(roof_.deriv1(cur));
        cur = apply_forward(cur);
    }
    return sum.value();
}

SuspensionPoint Suspension::flow(SuspensionPoint p, double t) const {
    if (!(p.x >= 0.0 && p.x < 1.0)) throw std::invalid_argument("flow: base point outside [0,1)");
    if (!(p.y >= 0.0) || !std::isfinite(p.y)) throw std::invalid_argument("flow: height must be finite and nonnegative");
    if (!std::isfinite(t)) throw std::invalid_argument("flow: time must be finite");
    ensure_off_singularity(p.x, 0);
    if (!(p.y < roof_.eval(p.x))) throw std::invalid_argument("flow: the point lies above the roof");

    const double target = p.y + t;
    const long long ceiling =
        static_cast<long long>((std::abs(t) + p.y) / roof_.floor_min()) + 4;
    double cur = p.x;
    if (target >= 0.0) {
        KahanSum sum;
        long long i = 0;
        double fx = roof_.eval(cur);
        while (sum.value() + fx <= target) {
            sum.add(fx);
            cur = apply_forward(cur);
            ++i;
            if (i > ceiling) throw std::logic_error("flow: forward walk failed to reach the target");
            ensure_off_singularity(cur, i);
            fx = roof_.eval(cur);
        }
        return {cur, target - sum.value()};
    }
    KahanSum acc;
    acc.add(target);
    long long i = 0;
    while (acc.value() < 0.0) {
        cur = apply_backward(cur);
        --i;
        if (-i > ceiling) throw std::logic_error("flow: backward walk failed to reach the target");
        ensure_off_singularity(cur, i);
        acc.add(roof_.eval(cur));
    }
    return {cur, acc.value()};
}

SampleBatch Suspension::sample_uniform(std::uint64_t seed, long long n) const {
    if (n < 1) throw std::invalid_argument("sample_uniform: need at least one point");
    SampleBatch out;
    out.points.reserve(static_cast<std::size_t>(n));
    out.majorant_mass = cell_cum_.back();
    const double mass = cell_cum_.back();
    for (long long k = 0; k < n; ++k) {
        std::uint64_t state = derive_seed(seed, static_cast<std::uint64_t>(k));
        for (;;) {
            ++out.proposals;
            double pick = uniform53(splitmix64(state)) * mass;
            int cell = static_cast<int>(
                std::upper_bound(cell_cum_.begin(), cell_cum_.end(), pick) - cell_cum_.begin());
            if (cell >= kCells) cell = kCells - 1;
            double x = (cell + uniform53(splitmix64(state))) / kCells;
            double y = uniform53(splitmix64(state)) * cell_cap_[cell];
            if (roof_.distance_to_singularity(x) < kOrbitGuard) {
                ++out.singular_discards;
                continue;
            }
            if (y < roof_.eval(x)) {
                out.points.push_back({x, y});
                break;
            }
        }
    }
    return out;
}

bool sigma_set_member(const RvTrajectory& traj, const DcReport& dc, const LogRoof& roof,
                      double x, int l) {
    if (l < 0 || l + 1 >= static_cast<int>(dc.candidates.size()))
        throw std::invalid_argument("sigma_set_member: needs candidate levels l and l+1");
    const double sigma = dc.candidates[l].sigma;
    if (std::isnan(sigma))
        throw std::invalid_argument("sigma_set_member: the contraction exponent is undefined at this level");
    if (sigma == 0.0) return false;

    const Iet& T = traj.base;
    const double total = to_double(T.total());
    if (!(x >= 0.0 && x < total)) throw std::invalid_argument("sigma_set_member: point outside the base interval");

    const int n_l = dc.candidates[l].step;
    const int n_next = dc.candidates[static_cast<std::size_t>(l) + 1].step;
    const double threshold = sigma * to_double(traj.levels[n_l].total());
    const double horizon_f = sigma * to_double(traj.levels[n_next].max_height());
    if (horizon_f > 1e8) throw ResourceCap("sigma_set_member: orbit horizon exceeds the scan budget");
    const long long horizon = static_cast<long long>(std::floor(horizon_f));

    std::vector<double> breaks, shifts;
    fill_tables(T, breaks, shifts);
    std::vector<double> ad;
    for (const Rat& a : roof.singularities()) ad.push_back(to_double(a));

    double cur = x;
    for (long long i = 0; i <= horizon; ++i) {
        for (double a : ad)
            if (std::abs(a - cur) <= threshold) return true;
        cur += shifts[table_index(breaks, cur)];
        if (cur < 0.0) cur = 0.0;
        if (cur >= total) cur = std::nextafter(total, 0.0);
    }
    return false;
}

namespace {

/// Adaptive Simpson on [lo, hi]; the depth cap accepts the refined estimate as is.
double simpson_rec(const std::function<double(double)>& g, double lo, double hi, double flo,
                   double fmid, double fhi, double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double flm = g(lm), frm = g(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    const double refined = left + right;
    if (depth <= 0 || std::abs(refined - whole) <= 15.0 * tol)
        return refined + (refined - whole) / 15.0;
    return simpson_rec(g, lo, mid, flo, flm, fmid, left, 0.5 * tol, depth - 1) +
           simpson_rec(g, mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& g, double lo, double hi, double tol) {
    if (!(hi > lo)) return 0.0;
    const double mid = 0.5 * (lo + hi);
    const double flo = g(lo), fmid = g(mid), fhi = g(hi);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    return simpson_rec(g, lo, hi, flo, fmid, fhi, whole, tol, 22);
}

}  // namespace

ShearProfile shear_profile(const Suspension& susp, double a, double b, double t) {
    if (!(a >= 0.0 && a < b && b <= 1.0))
        throw std::invalid_argument("shear_profile: need 0 <= a < b <= 1");
    if (!std::isfinite(t) || t < 0.0)
        throw std::invalid_argument("shear_profile: time must be finite and nonnegative");
    constexpr double kRes = 1e-12;
    constexpr long long kPieceBudget = 10000;

    auto rc = [&](double x) { return susp.return_count(x, t); };
    double right = b - kRes;
    if (right <= a) right = 0.5 * (a + b);
    const long long ra = rc(a);
    const long long rb = rc(right);

    const LogRoof& roof = susp.roof();
    int dir;
    if (roof.c_plus_total() > roof.c_minus_total())
        dir = +1;
    else if (roof.c_minus_total() > roof.c_plus_total())
        dir = -1;
    else
        dir = (rb >= ra) ? +1 : -1;

    const int kScan = 64;
    long long prev = ra;
    for (int i = 1; i <= kScan; ++i) {
        const double xi = (i == kScan) ? right : a + (b - a) * i / kScan;
        const long long ri = rc(xi);
        if (dir > 0 ? ri < prev : ri > prev) throw ShearNonMonotone(xi);
        prev = ri;
    }

    std::vector<std::pair<double, long long>> found;  // (jump point, value taken from it on)
    std::function<void(double, double, long long, long long)> collect =
        [&](double lo, double hi, long long rl, long long rh) {
            if (rl == rh) return;
            if (hi - lo <= kRes) {
                const long long step = dir > 0 ? 1 : -1;
                for (long long v = rl + step;; v += step) {
                    found.push_back({hi, v});
                    if (static_cast<long long>(found.size()) > kPieceBudget)
                        throw ResourceCap("shear_profile: piece budget exceeded");
                    if (v == rh) break;
                }
                return;
            }
            const double mid = 0.5 * (lo + hi);
            const long long rm = rc(mid);
            const bool in_range = dir > 0 ? (rm >= rl && rm <= rh) : (rm <= rl && rm >= rh);
            if (!in_range) throw ShearNonMonotone(mid);
            collect(lo, mid, rl, rm);
            collect(mid, hi, rm, rh);
        };
    collect(a, right, ra, rb);

    ShearProfile out;
    out.a = a;
    out.b = b;
    out.t = t;
    out.jumps.push_back(a);
    out.piece_r.push_back(ra);
    for (const auto& [u, v] : found) {
        out.jumps.push_back(u);
        out.piece_r.push_back(v);
    }
    out.jumps.push_back(b);

    auto stretch_integrand = [&](double lo, double hi, long long r) {
        return std::function<double(double)>([&susp, lo, hi, r](double s) {
            try {
                return std::abs(susp.birkhoff_f1(s, r));
            } catch (const SingularityHit&) {
                const double nudged = s + (s < 0.5 * (lo + hi) ? kRes : -kRes);
                return std::abs(susp.birkhoff_f1(nudged, r));
            }
        });
    };
    out.stretch.push_back(0.0);
    KahanSum acc;
    for (std::size_t i = 0; i + 1 < out.jumps.size(); ++i) {
        const double lo = out.jumps[i], hi = out.jumps[i + 1];
        const double tol = 1e-9 * std::max(1.0, hi - lo);
        acc.add(integrate(stretch_integrand(lo, hi, out.piece_r[i]), lo, hi, tol));
        out.stretch.push_back(acc.value());
    }
    out.total_stretch = acc.value();

    const long long r_last = out.piece_r.back();
    const double s_a = susp.birkhoff_f(a, r_last);
    double s_b;
    try {
        s_b = susp.birkhoff_f(b < 1.0 ? b : right, r_last);
    } catch (const SingularityHit&) {
        s_b = susp.birkhoff_f(right, r_last);
    }
    out.endpoint_delay = s_a - s_b;
    return out;
}

}  // namespace ietmix
