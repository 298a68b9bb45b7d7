#include "ietmix/rauzy_veech.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ietmix/exact_orbit.hpp"
#include "ietmix/util.hpp"

namespace ietmix {

namespace {

int find_label(const std::vector<int>& row, int label) {
    for (int p = 0; p < static_cast<int>(row.size()); ++p)
        if (row[p] == label) return p;
    throw std::logic_error("induction row lost a label");
}

struct StepOutcome {
    RvStep::Kind kind;
    int winner;
    int loser;
};

// One in-place induction step on the label state.
StepOutcome advance(std::vector<int>& top, std::vector<int>& bot,
                    std::vector<Rat>& length, int steps_done) {
    const int d = static_cast<int>(top.size());
    const int alpha_t = top[d - 1];
    const int alpha_b = bot[d - 1];
    if (length[alpha_t] == length[alpha_b]) throw ConnectionError(steps_done);
    if (length[alpha_t] > length[alpha_b]) {
        // Domain-last interval wins: shorten it and reseat the image-last label
        // right after the winner in the image order.
        length[alpha_t] -= length[alpha_b];
        bot.pop_back();
        bot.insert(bot.begin() + find_label(bot, alpha_t) + 1, alpha_b);
        return {RvStep::Kind::Top, alpha_t, alpha_b};
    }
    length[alpha_b] -= length[alpha_t];
    top.pop_back();
    top.insert(top.begin() + find_label(top, alpha_b) + 1, alpha_t);
    return {RvStep::Kind::Bottom, alpha_b, alpha_t};
}

RvLevel make_level(std::vector<int> top, std::vector<int> bot, std::vector<Rat> length,
                   IMatrix cumulative) {
    RvLevel lv;
    lv.top = std::move(top);
    lv.bot = std::move(bot);
    lv.length = std::move(length);
    lv.cumulative = std::move(cumulative);
    lv.height = lv.cumulative.column_sums();
    return lv;
}

RvTrajectory run(const Iet& iet, int n_steps, bool record_connection) {
    if (n_steps < 0) throw std::invalid_argument("iterate: negative step count");
    if (!iet.permutation().is_irreducible())
        throw std::invalid_argument("iterate: permutation is reducible");

    const int d = iet.size();
    std::vector<int> top(d), bot(d);
    for (int p = 0; p < d; ++p) {
        top[p] = p;
        bot[iet.permutation().apply(p)] = p;
    }
    std::vector<Rat> length = iet.lengths();
    IMatrix cumulative = IMatrix::identity(d);

    RvTrajectory traj;
    traj.base = iet;
    traj.levels.push_back(make_level(top, bot, length, cumulative));

    for (int k = 0; k < n_steps; ++k) {
        StepOutcome out;
        try {
            out = advance(top, bot, length, k);
        } catch (const ConnectionError&) {
            if (!record_connection) throw;
            traj.connection_at = k;
            break;
        }
        RvStep st;
        st.kind = out.kind;
        st.winner = out.winner;
        st.loser = out.loser;
        st.matrix = IMatrix::identity(d);
        st.matrix.at(out.winner, out.loser) += 1;
        cumulative = cumulative * st.matrix;
        traj.levels.push_back(make_level(top, bot, length, cumulative));
        st.induced = traj.levels.back().iet();
        traj.steps.push_back(std::move(st));
    }
    return traj;
}

}  // namespace

Rat RvLevel::total() const {
    Rat s = 0;
    for (const Rat& x : length) s += x;
    return s;
}

Int RvLevel::max_height() const {
    Int m = 0;
    for (const Int& h : height)
        if (h > m) m = h;
    return m;
}

Permutation RvLevel::permutation() const {
    const int d = static_cast<int>(top.size());
    std::vector<int> pos_in_bot(d, 0);
    for (int p = 0; p < d; ++p) pos_in_bot[bot[p]] = p;
    std::vector<int> img(d);
    for (int p = 0; p < d; ++p) img[p] = pos_in_bot[top[p]];
    return Permutation(img);
}

std::vector<Rat> RvLevel::domain_lengths() const {
    std::vector<Rat> out(top.size());
    for (size_t p = 0; p < top.size(); ++p) out[p] = length[top[p]];
    return out;
}

Iet RvLevel::iet() const { return Iet::raw(permutation(), domain_lengths()); }

RvStep rv_step(const Iet& iet) {
    RvTrajectory traj = run(iet, 1, false);
    return traj.steps.at(0);
}

RvTrajectory iterate(const Iet& iet, int n_steps) { return run(iet, n_steps, false); }

RvTrajectory iterate_partial(const Iet& iet, int n_steps) { return run(iet, n_steps, true); }

IMatrix cocycle_window(const RvTrajectory& traj, int m, int n) {
    if (m < 0 || n < m || n > traj.completed())
        throw std::invalid_argument("cocycle_window: bad step range");
    const int d = traj.base.size();
    IMatrix w = IMatrix::identity(d);
    for (int k = m; k < n; ++k) w = w * traj.steps[k].matrix;
    return w;
}

VisitCounts visit_count_oracle(const RvTrajectory& traj, int n, int label) {
    if (n < 0 || n > traj.completed())
        throw std::invalid_argument("visit_count_oracle: level out of range");
    const RvLevel& lv = traj.levels[n];
    const int d = static_cast<int>(lv.top.size());
    if (label < 0 || label >= d)
        throw std::invalid_argument("visit_count_oracle: label out of range");

    // Midpoint of the level-n interval carrying the requested label.
    const int pos = find_label(lv.top, label);
    Rat left = 0;
    for (int p = 0; p < pos; ++p) left += lv.length[lv.top[p]];
    const Rat x0 = left + lv.length[label] / 2;
    const Rat domain_total = lv.total();

    VisitCounts vc;
    vc.visits.assign(d, Int(0));
    ExactOrbit orbit(traj.base, x0);
    const long long cap = 1'000'000'000;
    for (long long t = 0;; ++t) {
        if (t >= cap) throw ResourceCap("visit_count_oracle: orbit did not return");
        vc.visits[orbit.index()] += 1;
        orbit.step();
        if (orbit.position() < domain_total) {
            vc.return_time = t + 1;
            break;
        }
    }
    return vc;
}

Rat TowerPartition::total_measure() const {
    Rat s = 0;
    for (const TowerFloor& f : floors) s += f.length;
    return s;
}

TowerPartition tower_partition(const RvTrajectory& traj, int n, long long max_floors) {
    if (n < 0 || n > traj.completed())
        throw std::invalid_argument("tower_partition: level out of range");
    const RvLevel& lv = traj.levels[n];
    const Iet& base = traj.base;
    const int d = static_cast<int>(lv.top.size());

    Int floor_count = 0;
    for (const Int& h : lv.height) floor_count += h;
    if (floor_count > max_floors) throw ResourceCap("tower_partition: too many floors");

    TowerPartition part;
    part.floors.reserve(static_cast<size_t>(floor_count));

    Rat left = 0;
    for (int p = 0; p < d; ++p) {
        const int label = lv.top[p];
        const Rat& len = lv.length[label];
        const long long h = lv.height[label].convert_to<long long>();
        Rat cur = left;
        for (long long r = 0; r < h; ++r) {
            part.floors.push_back({p, label, r, cur, len});
            const int j = base.interval_index(cur);
            if (cur + len > base.breakpoints()[j + 1])
                throw std::logic_error("tower_partition: floor crosses a discontinuity");
            cur += base.shift(j);
        }
        left += len;
    }
    return part;
}

double hilbert_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("hilbert_distance: size mismatch");
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] > 0) || !(b[i] > 0))
            throw std::invalid_argument("hilbert_distance: entries must be positive");
        const double r = a[i] / b[i];
        hi = std::max(hi, r);
        lo = std::min(lo, r);
    }
    return std::log(hi) - std::log(lo);
}

namespace {

std::vector<double> matrix_times(const IMatrix& m, const std::vector<double>& v) {
    const int d = m.size();
    std::vector<double> out(d, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out[i] += to_double(m.at(i, j)) * v[j];
    return out;
}

}  // namespace

DcReport dc_diagnostics(const RvTrajectory& traj, double nu_cap, double kappa_cap,
                        int lbar, double tau, double tau_prime, std::uint64_t seed) {
    if (lbar < 1) throw std::invalid_argument("dc_diagnostics: lbar must be positive");
    const double nan = std::numeric_limits<double>::quiet_NaN();

    DcReport rep;
    rep.nu_cap = nu_cap;
    rep.kappa_cap = kappa_cap;
    rep.tau = tau;
    rep.tau_prime = tau_prime;
    rep.lbar = lbar;

    for (int n = 0; n < static_cast<int>(traj.levels.size()); ++n) {
        const RvLevel& lv = traj.levels[n];
        const auto [lmin, lmax] = std::minmax_element(lv.length.begin(), lv.length.end());
        const auto [hmin, hmax] = std::minmax_element(lv.height.begin(), lv.height.end());
        const double nu = to_double(Rat(*lmax / *lmin));
        const double kappa = to_double(Rat(*hmax)) / to_double(Rat(*hmin));
        if (nu <= nu_cap && kappa <= kappa_cap)
            rep.candidates.push_back({n, nu, kappa, nan, nan, nan});
    }
    rep.any_candidates = !rep.candidates.empty();

    const int nc = static_cast<int>(rep.candidates.size());
    for (int l = 0; l + 1 < nc; ++l) {
        DcCandidate& c = rep.candidates[l];
        const IMatrix w = cocycle_window(traj, c.step, rep.candidates[l + 1].step);
        c.norm = to_double(Rat(w.max_entry()));
        c.norm_growth = c.norm / std::pow(static_cast<double>(l + 1), tau);
        const double logh = std::log(to_double(Rat(traj.levels[c.step].max_height())));
        c.sigma = logh > 0 ? std::pow(std::log(c.norm) / logh, tau_prime) : nan;
    }

    std::uint64_t rng = seed;
    for (int l = 0; l + lbar < nc; ++l) {
        DcWindow win;
        win.l = l + 1;
        win.from_step = rep.candidates[l].step;
        win.to_step = rep.candidates[l + lbar].step;
        const IMatrix w = cocycle_window(traj, win.from_step, win.to_step);
        win.positive = w.strictly_positive();
        if (!win.positive) {
            win.diameter = nan;
            win.contraction = nan;
        } else {
            // Empirical contraction over random positive vector pairs.
            const int d = traj.base.size();
            const int pairs = 24;
            double diam = 0.0, contr = 0.0;
            for (int s = 0; s < pairs; ++s) {
                std::vector<double> a(d), b(d);
                for (int i = 0; i < d; ++i) {
                    a[i] = std::exp(6.0 * uniform53(splitmix64(rng)) - 3.0);
                    b[i] = std::exp(6.0 * uniform53(splitmix64(rng)) - 3.0);
                }
                const double before = hilbert_distance(a, b);
                const double after = hilbert_distance(matrix_times(w, a), matrix_times(w, b));
                diam = std::max(diam, after);
                if (before > 1e-12) contr = std::max(contr, after / before);
            }
            win.diameter = diam;
            win.contraction = contr;
        }
        rep.windows.push_back(win);
    }
    return rep;
}

}  // namespace ietmix
