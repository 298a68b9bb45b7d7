#include "ietmix/exact_orbit.hpp"

#include <algorithm>

namespace ietmix {

namespace {

Int common_denominator(const Iet& T, const Rat& x0) {
    Int D = den(x0);
    for (const Rat& l : T.lengths()) D = lcm_int(D, den(l));
    return D;
}

std::vector<Int> scaled_breaks(const std::vector<Rat>& pts, const Int& D) {
    std::vector<Int> out(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) out[i] = num(pts[i]) * (D / den(pts[i]));
    return out;
}

}  // namespace

ExactOrbit::ExactOrbit(const Iet& T, const Rat& x0) {
    if (x0 < 0 || x0 >= T.total()) throw std::domain_error("ExactOrbit: start outside [0, total)");
    den_ = common_denominator(T, x0);
    inv_den_ = 1.0 / to_double(den_);
    const int d = T.size();
    breaks_ = scaled_breaks(T.breakpoints(), den_);
    shift_.resize(d);
    for (int j = 0; j < d; ++j) {
        Rat s = T.shift(j);
        shift_[j] = num(s) * (den_ / den(s));
    }
    Iet Tinv = T.inverse();
    back_breaks_ = scaled_breaks(Tinv.breakpoints(), den_);
    back_shift_.resize(d);
    for (int j = 0; j < d; ++j) {
        Rat s = Tinv.shift(j);
        back_shift_[j] = num(s) * (den_ / den(s));
    }
    num_ = num(x0) * (den_ / den(x0));
}

void ExactOrbit::reset(const Rat& x0) {
    if (den_ % den(x0) != 0) throw std::domain_error("ExactOrbit::reset: position off the orbit lattice");
    Int n = num(x0) * (den_ / den(x0));
    if (n < 0 || n >= breaks_.back()) throw std::domain_error("ExactOrbit::reset: outside [0, total)");
    num_ = n;
}

IntervalOrbit::IntervalOrbit(const Iet& T, const Rat& lo, const Rat& hi) {
    if (!(lo < hi)) throw std::invalid_argument("IntervalOrbit: empty interval");
    if (lo < 0 || hi > T.total()) throw std::domain_error("IntervalOrbit: interval outside [0, total)");
    den_ = common_denominator(T, lo);
    den_ = lcm_int(den_, den(hi));
    const int d = T.size();
    breaks_ = scaled_breaks(T.breakpoints(), den_);
    shift_.resize(d);
    for (int j = 0; j < d; ++j) {
        Rat s = T.shift(j);
        shift_[j] = num(s) * (den_ / den(s));
    }
    pieces_.push_back({num(lo) * (den_ / den(lo)), num(hi) * (den_ / den(hi))});
}

void IntervalOrbit::step() {
    std::vector<OrbitPiece> next;
    next.reserve(pieces_.size());
    for (const OrbitPiece& p : pieces_) {
        Int lo = p.lo;
        while (lo < p.hi) {
            int j = 0;
            while (lo >= breaks_[j + 1]) ++j;
            Int cut = std::min(p.hi, breaks_[j + 1]);
            next.push_back({lo + shift_[j], cut + shift_[j]});
            lo = cut;
        }
    }
    std::sort(next.begin(), next.end(), [](const OrbitPiece& a, const OrbitPiece& b) { return a.lo < b.lo; });
    // merge pieces that reassembled into contiguous runs
    pieces_.clear();
    for (const OrbitPiece& p : next) {
        if (!pieces_.empty() && pieces_.back().hi == p.lo)
            pieces_.back().hi = p.hi;
        else
            pieces_.push_back(p);
    }
}

Rat IntervalOrbit::distance_to(const Rat& p) const {
    Int pn_num = num(p) * (den_ / den(p));
    if (den(p) != 1 && den_ % den(p) != 0) {
        // p off the lattice: fall back to exact rational comparison
        Rat best = -1;
        for (const OrbitPiece& q : pieces_) {
            Rat lo(q.lo, den_), hi(q.hi, den_);
            Rat dist = (p < lo) ? lo - p : (p > hi ? p - hi : Rat(0));
            if (best < 0 || dist < best) best = dist;
        }
        return best;
    }
    Int best = -1;
    for (const OrbitPiece& q : pieces_) {
        Int dist = (pn_num < q.lo) ? q.lo - pn_num : (pn_num > q.hi ? pn_num - q.hi : Int(0));
        if (best < 0 || dist < best) best = dist;
    }
    return Rat(best, den_);
}

}  // namespace ietmix
