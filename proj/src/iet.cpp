#include "ietmix/iet.hpp"

#include <nlohmann/json.hpp>

#include "ietmix/exact_orbit.hpp"
#include "ietmix/util.hpp"

namespace ietmix {

Iet::Iet(const Permutation& pi, std::vector<Rat> lengths, bool normalize) : pi_(pi), lam_(std::move(lengths)) {
    const int d = pi_.size();
    if (static_cast<int>(lam_.size()) != d)
        throw std::invalid_argument("Iet: permutation size " + std::to_string(d) + " but " +
                                    std::to_string(lam_.size()) + " lengths");
    Rat total = 0;
    for (const Rat& l : lam_) {
        if (l <= 0) throw std::invalid_argument("Iet: lengths must be strictly positive");
        total += l;
    }
    if (normalize && total != 1) {
        for (Rat& l : lam_) l /= total;
        total = 1;
    }
    a_.assign(d + 1, Rat(0));
    ap_.assign(d + 1, Rat(0));
    for (int j = 0; j < d; ++j) a_[j + 1] = a_[j] + lam_[j];
    // image cell at image position p holds the piece coming from domain position pi^-1(p)
    for (int p = 0; p < d; ++p) ap_[p + 1] = ap_[p] + lam_[pi_.inverse_apply(p)];
}

Iet Iet::unit(const Permutation& pi, std::vector<Rat> lengths) { return Iet(pi, std::move(lengths), true); }

Iet Iet::raw(const Permutation& pi, std::vector<Rat> lengths) { return Iet(pi, std::move(lengths), false); }

int Iet::interval_index(const Rat& x) const {
    if (x < 0 || x >= total()) throw std::domain_error("Iet::interval_index: point outside [0, total)");
    // d is small (<= a dozen in practice): linear scan beats binary search
    int j = 0;
    while (x >= a_[j + 1]) ++j;
    return j;
}

Rat Iet::apply(const Rat& x) const {
    const int j = interval_index(x);
    return x + shift(j);
}

Iet Iet::inverse() const {
    const int d = size();
    std::vector<Rat> mu(d);
    for (int p = 0; p < d; ++p) mu[p] = lam_[pi_.inverse_apply(p)];
    return Iet::raw(pi_.inverse(), std::move(mu));
}

std::string Iet::to_json_string() const {
    nlohmann::json j;
    j["permutation"] = pi_.to_one_based();
    std::vector<std::string> ls;
    for (const Rat& l : lam_) ls.push_back(rational_to_string(l));
    j["lengths"] = ls;
    return j.dump();
}

Iet Iet::from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("permutation") || !j.contains("lengths"))
        throw std::invalid_argument("Iet: JSON needs 'permutation' and 'lengths'");
    Permutation pi = Permutation::from_one_based(j["permutation"].get<std::vector<int>>());
    std::vector<Rat> lengths;
    for (const auto& item : j["lengths"]) {
        if (item.is_string())
            lengths.push_back(parse_rational(item.get<std::string>()));
        else
            lengths.push_back(snap_double(item.get<double>()));
    }
    return Iet::unit(pi, std::move(lengths));
}

double birkhoff_sum(const Iet& T, const Observable& g, const Rat& x, long long r) {
    if (r < 0) throw std::invalid_argument("birkhoff_sum: negative iterate count");
    ExactOrbit orbit(T, x);
    KahanSum acc;
    for (long long i = 0; i < r; ++i) {
        Rat p = orbit.position();
        if (g.is_exceptional(p)) throw SingularityHit(i);
        acc.add(g.eval(orbit.value()));
        orbit.step();
    }
    return acc.value();
}

std::optional<KeaneCollision> keane_collision(const Iet& T, long long n_steps) {
    const int d = T.size();
    for (int k = 1; k < d; ++k) {
        ExactOrbit orbit(T, T.breakpoints()[k]);
        for (long long i = 1; i <= n_steps; ++i) {
            orbit.step();
            Rat p = orbit.position();
            for (int j = 1; j < d; ++j)
                if (p == T.breakpoints()[j]) return KeaneCollision{k, j, i};
        }
    }
    return std::nullopt;
}

Rat birkhoff_sum_exact(const Iet& T, const Observable& g, const Rat& x, long long r) {
    if (!g.eval_exact) throw std::invalid_argument("birkhoff_sum_exact: observable has no exact evaluation");
    if (r < 0) throw std::invalid_argument("birkhoff_sum: negative iterate count");
    Rat acc = 0;
    Rat p = x;
    for (long long i = 0; i < r; ++i) {
        if (g.is_exceptional(p)) throw SingularityHit(i);
        acc += g.eval_exact(p);
        p = T.apply(p);
    }
    return acc;
}

}  // namespace ietmix
