#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ietmix/exact_orbit.hpp"
#include "ietmix/rauzy_veech.hpp"

using namespace ietmix;

namespace {

Iet golden() {
    return Iet::unit(Permutation::from_one_based({2, 1}), {Rat(34, 89), Rat(55, 89)});
}

IMatrix elementary(int d, int w, int l) {
    IMatrix m = IMatrix::identity(d);
    m.at(w, l) += 1;
    return m;
}

bool is_identity_plus_unit(const IMatrix& m) {
    const int d = m.size();
    Int total = 0;
    for (int i = 0; i < d; ++i) {
        if (m.at(i, i) < 1) return false;
        for (int j = 0; j < d; ++j) total += m.at(i, j);
    }
    return total == d + 1;
}

}  // namespace

TEST_CASE("integer matrix determinants") {
    IMatrix a(2);
    a.at(0, 0) = 2; a.at(0, 1) = 1;
    a.at(1, 0) = 1; a.at(1, 1) = 1;
    CHECK(a.det() == 1);

    IMatrix swap(2);
    swap.at(0, 1) = 1; swap.at(1, 0) = 1;
    CHECK(swap.det() == -1);

    IMatrix singular(2);
    singular.at(0, 0) = 1; singular.at(0, 1) = 2;
    singular.at(1, 0) = 2; singular.at(1, 1) = 4;
    CHECK(singular.det() == 0);

    IMatrix b(3);
    int vals[3][3] = {{2, 3, 1}, {1, 1, 4}, {0, 2, 5}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b.at(i, j) = vals[i][j];
    // Expansion along the first column: 2*(5-8) - 1*(15-2) = -19.
    CHECK(b.det() == -19);

    CHECK(IMatrix::identity(4).det() == 1);
}

TEST_CASE("zero steps returns the trivial cocycle and the original exchange") {
    RvTrajectory traj = iterate(golden(), 0);
    CHECK(traj.completed() == 0);
    REQUIRE(traj.levels.size() == 1);
    CHECK(traj.levels[0].cumulative == IMatrix::identity(2));
    CHECK(traj.levels[0].iet() == golden());
    CHECK(traj.levels[0].total() == Rat(1));
    CHECK(traj.levels[0].max_height() == 1);
    CHECK(cocycle_window(traj, 0, 0) == IMatrix::identity(2));
}

TEST_CASE("golden exchange runs five steps to Fibonacci entries") {
    RvTrajectory traj = iterate(golden(), 5);
    REQUIRE(traj.completed() == 5);

    // Winners alternate: domain side on even steps, image side on odd ones.
    for (int k = 0; k < 5; ++k) {
        const RvStep& st = traj.steps[k];
        if (k % 2 == 0) {
            CHECK(st.kind == RvStep::Kind::Top);
            CHECK(st.matrix == elementary(2, 1, 0));
        } else {
            CHECK(st.kind == RvStep::Kind::Bottom);
            CHECK(st.matrix == elementary(2, 0, 1));
        }
        CHECK(is_identity_plus_unit(st.matrix));
        CHECK(st.matrix.det() == 1);
    }

    const IMatrix& a5 = traj.levels[5].cumulative;
    CHECK(a5.at(0, 0) == 5);
    CHECK(a5.at(0, 1) == 3);
    CHECK(a5.at(1, 0) == 8);
    CHECK(a5.at(1, 1) == 5);
    CHECK(a5.det() == 1);

    // Exact length recovery: lambda = A^(5) lambda^(5).
    const RvLevel& lv = traj.levels[5];
    CHECK(lv.length[0] == Rat(5, 89));
    CHECK(lv.length[1] == Rat(3, 89));
    std::vector<Rat> back = a5.apply(lv.length);
    CHECK(back[0] == Rat(34, 89));
    CHECK(back[1] == Rat(55, 89));

    // Heights are the column sums, and the tower areas fill the interval.
    REQUIRE(lv.height.size() == 2);
    CHECK(lv.height[0] == 13);
    CHECK(lv.height[1] == 8);
    Rat area = Rat(lv.height[0]) * lv.length[0] + Rat(lv.height[1]) * lv.length[1];
    CHECK(area == Rat(1));

    CHECK(lv.total() == Rat(8, 89));
    CHECK(lv.max_height() == 13);

    // First induced exchange: the long interval lost a piece of length 34/89.
    const Iet& ind = traj.steps[0].induced;
    CHECK(ind.total() == Rat(55, 89));
    CHECK(ind.lengths()[0] == Rat(34, 89));
    CHECK(ind.lengths()[1] == Rat(21, 89));
}

TEST_CASE("golden exchange reaches its connection at step eight") {
    RvTrajectory traj = iterate_partial(golden(), 50);
    CHECK(traj.completed() == 8);
    REQUIRE(traj.connection_at.has_value());
    CHECK(*traj.connection_at == 8);
    CHECK(traj.levels.size() == 9);
    CHECK(traj.levels[8].length[0] == Rat(1, 89));
    CHECK(traj.levels[8].length[1] == Rat(1, 89));

    CHECK_THROWS_AS(iterate(golden(), 9), ConnectionError);
    try {
        iterate(golden(), 9);
    } catch (const ConnectionError& e) {
        CHECK(e.steps_completed == 8);
    }

    // Unimodularity along the whole run.
    for (int n = 0; n <= 8; ++n) {
        Int d = traj.levels[n].cumulative.det();
        CHECK((d == 1 || d == -1));
    }
}

TEST_CASE("length tie at the first step is a connection") {
    Iet tie = Iet::unit(Permutation::from_one_based({2, 1}), {Rat(1, 2), Rat(1, 2)});
    CHECK_THROWS_AS(rv_step(tie), ConnectionError);
    RvTrajectory traj = iterate_partial(tie, 5);
    CHECK(traj.completed() == 0);
    REQUIRE(traj.connection_at.has_value());
    CHECK(*traj.connection_at == 0);
}

TEST_CASE("reducible permutations are rejected") {
    Iet id2 = Iet::unit(Permutation::identity(2), {Rat(1, 2), Rat(1, 2)});
    CHECK_THROWS_AS(iterate(id2, 1), std::invalid_argument);
    CHECK_THROWS_AS(rv_step(id2), std::invalid_argument);
    // Prefix {1,2} maps to itself: reducible even though not the identity.
    Iet red = Iet::unit(Permutation::from_one_based({2, 1, 4, 3}),
                        {Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)});
    CHECK_THROWS_AS(iterate(red, 1), std::invalid_argument);
}

TEST_CASE("visit counts reproduce the cocycle columns") {
    SUBCASE("golden at step three") {
        RvTrajectory traj = iterate(golden(), 3);
        const IMatrix& a3 = traj.levels[3].cumulative;
        CHECK(a3.at(0, 0) == 2);
        CHECK(a3.at(0, 1) == 1);
        CHECK(a3.at(1, 0) == 3);
        CHECK(a3.at(1, 1) == 2);
        for (int j = 0; j < 2; ++j) {
            VisitCounts vc = visit_count_oracle(traj, 3, j);
            CHECK(vc.visits[0] == a3.at(0, j));
            CHECK(vc.visits[1] == a3.at(1, j));
            CHECK(Int(vc.return_time) == traj.levels[3].height[j]);
        }
    }

    SUBCASE("four-interval exchange, every level") {
        Iet T = Iet::unit(Permutation::from_one_based({4, 3, 2, 1}),
                          {Rat(97, 211), Rat(59, 211), Rat(34, 211), Rat(21, 211)});
        RvTrajectory traj = iterate_partial(T, 8);
        REQUIRE(traj.completed() >= 4);
        for (int n = 0; n <= traj.completed(); ++n) {
            const RvLevel& lv = traj.levels[n];
            for (int j = 0; j < 4; ++j) {
                VisitCounts vc = visit_count_oracle(traj, n, j);
                for (int i = 0; i < 4; ++i) CHECK(vc.visits[i] == lv.cumulative.at(i, j));
                CHECK(Int(vc.return_time) == lv.height[j]);
            }
        }
    }
}

TEST_CASE("structural invariants hold on a generic four-interval run") {
    Iet T = Iet::unit(Permutation::from_one_based({3, 1, 4, 2}),
                      {Rat(83, 199), Rat(53, 199), Rat(37, 199), Rat(26, 199)});
    RvTrajectory traj = iterate_partial(T, 10);
    REQUIRE(traj.completed() >= 5);

    for (int k = 0; k < traj.completed(); ++k) CHECK(is_identity_plus_unit(traj.steps[k].matrix));

    for (int n = 0; n <= traj.completed(); ++n) {
        const RvLevel& lv = traj.levels[n];

        // Exact length recovery and the return-time identity.
        std::vector<Rat> back = lv.cumulative.apply(lv.length);
        Rat kac = 0;
        for (int j = 0; j < 4; ++j) {
            CHECK(back[j] == T.lengths()[j]);
            kac += Rat(lv.height[j]) * lv.length[j];
        }
        CHECK(kac == Rat(1));

        Int d = lv.cumulative.det();
        CHECK((d == 1 || d == -1));

        // Window products recompose the cocycle.
        CHECK(cocycle_window(traj, 0, n) == lv.cumulative);
        if (n >= 2) {
            IMatrix w = cocycle_window(traj, 1, n);
            CHECK(traj.steps[0].matrix * w == lv.cumulative);
        }
    }
}

TEST_CASE("tower floors partition the unit interval") {
    RvTrajectory traj = iterate(golden(), 5);

    for (int n : {2, 3, 5}) {
        TowerPartition part = tower_partition(traj, n);
        CHECK(part.total_measure() == Rat(1));

        // Sorted floors chain exactly from 0 to 1 with no gaps or overlaps.
        std::vector<TowerFloor> sorted = part.floors;
        std::sort(sorted.begin(), sorted.end(),
                  [](const TowerFloor& a, const TowerFloor& b) { return a.left < b.left; });
        Rat cursor = 0;
        for (const TowerFloor& f : sorted) {
            CHECK(f.left == cursor);
            cursor += f.length;
        }
        CHECK(cursor == Rat(1));

        // No floor straddles a breakpoint of the base exchange.
        for (const TowerFloor& f : part.floors)
            for (const Rat& a : traj.base.breakpoints()) CHECK(!(f.left < a && a < f.left + f.length));
    }

    CHECK(tower_partition(traj, 2).floors.size() == 5);
    CHECK(tower_partition(traj, 3).floors.size() == 8);

    SUBCASE("each finer floor sits inside a coarser one") {
        TowerPartition coarse = tower_partition(traj, 2);
        TowerPartition fine = tower_partition(traj, 3);
        for (const TowerFloor& f : fine.floors) {
            bool inside = false;
            for (const TowerFloor& c : coarse.floors)
                if (c.left <= f.left && f.left + f.length <= c.left + c.length) {
                    inside = true;
                    break;
                }
            CHECK(inside);
        }
    }

    SUBCASE("riding a full tower is one step of the induced exchange") {
        const RvLevel& lv = traj.levels[4];
        Iet induced = lv.iet();
        Rat y = lv.length[0] / 2;  // midpoint of the first induced interval
        ExactOrbit orbit(traj.base, y);
        const long long h = lv.height[lv.top[0]].convert_to<long long>();
        for (long long r = 0; r < h; ++r) orbit.step();
        CHECK(orbit.position() == induced.apply(y));
    }

    SUBCASE("floor budget is enforced") {
        CHECK_THROWS_AS(tower_partition(traj, 5, 10), ResourceCap);
    }
}

TEST_CASE("hilbert projective distance") {
    CHECK(hilbert_distance({1, 1}, {2, 1}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(hilbert_distance({2, 4}, {1, 2}) == doctest::Approx(0.0));
    double base = hilbert_distance({3, 1, 2}, {1, 5, 4});
    double scaled = hilbert_distance({9, 3, 6}, {5, 25, 20});
    CHECK(scaled == doctest::Approx(base).epsilon(1e-13));
    CHECK_THROWS_AS(hilbert_distance({1, 0}, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(hilbert_distance({1, 2}, {1}), std::invalid_argument);
}

TEST_CASE("diagnostics on the golden run") {
    RvTrajectory traj = iterate_partial(golden(), 50);
    REQUIRE(traj.completed() == 8);

    SUBCASE("every level is a candidate under balanced caps") {
        DcReport rep = dc_diagnostics(traj, 2.7, 2.0, 2);
        CHECK(rep.any_candidates);
        REQUIRE(rep.candidates.size() == 9);
        for (size_t l = 0; l < rep.candidates.size(); ++l) {
            const DcCandidate& c = rep.candidates[l];
            CHECK(c.step == static_cast<int>(l));
            CHECK(c.nu <= 2.0 + 1e-15);
            CHECK(c.kappa <= 2.0 + 1e-15);
            if (l + 1 < rep.candidates.size()) {
                // Consecutive candidates: the window is one elementary matrix.
                CHECK(c.norm == 1.0);
                if (l == 0)
                    CHECK(std::isnan(c.sigma));  // all heights are 1, log h = 0
                else
                    CHECK(c.sigma == 0.0);
            } else {
                CHECK(std::isnan(c.norm));
            }
        }

        // Two consecutive elementary matrices multiply to a positive window.
        REQUIRE(!rep.windows.empty());
        CHECK(rep.windows.size() == 7);
        for (const DcWindow& w : rep.windows) {
            CHECK(w.positive);
            CHECK(w.contraction <= 1.0 + 1e-12);
            CHECK(w.diameter > 0.0);
            CHECK(std::isfinite(w.contraction));
        }
    }

    SUBCASE("single-step windows are not strictly positive") {
        DcReport rep = dc_diagnostics(traj, 2.7, 2.0, 1);
        REQUIRE(!rep.windows.empty());
        for (const DcWindow& w : rep.windows) {
            CHECK(!w.positive);
            CHECK(std::isnan(w.contraction));
        }
    }

    SUBCASE("over-tight caps yield an empty report, not an error") {
        DcReport rep = dc_diagnostics(traj, 1.05, 1.0, 2);
        CHECK(!rep.any_candidates);
        CHECK(rep.candidates.size() <= 1);  // only the balanced start could pass
        CHECK(rep.windows.empty());
    }

    SUBCASE("sigma follows its definition on a wider window") {
        DcReport rep = dc_diagnostics(traj, 2.7, 2.0, 2);
        const DcCandidate& c = rep.candidates[3];
        double logh = std::log(to_double(Rat(traj.levels[c.step].max_height())));
        CHECK(c.sigma == doctest::Approx(std::pow(std::log(c.norm) / logh, 0.9)));
    }
}

TEST_CASE("diagnostics candidate filter uses exact ratios") {
    // nu = 2 exactly at level 7 of the golden run; a cap of 2.0 keeps it.
    RvTrajectory traj = iterate_partial(golden(), 50);
    DcReport rep = dc_diagnostics(traj, 2.0, 2.0, 2);
    bool has7 = false;
    for (const DcCandidate& c : rep.candidates) has7 |= (c.step == 7);
    CHECK(has7);
}
