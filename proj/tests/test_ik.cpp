#include "railarm/ik.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

#include <random>

using namespace railarm;

TEST_CASE("solve_serial round-trips FK planar targets") {
    StructuralParams p;
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> t1(p.theta_limits[0].lo, p.theta_limits[0].hi);
    std::uniform_real_distribution<double> t2(p.theta_limits[1].lo, p.theta_limits[1].hi);
    std::uniform_real_distribution<double> t3(p.theta_limits[2].lo, p.theta_limits[2].hi);
    for (int i = 0; i < 300; ++i) {
        const double th1 = t1(rng), th2 = t2(rng), th3 = t3(rng);
        const Eigen::Vector3d target = serial_fk(th1, th2, th3, 0.0, p).translation;
        SerialResult r = solve_serial(target.x(), target.y(), th3, p, th2);
        REQUIRE(r.pairs.size() == 1);
        const Eigen::Vector3d back =
            serial_fk(r.pairs[0].theta1, r.pairs[0].theta2, th3, 0.0, p).translation;
        CHECK((back.head<2>() - target.head<2>()).norm() < 1e-9);
        // the hint split preserves theta2, so the original pair comes back
        CHECK(r.pairs[0].theta2 == doctest::Approx(th2).epsilon(1e-9));
        CHECK(normalize_angle(r.pairs[0].theta1 - th1) == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("solve_serial: zero posture round trip contains (0, 0)") {
    StructuralParams p;
    const Eigen::Vector3d target = serial_fk(0, 0, 0, 0, p).translation;
    SerialResult r = solve_serial(target.x(), target.y(), 0.0, p);
    REQUIRE(r.pairs.size() == 1);
    CHECK(std::abs(r.pairs[0].theta1) < 1e-12);
    CHECK(r.pairs[0].theta2 == 0.0);
}

TEST_CASE("solve_serial rejects targets off the reach circle") {
    StructuralParams p;
    // the chain's planar radius is fixed by theta3; past it is unreachable
    const double ru = serial_planar_reach(0.0, p).norm();
    SerialResult r = solve_serial(ru + 1.0, 0.0, 0.0, p);
    CHECK(r.pairs.empty());
    CHECK(*r.reason == IkFailure::radius_mismatch);

    r = solve_serial(p.d2 + p.d3 + p.d4 + 1.0, 0.0, 0.0, p);
    CHECK(r.pairs.empty());
}

TEST_CASE("solve_parallel: height extremes") {
    StructuralParams p;

    // apex: half-chord zero
    ParallelResult apex = solve_parallel(100.0, p.zc_max(), p);
    CHECK(apex.b == doctest::Approx(p.e2 - p.e3).epsilon(1e-9));

    // floor: full split
    ParallelResult floor = solve_parallel(500.0, p.zc_min(), p);
    CHECK(floor.b == doctest::Approx(p.b_sep_bound()).epsilon(1e-9));

    ParallelResult above = solve_parallel(100.0, p.zc_max() + 5.0, p);
    CHECK(above.reason == IkFailure::z_unreachable);
}

TEST_CASE("solve_parallel round-trips through parallel_fk") {
    StructuralParams p;
    ParallelResult r = solve_parallel(500.0, 400.0, p);
    REQUIRE_FALSE(r.reason.has_value());
    const Eigen::Vector3d c = parallel_fk(r.a, r.b, p).translation;
    CHECK(std::abs(c.x() - 500.0) < 1e-9);
    CHECK(std::abs(c.z() - 400.0) < 1e-9);
}

TEST_CASE("solve_full round-trips random valid states") {
    StructuralParams p;
    std::mt19937_64 rng(33);
    for (int i = 0; i < 300; ++i) {
        const JointState q = testing::random_state(rng, p, /*snap_a_to_grid=*/true);
        TargetSpec target;
        target.position = full_fk(q, p).translation;
        target.theta3 = q.theta3;
        target.theta4 = q.theta4;
        IkResult r = solve_full(target, p, SweepRange{}, q);
        REQUIRE_FALSE(r.empty());
        bool hit = false;
        for (const auto& c : r.candidates) {
            if ((full_fk(c.state, p).translation - target.position).norm() < 1e-6 &&
                std::abs(c.state.a - q.a) < 0.5)
                hit = true;
            CHECK(validate_state(c.state, p).ok);
        }
        CHECK(hit);
    }
}

TEST_CASE("solve_full candidates ascend strictly in a") {
    StructuralParams p;
    TargetSpec target;
    target.position = Eigen::Vector3d(600.0, 100.0, 420.0);
    IkResult r = solve_full(target, p);
    REQUIRE(r.candidates.size() >= 1);
    CHECK(r.candidates.size() <= 801);
    for (std::size_t i = 1; i < r.candidates.size(); ++i)
        CHECK(r.candidates[i - 1].state.a < r.candidates[i].state.a);
}

TEST_CASE("solve_full above the workspace ceiling") {
    StructuralParams p;
    TargetSpec target;
    target.position = Eigen::Vector3d(400.0, 0.0, p.zc_max() + 50.0);
    IkResult r = solve_full(target, p);
    CHECK(r.empty());
    CHECK(r.failure_counts.at(IkFailure::z_unreachable) == 801);
}

TEST_CASE("solve_full rejects bad sweeps and wrist limits") {
    StructuralParams p;
    TargetSpec t;
    t.position = Eigen::Vector3d(400, 0, 400);
    CHECK_THROWS_AS(solve_full(t, p, SweepRange{10, 5, 1}), PlanningError);
    t.theta3 = p.theta_limits[2].hi + 0.1;
    CHECK_THROWS_AS(solve_full(t, p), PlanningError);
}

TEST_CASE("select_solution picks the nearest candidate") {
    StructuralParams p;
    TargetSpec target;
    target.position = Eigen::Vector3d(600.0, 100.0, 420.0);
    IkResult r = solve_full(target, p);
    REQUIRE(r.candidates.size() == 2);

    // brute-force comparison over the whole list
    const SelectionWeights w = default_weights(p);
    for (const auto& ref : r.candidates) {
        const IkCandidate sel = select_solution(r.candidates, ref.state, w);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : r.candidates) {
            const double s =
                w.slider * (std::abs(c.state.a - ref.state.a) + std::abs(c.state.b - ref.state.b)) +
                w.joint * (std::abs(c.state.theta1 - ref.state.theta1) +
                           std::abs(c.state.theta2 - ref.state.theta2) +
                           std::abs(c.state.theta3 - ref.state.theta3) +
                           std::abs(c.state.theta4 - ref.state.theta4));
            best = std::min(best, s);
        }
        const double sel_score =
            w.slider * (std::abs(sel.state.a - ref.state.a) + std::abs(sel.state.b - ref.state.b)) +
            w.joint * (std::abs(sel.state.theta1 - ref.state.theta1) +
                       std::abs(sel.state.theta2 - ref.state.theta2) +
                       std::abs(sel.state.theta3 - ref.state.theta3) +
                       std::abs(sel.state.theta4 - ref.state.theta4));
        CHECK(sel_score == doctest::Approx(best));
    }

    CHECK_THROWS_AS(select_solution({}, JointState{}, w), PlanningError);
}

TEST_CASE("select_solution singleton and tie-break") {
    StructuralParams p;
    IkCandidate c1;
    c1.state = JointState{100, 200, 0, 0, 0, 0};
    CHECK(select_solution({c1}, JointState{}, default_weights(p)).state.a == 100);

    // two candidates equidistant from current: smaller a wins
    IkCandidate c2 = c1;
    c2.state.a = 300;
    JointState mid;
    mid.a = 200;
    mid.b = 200;
    const IkCandidate sel = select_solution({c1, c2}, mid, default_weights(p));
    CHECK(sel.state.a == 100);
}
