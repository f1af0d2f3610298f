#pragma once

#include "railarm/kinematics.hpp"
#include "railarm/params.hpp"
#include "railarm/types.hpp"

#include <random>

namespace railarm::testing {

/// Seeded random valid joint state within limits (rejecting rail-fit violations).
inline JointState random_state(std::mt19937_64& rng, const StructuralParams& p,
                               bool snap_a_to_grid = false) {
    std::uniform_real_distribution<double> da(p.a_min, p.a_max);
    std::uniform_real_distribution<double> db(p.b_min, p.b_max);
    std::uniform_real_distribution<double> d1(p.theta_limits[0].lo, p.theta_limits[0].hi);
    std::uniform_real_distribution<double> d2(p.theta_limits[1].lo, p.theta_limits[1].hi);
    std::uniform_real_distribution<double> d3(p.theta_limits[2].lo, p.theta_limits[2].hi);
    std::uniform_real_distribution<double> d4(p.theta_limits[3].lo, p.theta_limits[3].hi);
    while (true) {
        JointState q;
        q.a = da(rng);
        if (snap_a_to_grid) q.a = std::round(q.a);
        q.b = db(rng);
        q.theta1 = d1(rng);
        q.theta2 = d2(rng);
        q.theta3 = d3(rng);
        q.theta4 = d4(rng);
        if (validate_state(q, p).ok) return q;
    }
}

/// Trajectory invariant checks shared by motion/simulation tests.
inline bool trajectory_ok(const JointTrajectory& traj, const StructuralParams& p,
                          std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
        const auto& pt = traj.points[i];
        const Eigen::Vector3d fk = full_fk(pt.q, p).translation;
        if ((fk - pt.tcp.translation).norm() > 1e-9) return fail("tcp mismatch");
        if (i == 0) continue;
        const auto& prev = traj.points[i - 1];
        const double dt = pt.t - prev.t;
        if (dt <= 0) return fail("timestamps not strictly increasing");
        const double slack = 1e-6;
        if (std::abs(pt.q.a - prev.q.a) > p.v_max_slider * dt + slack) return fail("a velocity");
        if (std::abs(pt.q.b - prev.q.b) > p.v_max_slider * dt + slack) return fail("b velocity");
        const double dth[] = {pt.q.theta1 - prev.q.theta1, pt.q.theta2 - prev.q.theta2,
                              pt.q.theta3 - prev.q.theta3, pt.q.theta4 - prev.q.theta4};
        for (double d : dth)
            if (std::abs(d) > p.v_max_joint * dt + slack) return fail("joint velocity");
    }
    return true;
}

}  // namespace railarm::testing
