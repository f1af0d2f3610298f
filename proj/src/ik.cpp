#include "railarm/ik.hpp"

#include <algorithm>
#include <cmath>

namespace railarm {

const char* to_string(IkFailure f) {
    switch (f) {
        case IkFailure::z_unreachable: return "z unreachable";
        case IkFailure::y_beyond_reach: return "y beyond serial reach";
        case IkFailure::radius_mismatch: return "planar radius mismatch";
        case IkFailure::slider_limit: return "slider limit";
        case IkFailure::joint_limit: return "joint limit";
        case IkFailure::residual: return "residual above tolerance";
    }
    return "unknown";
}

SerialResult solve_serial(double x, double y, double theta3, const StructuralParams& p,
                          double theta2_hint, double radius_tol) {
    SerialResult out;
    const Eigen::Vector2d u = serial_planar_reach(theta3, p);
    const double ru = u.norm();
    const double r = std::hypot(x, y);
    if (std::abs(r - ru) > radius_tol) {
        out.reason = IkFailure::radius_mismatch;
        return out;
    }

    // angle from the reach vector to the target; only theta1 + theta2 matters
    const double phi = std::atan2(y, x) - std::atan2(u.y(), u.x());

    const JointRange& l1 = p.theta_limits[0];
    const JointRange& l2 = p.theta_limits[1];
    double theta2 = std::clamp(theta2_hint, l2.lo, l2.hi);
    double theta1 = normalize_angle(phi - theta2);
    if (theta1 < l1.lo || theta1 > l1.hi) {
        // retry with the split folded entirely into theta1
        theta2 = 0.0;
        theta1 = normalize_angle(phi);
    }
    if (theta1 < l1.lo || theta1 > l1.hi || theta2 < l2.lo || theta2 > l2.hi) {
        out.reason = IkFailure::joint_limit;
        return out;
    }
    out.pairs.push_back({theta1, theta2});
    return out;
}

ParallelResult solve_parallel(double x, double z, const StructuralParams& p) {
    ParallelResult out;
    const double zc = z - p.h - p.e1;
    if (zc < -1e-9 || zc > p.d1 + 1e-9) {
        out.reason = IkFailure::z_unreachable;
        return out;
    }
    const double u = std::sqrt(std::max(p.d1 * p.d1 - std::min(zc, p.d1) * std::min(zc, p.d1), 0.0));
    out.b = 2.0 * u - p.e3 + p.e2;
    out.a = x - p.e3 / 2.0 - u;
    if (out.b < p.b_min || out.b > p.b_max || out.a < p.a_min || out.a > p.a_max ||
        out.a + out.b + p.carriage_allowance > p.rail_length) {
        out.reason = IkFailure::slider_limit;
    }
    return out;
}

namespace {

long grid_points(const SweepRange& s) {
    return static_cast<long>(std::floor((s.end - s.start) / s.step)) + 1;
}

}  // namespace

IkResult solve_full(const TargetSpec& target, const StructuralParams& p,
                    const SweepRange& sweep, const std::optional<JointState>& current,
                    double residual_tol) {
    if (!(sweep.start < sweep.end) || !(sweep.step > 0))
        throw PlanningError("solve_full: invalid sweep range");
    if (target.theta3 < p.theta_limits[2].lo || target.theta3 > p.theta_limits[2].hi ||
        target.theta4 < p.theta_limits[3].lo || target.theta4 > p.theta_limits[3].hi)
        throw PlanningError("solve_full: commanded wrist angle outside limits");

    IkResult out;
    const long n_grid = grid_points(sweep);
    const Eigen::Vector3d t = target.position;

    // b is fixed by the target height: the serial chain adds no z in frame C.
    const double zc = t.z() - p.h - p.e1;
    if (zc < -1e-9 || zc > p.d1 + 1e-9) {
        out.failure_counts[IkFailure::z_unreachable] = n_grid;
        return out;
    }
    const double u_half = std::sqrt(std::max(p.d1 * p.d1 - std::min(zc, p.d1) * std::min(zc, p.d1), 0.0));
    const double b = 2.0 * u_half - p.e3 + p.e2;
    if (b < p.b_min || b > p.b_max) {
        out.failure_counts[IkFailure::slider_limit] = n_grid;
        return out;
    }

    const double yp = t.y() - p.e4;
    const Eigen::Vector2d reach = serial_planar_reach(target.theta3, p);
    const double ru = reach.norm();
    if (std::abs(yp) > ru) {
        out.failure_counts[IkFailure::y_beyond_reach] = n_grid;
        return out;
    }
    const double xmag = std::sqrt(std::max(ru * ru - yp * yp, 0.0));

    const double hint = current ? current->theta2 : 0.0;
    const double lo = std::max(p.a_min, sweep.start);
    const double hi = std::min(p.a_max, sweep.end);

    // Two base placements put the target on the serial circle; enumerate them
    // in ascending-a order (larger x' means smaller a).
    std::vector<double> xps;
    xps.push_back(xmag);
    if (xmag > 0.0) xps.push_back(-xmag);
    for (double xp : xps) {
        const double a = t.x() - xp - p.e3 / 2.0 - u_half;
        if (a < lo || a > hi || a + b + p.carriage_allowance > p.rail_length) {
            out.failure_counts[IkFailure::slider_limit] += 1;
            continue;
        }
        const double xc = p.e3 / 2.0 + a + u_half;
        SerialResult sr = solve_serial(t.x() - xc, yp, target.theta3, p, hint);
        if (sr.pairs.empty()) {
            out.failure_counts[*sr.reason] += 1;
            continue;
        }
        for (const SerialSolution& s : sr.pairs) {
            JointState q{a, b, s.theta1, s.theta2, target.theta3, target.theta4};
            if (!validate_state(q, p).ok) {
                out.failure_counts[IkFailure::joint_limit] += 1;
                continue;
            }
            const double residual = (full_fk(q, p).translation - t).norm();
            if (residual >= residual_tol) {
                out.failure_counts[IkFailure::residual] += 1;
                continue;
            }
            IkCandidate c;
            c.state = q;
            c.branch = s.theta2 >= 0.0 ? ElbowBranch::elbow_up : ElbowBranch::elbow_down;
            c.position_error = residual;
            out.candidates.push_back(c);
        }
    }

    std::sort(out.candidates.begin(), out.candidates.end(),
              [](const IkCandidate& l, const IkCandidate& r) { return l.state.a < r.state.a; });
    // strictly ascending: drop duplicates at equal a
    out.candidates.erase(
        std::unique(out.candidates.begin(), out.candidates.end(),
                    [](const IkCandidate& l, const IkCandidate& r) {
                        return l.state.a == r.state.a;
                    }),
        out.candidates.end());
    return out;
}

SelectionWeights default_weights(const StructuralParams& p) {
    return SelectionWeights{1.0, p.d2};
}

IkCandidate select_solution(const std::vector<IkCandidate>& candidates,
                            const JointState& current, const SelectionWeights& w) {
    if (candidates.empty()) throw PlanningError("select_solution: no candidates");
    auto score = [&](const IkCandidate& c) {
        return w.slider * (std::abs(c.state.a - current.a) + std::abs(c.state.b - current.b)) +
               w.joint * (std::abs(c.state.theta1 - current.theta1) +
                          std::abs(c.state.theta2 - current.theta2) +
                          std::abs(c.state.theta3 - current.theta3) +
                          std::abs(c.state.theta4 - current.theta4));
    };
    const IkCandidate* best = &candidates.front();
    double best_score = score(*best);
    for (const IkCandidate& c : candidates) {
        const double s = score(c);
        const bool better =
            s < best_score ||
            (s == best_score &&
             (c.state.a < best->state.a ||
              (c.state.a == best->state.a && c.branch == ElbowBranch::elbow_up &&
               best->branch == ElbowBranch::elbow_down)));
        if (better) {
            best = &c;
            best_score = s;
        }
    }
    return *best;
}

}  // namespace railarm
