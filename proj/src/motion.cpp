#include "railarm/motion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace railarm {

namespace {

double min_step_time(const JointState& from, const JointState& to, const StructuralParams& p) {
    double dt = 0.0;
    dt = std::max(dt, std::abs(to.a - from.a) / p.v_max_slider);
    dt = std::max(dt, std::abs(to.b - from.b) / p.v_max_slider);
    dt = std::max(dt, std::abs(to.theta1 - from.theta1) / p.v_max_joint);
    dt = std::max(dt, std::abs(to.theta2 - from.theta2) / p.v_max_joint);
    dt = std::max(dt, std::abs(to.theta3 - from.theta3) / p.v_max_joint);
    dt = std::max(dt, std::abs(to.theta4 - from.theta4) / p.v_max_joint);
    return dt;
}

void append_state(JointTrajectory& traj, const JointState& q, const StructuralParams& p,
                  double dt_floor = 1.0 / 60.0) {
    TrajectoryPoint pt;
    pt.q = q;
    pt.tcp = full_fk(q, p);
    if (traj.points.empty()) {
        pt.t = 0.0;
    } else {
        const TrajectoryPoint& prev = traj.points.back();
        pt.t = prev.t + std::max(min_step_time(prev.q, q, p) * (1.0 + 1e-9), dt_floor);
    }
    traj.points.push_back(pt);
}

}  // namespace

JointTrajectory interpolate_line(const TargetSpec& start, const TargetSpec& end,
                                 std::size_t n_points, const StructuralParams& p) {
    if (n_points < 2) throw PlanningError("interpolate_line: need at least 2 points");

    JointTrajectory traj;
    std::optional<JointState> prev;
    for (std::size_t i = 0; i < n_points; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(n_points - 1);
        TargetSpec wp;
        wp.position = start.position + f * (end.position - start.position);
        wp.theta3 = start.theta3 + f * (end.theta3 - start.theta3);
        wp.theta4 = start.theta4 + f * (end.theta4 - start.theta4);

        IkResult ik = solve_full(wp, p, SweepRange{}, prev);
        if (ik.empty()) {
            std::ostringstream msg;
            msg << "interpolate_line: waypoint " << i << " unreachable";
            for (const auto& [reason, count] : ik.failure_counts)
                msg << "; " << to_string(reason) << " x" << count;
            throw PlanningError(msg.str());
        }
        const JointState q = prev ? select_solution(ik.candidates, *prev, default_weights(p)).state
                                  : ik.candidates.front().state;
        append_state(traj, q, p);
        prev = q;
    }
    return traj;
}

PoseHoldPlan plan_pose_hold(const JointState& initial, double base_velocity,
                            double duration, double dt, const StructuralParams& p) {
    if (!(dt > 0)) throw PlanningError("plan_pose_hold: dt must be positive");
    if (duration < 0) throw PlanningError("plan_pose_hold: negative duration");
    Validity v = validate_state(initial, p);
    if (!v.ok) throw PlanningError("plan_pose_hold: invalid initial state: " + v.violations.front());
    if (std::abs(base_velocity) > p.v_max_slider)
        throw PlanningError("plan_pose_hold: base velocity exceeds slider speed limit");

    PoseHoldPlan plan;
    plan.limiting_constraint = "duration";
    double t_limit = duration;
    if (base_velocity > 0.0) {
        // a(t) = a0 - v t runs into the lower travel stop
        const double t_hit = (initial.a - p.a_min) / base_velocity;
        if (t_hit < t_limit) {
            t_limit = t_hit;
            plan.limiting_constraint = "a_min";
        }
    } else if (base_velocity < 0.0) {
        const double t_travel = (p.a_max - initial.a) / -base_velocity;
        const double a_rail = p.rail_length - p.carriage_allowance - initial.b;
        const double t_rail = (a_rail - initial.a) / -base_velocity;
        if (t_rail < t_travel && t_rail < t_limit) {
            t_limit = t_rail;
            plan.limiting_constraint = "rail fit";
        } else if (t_travel < t_limit) {
            t_limit = t_travel;
            plan.limiting_constraint = "a_max";
        }
    }
    plan.t_end = std::max(t_limit, 0.0);
    if (plan.t_end == 0.0 && duration > 0.0 && plan.limiting_constraint != "duration")
        return plan;  // already at the limit: empty window

    for (double t = 0.0; t < plan.t_end || std::abs(t - plan.t_end) < 1e-12; t += dt) {
        const double tc = std::min(t, plan.t_end);
        TrajectoryPoint pt;
        pt.t = tc;
        pt.q = initial;
        pt.q.a = initial.a - base_velocity * tc;
        pt.tcp = full_fk(pt.q, p);
        plan.trajectory.points.push_back(pt);
        if (tc == plan.t_end) break;
    }
    // land the final sample exactly on the window boundary
    if (!plan.trajectory.points.empty() &&
        plan.trajectory.points.back().t < plan.t_end - 1e-12) {
        TrajectoryPoint pt;
        pt.t = plan.t_end;
        pt.q = initial;
        pt.q.a = initial.a - base_velocity * plan.t_end;
        pt.tcp = full_fk(pt.q, p);
        plan.trajectory.points.push_back(pt);
    }
    return plan;
}

JointTrajectory plan_duck_under(const JointState& current, double clearance_z,
                                double travel_target_a, const StructuralParams& p,
                                double margin) {
    Validity v = validate_state(current, p);
    if (!v.ok) throw PlanningError("plan_duck_under: invalid start state: " + v.violations.front());

    JointState low = current;
    low.b = p.b_max;
    const double achievable = body_height(low, p);
    const double required = clearance_z - margin;
    if (required < achievable) {
        std::ostringstream msg;
        msg << "plan_duck_under: infeasible clearance " << clearance_z
            << " mm (minimum achievable body height " << achievable << " mm plus margin "
            << margin << " mm)";
        throw PlanningError(msg.str());
    }

    double b_split = current.b;
    if (body_height(current, p) > required)
        b_split = std::min(std::max(split_for_height(required, p), current.b), p.b_max);

    if (travel_target_a < p.a_min || travel_target_a > p.a_max)
        throw PlanningError("plan_duck_under: travel target outside slider limits");
    for (double a : {current.a, travel_target_a})
        if (a + b_split + p.carriage_allowance > p.rail_length)
            throw PlanningError("plan_duck_under: split posture does not fit on the rail");

    JointTrajectory traj;
    append_state(traj, current, p);

    auto ramp = [&](double JointState::* field, double target, double max_step) {
        JointState q = traj.points.back().q;
        const double from = q.*field;
        const double delta = target - from;
        if (delta == 0.0) return;
        const int n = std::max(1, static_cast<int>(std::ceil(std::abs(delta) / max_step)));
        for (int i = 1; i <= n; ++i) {
            q.*field = from + delta * i / n;
            append_state(traj, q, p);
        }
    };

    ramp(&JointState::b, b_split, 5.0);         // phase 1: split
    ramp(&JointState::a, travel_target_a, 10.0);  // phase 2: traverse
    ramp(&JointState::b, current.b, 5.0);       // phase 3: rise

    return traj;
}

JointTrajectory plan_reorient(const Eigen::Vector3d& about, const JointState& q0,
                              double target_theta3, double target_theta4,
                              std::size_t n_steps, const StructuralParams& p) {
    if (n_steps < 1) throw PlanningError("plan_reorient: need at least 1 step");
    if ((full_fk(q0, p).translation - about).norm() > 1e-6)
        throw PlanningError("plan_reorient: q0 does not place the TCP at the pivot");
    if (target_theta3 < p.theta_limits[2].lo || target_theta3 > p.theta_limits[2].hi ||
        target_theta4 < p.theta_limits[3].lo || target_theta4 > p.theta_limits[3].hi)
        throw PlanningError("plan_reorient: target wrist angles outside limits");

    JointTrajectory traj;
    JointState prev = q0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double f = n_steps == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(n_steps - 1);
        TargetSpec step;
        step.position = about;
        step.theta3 = q0.theta3 + f * (target_theta3 - q0.theta3);
        step.theta4 = q0.theta4 + f * (target_theta4 - q0.theta4);

        IkResult ik = solve_full(step, p, SweepRange{}, prev);
        if (ik.empty()) {
            std::ostringstream msg;
            msg << "plan_reorient: step " << i << " unreachable";
            throw PlanningError(msg.str());
        }
        prev = select_solution(ik.candidates, prev, default_weights(p)).state;
        append_state(traj, prev, p);
    }
    return traj;
}

void export_trajectory(const JointTrajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write trajectory file: " + path);
    out << std::setprecision(17);
    out << "t_s,a_mm,b_mm,theta1,theta2,theta3,theta4,x_mm,y_mm,z_mm\n";
    for (const auto& pt : traj.points) {
        out << pt.t << ',' << pt.q.a << ',' << pt.q.b << ',' << pt.q.theta1 << ','
            << pt.q.theta2 << ',' << pt.q.theta3 << ',' << pt.q.theta4 << ','
            << pt.tcp.translation.x() << ',' << pt.tcp.translation.y() << ','
            << pt.tcp.translation.z() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

JointTrajectory import_trajectory(const std::string& path, const StructuralParams& p) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trajectory file: " + path);
    JointTrajectory traj;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        double v[10];
        char comma;
        for (int i = 0; i < 10; ++i) {
            ss >> v[i];
            if (i < 9) ss >> comma;
        }
        if (!ss) throw IoError("malformed trajectory row in " + path);
        TrajectoryPoint pt;
        pt.t = v[0];
        pt.q = JointState{v[1], v[2], v[3], v[4], v[5], v[6]};
        pt.tcp = full_fk(pt.q, p);
        traj.points.push_back(pt);
    }
    return traj;
}

}  // namespace railarm
