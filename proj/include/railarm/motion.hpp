#pragma once

#include "railarm/ik.hpp"
#include "railarm/params.hpp"
#include "railarm/scurve.hpp"
#include "railarm/types.hpp"

#include <string>

namespace railarm {

/// Straight Cartesian line from start to end in n_points waypoints, each
/// solved by solve_full and warm-started from the previous waypoint's state.
/// Throws PlanningError naming the first unreachable waypoint.
JointTrajectory interpolate_line(const TargetSpec& start, const TargetSpec& end,
                                 std::size_t n_points, const StructuralParams& p);

struct PoseHoldPlan {
    JointTrajectory trajectory;  // arm-side states, in the (moving) arm frame
    double t_end = 0.0;          // feasibility window, s
    std::string limiting_constraint;
};

/// Holds the world TCP pose fixed while the base advances at base_velocity
/// along the rail axis; the arm counter-moves on its slider. The window ends
/// when slider travel runs out.
PoseHoldPlan plan_pose_hold(const JointState& initial, double base_velocity,
                            double duration, double dt, const StructuralParams& p);

/// Three-phase duck-under: split until the body clears clearance_z - margin,
/// traverse along the rail, then rise back to the original separation.
JointTrajectory plan_duck_under(const JointState& current, double clearance_z,
                                double travel_target_a, const StructuralParams& p,
                                double margin = 10.0);

/// Reorients the wrist about a fixed world point: theta3/theta4 interpolate to
/// the targets while (a, b, theta1, theta2) re-solve to pin the TCP position.
JointTrajectory plan_reorient(const Eigen::Vector3d& about, const JointState& q0,
                              double target_theta3, double target_theta4,
                              std::size_t n_steps, const StructuralParams& p);

/// CSV I/O: header t_s,a_mm,b_mm,theta1,theta2,theta3,theta4,x_mm,y_mm,z_mm.
void export_trajectory(const JointTrajectory& traj, const std::string& path);
JointTrajectory import_trajectory(const std::string& path, const StructuralParams& p);

}  // namespace railarm
