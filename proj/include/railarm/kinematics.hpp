#pragma once

#include "railarm/params.hpp"
#include "railarm/types.hpp"

namespace railarm {

/// Pose of the dual-slider platform frame C in the rail frame A.
/// Translation (Xc, Yc, Zc); rotation is identity — the 1:1 meshed gears keep
/// the platform parallel to the rail for every reachable (a, b).
Pose parallel_fk(double a, double b, const StructuralParams& p);

/// Pose of the end point P in the platform frame C: the product of the four
/// per-link homogeneous transforms of the serial chain.
Pose serial_fk(double theta1, double theta2, double theta3, double theta4,
               const StructuralParams& p);

/// Frame-A pose of the end point: parallel_fk composed with serial_fk.
Pose full_fk(const JointState& q, const StructuralParams& p);

/// Planar offset of the end point in frame C for a given wrist pitch, as a
/// 2-vector. The serial chain keeps the TCP in the platform's x-y plane, so
/// this vector fully determines the serial contribution to position.
Eigen::Vector2d serial_planar_reach(double theta3, const StructuralParams& p);

/// Maximum z-extent of the mechanism: Zc plus the serial-stack allowance.
/// Monotone non-increasing in b on [max(b_min, e2 - e3), b_max].
double body_height(const JointState& q, const StructuralParams& p);

/// Smallest achievable body height (fully split posture).
double min_body_height(const StructuralParams& p);

/// Separation b that brings body height down to `height`; throws DomainError
/// below min_body_height. Inverse of the height map on the split branch.
double split_for_height(double height, const StructuralParams& p);

}  // namespace railarm
