#include "railarm/kinematics.hpp"

#include <cmath>

namespace railarm {

Pose parallel_fk(double a, double b, const StructuralParams& p) {
    const double u = p.half_sep(b);
    const double s = p.d1 * p.d1 - u * u;
    if (s < -1e-9) throw DomainError("parallel_fk: separation outside sqrt domain");
    Pose pose;
    pose.translation = Eigen::Vector3d(p.e3 / 2.0 + a + u,
                                       p.e4,
                                       std::sqrt(std::max(s, 0.0)) + p.h + p.e1);
    return pose;
}

namespace {

Pose link_z(double theta, double ax) {
    // planar link: rotation about z, in-plane offset ax along the rotated x
    const double c = std::cos(theta), s = std::sin(theta);
    Pose t;
    t.rotation << c, -s, 0,
                  s,  c, 0,
                  0,  0, 1;
    t.translation = Eigen::Vector3d(c * ax, s * ax, 0.0);
    return t;
}

Pose link_twisted(double theta, double ax, double dz) {
    // link with a 90-degree twist: z offset dz, in-plane offset ax
    const double c = std::cos(theta), s = std::sin(theta);
    Pose t;
    t.rotation << c, 0,  s,
                  s, 0, -c,
                  0, 1,  0;
    t.translation = Eigen::Vector3d(c * ax, s * ax, dz);
    return t;
}

}  // namespace

Pose serial_fk(double theta1, double theta2, double theta3, double theta4,
               const StructuralParams& p) {
    const Pose t01 = link_z(theta1, 0.0);
    const Pose t12 = link_z(theta2, p.d2);
    const Pose t23 = link_twisted(theta3, p.d3, 0.0);
    const Pose t34 = link_twisted(theta4, 0.0, p.d4);
    return t01 * t12 * t23 * t34;
}

Pose full_fk(const JointState& q, const StructuralParams& p) {
    return parallel_fk(q.a, q.b, p) * serial_fk(q.theta1, q.theta2, q.theta3, q.theta4, p);
}

Eigen::Vector2d serial_planar_reach(double theta3, const StructuralParams& p) {
    const double c3 = std::cos(theta3), s3 = std::sin(theta3);
    return {p.d2 + c3 * p.d3 + s3 * p.d4, s3 * p.d3 - c3 * p.d4};
}

double body_height(const JointState& q, const StructuralParams& p) {
    return parallel_fk(q.a, q.b, p).translation.z() + p.stack_allowance;
}

double min_body_height(const StructuralParams& p) {
    return p.zc_min() + p.stack_allowance;
}

double split_for_height(double height, const StructuralParams& p) {
    const double zc = height - p.stack_allowance - p.h - p.e1;
    if (zc < 0.0) throw DomainError("split_for_height: below minimum body height");
    if (zc >= p.d1) return std::max(p.e2 - p.e3, 0.0);  // no split needed
    const double u = std::sqrt(p.d1 * p.d1 - zc * zc);
    return 2.0 * u - p.e3 + p.e2;
}

}  // namespace railarm
