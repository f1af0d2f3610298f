#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace railarm {

// All lengths in millimeters, all angles in radians, time in seconds.

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PlanningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rigid transform: 3x3 rotation + translation, mm.
struct Pose {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    static Pose Identity() { return {}; }

    Pose operator*(const Pose& rhs) const {
        return {rotation * rhs.rotation, rotation * rhs.translation + translation};
    }

    Eigen::Vector3d apply(const Eigen::Vector3d& v) const { return rotation * v + translation; }

    /// Max deviation of R^T R from identity plus |det - 1|.
    double orthonormality_error() const {
        const Eigen::Matrix3d e = rotation.transpose() * rotation - Eigen::Matrix3d::Identity();
        return e.cwiseAbs().maxCoeff() + std::abs(rotation.determinant() - 1.0);
    }
};

/// The six joint variables of the hybrid arm.
/// a: slider-1 carriage position from the rail origin (frame A), mm.
/// b: separation of the two carriage attachment pins, mm (slider 2 sits at a + b).
struct JointState {
    double a = 0.0;
    double b = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double theta3 = 0.0;
    double theta4 = 0.0;

    using Vector6 = Eigen::Matrix<double, 6, 1>;

    Vector6 as_vector() const {
        Vector6 v;
        v << a, b, theta1, theta2, theta3, theta4;
        return v;
    }

    static JointState from_vector(const Vector6& v) {
        return {v[0], v[1], v[2], v[3], v[4], v[5]};
    }
};

enum class TargetFrame { world, base };

/// Cartesian TCP target plus commanded wrist angles.
struct TargetSpec {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    double theta3 = 0.0;
    double theta4 = 0.0;
    TargetFrame frame = TargetFrame::world;
};

struct TrajectoryPoint {
    double t = 0.0;  // s
    JointState q;
    Pose tcp;
};

struct JointTrajectory {
    std::vector<TrajectoryPoint> points;

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
    const TrajectoryPoint& front() const { return points.front(); }
    const TrajectoryPoint& back() const { return points.back(); }
};

inline double normalize_angle(double a) {
    // to (-pi, pi]
    a = std::fmod(a, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    if (a > M_PI) a -= 2.0 * M_PI;
    return a;
}

inline double deg2rad(double d) { return d * M_PI / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / M_PI; }

}  // namespace railarm
