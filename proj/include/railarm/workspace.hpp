#pragma once

#include "railarm/kinematics.hpp"
#include "railarm/params.hpp"
#include "railarm/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace railarm {

struct WorkspaceCloud {
    struct Sample {
        Eigen::Vector3d position;  // full_fk(state).translation
        JointState state;
    };
    std::vector<Sample> points;
    std::uint64_t seed = 0;
    std::string algorithm = "mt19937_64-uniform-v1";

    std::size_t sample_count() const { return points.size(); }
};

struct Aabb {
    Eigen::Vector3d min;
    Eigen::Vector3d max;

    Eigen::Vector3d extent() const { return max - min; }
    bool contains(const Eigen::Vector3d& p) const {
        return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
    }
};

/// Draws n joint states uniformly within the joint limits from a seeded
/// mt19937_64 stream (rejection on the coupled rail-fit constraint) and maps
/// each through full_fk. Identical (p, n, seed) yields identical clouds.
WorkspaceCloud sample_workspace(const StructuralParams& p, std::size_t n, std::uint64_t seed);

/// Exact per-axis min/max of the cloud. Throws DomainError on an empty cloud.
Aabb envelope(const WorkspaceCloud& cloud);

/// Occupied-voxel-count volume estimate: distinct cells times voxel^3.
double voxel_volume(const WorkspaceCloud& cloud, double voxel);

/// Writes the cloud CSV plus a <path>.meta.json sidecar recording seed,
/// sample count, PRNG algorithm id, and the structural-parameter hash.
void export_cloud(const WorkspaceCloud& cloud, const std::string& path,
                  const StructuralParams& p);

/// Reads a CSV written by export_cloud (positions and joint states).
WorkspaceCloud import_cloud(const std::string& path);

}  // namespace railarm
