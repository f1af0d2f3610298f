#include "railarm/workspace.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <unordered_set>

namespace railarm {

WorkspaceCloud sample_workspace(const StructuralParams& p, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw DomainError("sample_workspace: n must be >= 1");
    WorkspaceCloud cloud;
    cloud.seed = seed;
    cloud.points.reserve(n);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> da(p.a_min, p.a_max);
    std::uniform_real_distribution<double> db(p.b_min, p.b_max);
    std::uniform_real_distribution<double> dt[4] = {
        std::uniform_real_distribution<double>(p.theta_limits[0].lo, p.theta_limits[0].hi),
        std::uniform_real_distribution<double>(p.theta_limits[1].lo, p.theta_limits[1].hi),
        std::uniform_real_distribution<double>(p.theta_limits[2].lo, p.theta_limits[2].hi),
        std::uniform_real_distribution<double>(p.theta_limits[3].lo, p.theta_limits[3].hi),
    };

    while (cloud.points.size() < n) {
        JointState q;
        q.a = da(rng);
        q.b = db(rng);
        q.theta1 = dt[0](rng);
        q.theta2 = dt[1](rng);
        q.theta3 = dt[2](rng);
        q.theta4 = dt[3](rng);
        // both carriages must fit on the rail; resample otherwise
        if (q.a + q.b + p.carriage_allowance > p.rail_length) continue;
        cloud.points.push_back({full_fk(q, p).translation, q});
    }
    return cloud;
}

Aabb envelope(const WorkspaceCloud& cloud) {
    if (cloud.points.empty()) throw DomainError("envelope: empty cloud");
    Aabb box{cloud.points.front().position, cloud.points.front().position};
    for (const auto& s : cloud.points) {
        box.min = box.min.cwiseMin(s.position);
        box.max = box.max.cwiseMax(s.position);
    }
    return box;
}

double voxel_volume(const WorkspaceCloud& cloud, double voxel) {
    if (voxel <= 0) throw DomainError("voxel_volume: voxel size must be positive");
    if (cloud.points.empty()) throw DomainError("voxel_volume: empty cloud");
    std::unordered_set<std::uint64_t> cells;
    cells.reserve(cloud.points.size());
    constexpr std::int64_t kOffset = 1 << 20;
    for (const auto& s : cloud.points) {
        std::uint64_t key = 0;
        for (int axis = 0; axis < 3; ++axis) {
            const auto c = static_cast<std::int64_t>(std::floor(s.position[axis] / voxel)) + kOffset;
            key = (key << 21) | static_cast<std::uint64_t>(c & ((1 << 21) - 1));
        }
        cells.insert(key);
    }
    return static_cast<double>(cells.size()) * voxel * voxel * voxel;
}

void export_cloud(const WorkspaceCloud& cloud, const std::string& path,
                  const StructuralParams& p) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write cloud file: " + path);
    out << std::setprecision(17);
    out << "x_mm,y_mm,z_mm,a_mm,b_mm,theta1,theta2,theta3,theta4\n";
    for (const auto& s : cloud.points) {
        out << s.position.x() << ',' << s.position.y() << ',' << s.position.z() << ','
            << s.state.a << ',' << s.state.b << ',' << s.state.theta1 << ','
            << s.state.theta2 << ',' << s.state.theta3 << ',' << s.state.theta4 << '\n';
    }
    if (!out) throw IoError("write failed: " + path);

    nlohmann::json meta = {
        {"seed", cloud.seed},
        {"sample_count", cloud.sample_count()},
        {"algorithm", cloud.algorithm},
        {"params_hash", params_hash(p)},
    };
    const std::string meta_path = path + ".meta.json";
    std::ofstream mout(meta_path);
    if (!mout) throw IoError("cannot write cloud metadata: " + meta_path);
    mout << meta.dump(2) << '\n';
}

WorkspaceCloud import_cloud(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open cloud file: " + path);
    WorkspaceCloud cloud;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        double v[9];
        char comma;
        for (int i = 0; i < 9; ++i) {
            ss >> v[i];
            if (i < 8) ss >> comma;
        }
        if (!ss) throw IoError("malformed cloud row in " + path);
        WorkspaceCloud::Sample s;
        s.position = Eigen::Vector3d(v[0], v[1], v[2]);
        s.state = JointState{v[3], v[4], v[5], v[6], v[7], v[8]};
        cloud.points.push_back(s);
    }
    return cloud;
}

}  // namespace railarm
