#pragma once

// Hand-built 2-D geometry with known selection counts for k = 4: two
// labeled cluster centers, seven unlabeled satellites on a unit circle
// around each. Every satellite has its center among its 4 nearest
// neighbors (ring neighbors are at 2*sin(pi/7) ~ 0.868 and the center at
// 1.0), so anchoring at the unlabeled side selects all 14; each center's
// 4 nearest are satellites, so anchoring at the labeled side selects 8.

#include <cmath>
#include <map>
#include <vector>

struct ClusterGeometry {
    std::vector<double> xs, ys;
    std::vector<int> ids;            // 0..15
    std::map<int, int> class_labels; // all one class
    std::vector<int> labeled_ids;    // {0, 8}

    double distance(int a, int b) const {
        double dx = xs[static_cast<std::size_t>(a)] - xs[static_cast<std::size_t>(b)];
        double dy = ys[static_cast<std::size_t>(a)] - ys[static_cast<std::size_t>(b)];
        return std::sqrt(dx * dx + dy * dy);
    }
};

inline ClusterGeometry make_cluster_geometry() {
    ClusterGeometry g;
    const double centers[2][2] = {{0.0, 0.0}, {10.0, 0.0}};
    const double pi = 3.14159265358979323846;
    int id = 0;
    for (int cluster = 0; cluster < 2; ++cluster) {
        g.labeled_ids.push_back(id);
        g.xs.push_back(centers[cluster][0]);
        g.ys.push_back(centers[cluster][1]);
        g.ids.push_back(id);
        g.class_labels[id] = 0;
        ++id;
        for (int j = 0; j < 7; ++j) {
            double angle = 2.0 * pi * j / 7.0;
            g.xs.push_back(centers[cluster][0] + std::cos(angle));
            g.ys.push_back(centers[cluster][1] + std::sin(angle));
            g.ids.push_back(id);
            g.class_labels[id] = 0;
            ++id;
        }
    }
    return g;
}
