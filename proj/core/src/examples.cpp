#include "skelocut/examples.hpp"

#include <cmath>

namespace skelocut::examples {

Polyhedron regular_tetrahedron() {
    double h = std::sqrt(2.0 / 3.0);  // height for edge 1
    double r = 1.0 / std::sqrt(3.0);  // base circumradius for edge 1
    std::vector<Vec3> v;
    for (int i = 0; i < 3; ++i) {
        double a = 2 * M_PI * i / 3;
        v.push_back({r * std::cos(a), r * std::sin(a), 0});
    }
    v.push_back({0, 0, h});
    return build_polyhedron(v, {{2, 1, 0}, {0, 1, 3}, {1, 2, 3}, {2, 0, 3}});
}

Polyhedron cube() {
    std::vector<Vec3> v;
    for (int i = 0; i < 8; ++i)
        v.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
    return convex_hull(v);
}

Polyhedron regular_octahedron() {
    std::vector<Vec3> v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    return convex_hull(v);
}

Polyhedron regular_icosahedron() {
    double p = (1 + std::sqrt(5.0)) / 2;
    std::vector<Vec3> v;
    for (double s1 : {-1.0, 1.0})
        for (double s2 : {-1.0, 1.0}) {
            v.push_back({0, s1 * 0.5, s2 * p / 2});
            v.push_back({s1 * 0.5, s2 * p / 2, 0});
            v.push_back({s1 * p / 2, 0, s2 * 0.5});
        }
    return convex_hull(v);
}

Polyhedron pentagonal_dipyramid() {
    double r = 1.0 / (2 * std::sin(M_PI / 5));  // base edge 1
    double h = std::sqrt(1.0 - r * r);
    std::vector<Vec3> v;
    for (int i = 0; i < 5; ++i) {
        double a = 2 * M_PI * i / 5;
        v.push_back({r * std::cos(a), r * std::sin(a), 0});
    }
    v.push_back({0, 0, h});
    v.push_back({0, 0, -h});
    return convex_hull(v);
}

Polyhedron regular_dodecahedron() {
    double p = (1 + std::sqrt(5.0)) / 2;
    std::vector<Vec3> v;
    for (double sx : {-1.0, 1.0})
        for (double sy : {-1.0, 1.0}) {
            for (double sz : {-1.0, 1.0}) v.push_back({sx, sy, sz});
            v.push_back({0, sx / p, sy * p});
            v.push_back({sx / p, sy * p, 0});
            v.push_back({sx * p, 0, sy / p});
        }
    return convex_hull(v);
}

Polyhedron doubly_covered_square() {
    return doubly_covered_polygon({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}});
}

std::vector<std::vector<int>> cube_graph() { return cube().skeleton_adjacency(); }
std::vector<std::vector<int>> dodecahedron_graph() { return regular_dodecahedron().skeleton_adjacency(); }
std::vector<std::vector<int>> octahedron_graph() { return regular_octahedron().skeleton_adjacency(); }
std::vector<std::vector<int>> k4_graph() {
    return {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
}

}  // namespace skelocut::examples
