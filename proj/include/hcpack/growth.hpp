#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hcpack/error.hpp"
#include "hcpack/lattice.hpp"
#include "hcpack/oracle.hpp"
#include "hcpack/periodic_graph.hpp"

namespace hcpack {

struct GrowthPoint {
    std::array<int, 2> dims{0, 0};
    int site_count = 0;
    double n = 0.0;  ///< linear size sqrt(L1 * L2) in cells
    int max_occupancy = 0;
    std::uint64_t count = 0;
    double log_count = 0.0;
};

struct GrowthThresholds {
    double h2_random = 0.05;   ///< entropy per tile above which the class is R
    double h1_laminated = 0.1; ///< linear coefficient above which the class is RL
};

/// Least-squares fit of log(maximizer count) = a n^2 + b n + c.
struct GrowthFit {
    std::string lattice;
    std::vector<GrowthPoint> points;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double h2_per_tile = 0.0;  ///< a divided by the particles per cell at the densest packing
    double h1 = 0.0;           ///< b, entropy per unit linear size
    PackingType type = PackingType::L;
};

/// Default size sequences: commensurate tori whose maximizers the memoized
/// counter handles in seconds.
inline std::vector<std::array<int, 2>> default_growth_sizes(const std::string& name) {
    static const std::map<std::string, std::vector<std::array<int, 2>>> sizes = {
        {"4^4", {{4, 4}, {6, 6}, {8, 8}}},
        {"6^3", {{2, 2}, {4, 4}, {6, 6}}},
        {"3^6", {{3, 3}, {6, 6}, {9, 9}}},
        {"4.8^2", {{2, 2}, {4, 4}, {6, 6}}},
        {"4.6.12", {{2, 2}, {3, 3}, {4, 4}}},
        {"3^2.4.3.4", {{3, 3}, {6, 3}, {9, 3}}},
        {"3^4.6", {{3, 3}, {6, 3}, {9, 3}}},
        {"3^3.4^2", {{3, 2}, {6, 4}, {9, 6}}},
        {"3.4.6.4", {{2, 2}, {3, 3}, {4, 4}}},
        {"3.6.3.6", {{3, 3}, {3, 6}, {6, 6}}},
        {"3.12^2", {{2, 2}, {3, 3}, {4, 4}}},
        {"Z2M", {{4, 4}, {6, 6}, {8, 8}, {10, 10}}},
        {"UJ", {{4, 4}, {6, 6}, {8, 8}}},
        {"Q", {{2, 2}, {4, 4}, {6, 6}}},
    };
    const auto it = sizes.find(name);
    if (it == sizes.end()) throw Error(ErrorCode::UnknownLattice, "no growth sizes for " + name);
    return it->second;
}

inline GrowthFit fit_growth(const std::string& lattice, std::vector<GrowthPoint> pts, double particles_per_cell,
                            const GrowthThresholds& th = {}) {
    if (pts.size() < 3) throw Error(ErrorCode::InsufficientSizes, "growth fit needs at least three sizes");
    Eigen::MatrixXd A(static_cast<Eigen::Index>(pts.size()), 3);
    Eigen::VectorXd y(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        A(r, 0) = pts[i].n * pts[i].n;
        A(r, 1) = pts[i].n;
        A(r, 2) = 1.0;
        y(r) = pts[i].log_count;
    }
    const Eigen::Vector3d coef = A.colPivHouseholderQr().solve(y);
    GrowthFit f;
    f.lattice = lattice;
    f.points = std::move(pts);
    f.a = coef(0);
    f.b = coef(1);
    f.c = coef(2);
    f.h2_per_tile = f.a / particles_per_cell;
    f.h1 = f.b;
    if (f.h2_per_tile > th.h2_random) f.type = PackingType::R;
    else if (f.b > th.h1_laminated) f.type = PackingType::RL;
    else f.type = PackingType::L;
    return f;
}

/// Counts maximizers on each torus of `sizes` and classifies the growth.
inline GrowthFit growth_fit(const std::string& lattice, const std::vector<std::array<int, 2>>& sizes,
                            const OracleLimits& lim = {}, const GrowthThresholds& th = {}) {
    if (sizes.size() < 3) throw Error(ErrorCode::InsufficientSizes, "growth fit needs at least three sizes");
    const auto& spec = lattice_spec(lattice);
    std::vector<GrowthPoint> pts;
    for (const auto& d : sizes) {
        const auto g = build_lattice(lattice, d);
        const auto pc = count_max_packings(g, lim);
        GrowthPoint p;
        p.dims = d;
        p.site_count = g.site_count();
        p.n = std::sqrt(static_cast<double>(d[0]) * d[1]);
        p.max_occupancy = pc.max_occupancy;
        p.count = pc.count;
        p.log_count = std::log(static_cast<double>(pc.count));
        pts.push_back(p);
    }
    const double per_cell = spec.table.density.to_double() * spec.site_count();
    return fit_growth(spec.name, std::move(pts), per_cell, th);
}

inline GrowthFit growth_fit(const std::string& lattice) {
    return growth_fit(lattice, default_growth_sizes(lattice_spec(lattice).name));
}

}  // namespace hcpack
