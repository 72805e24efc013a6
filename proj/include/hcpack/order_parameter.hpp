#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "hcpack/configuration.hpp"
#include "hcpack/lattice.hpp"

namespace hcpack {

/// Sublattice contrast of a density report.
///
/// Class contrast: largest max - min of class densities inside one order
/// group. Pair contrast (Z2M): the four classes pair up along rows
/// ({0,1} vs {2,3}) and columns ({0,2} vs {1,3}); returns the larger of
/// |rho_pair - rho_rest| over the two splittings, so a full class or a
/// slide packing scores 1 and equal densities score 0.
inline double order_parameter(const LatticeSpec& spec, const std::vector<double>& rho) {
    if (spec.order_kind == OrderKind::PairContrast && rho.size() == 4) {
        const double rows = rho[0] + rho[1] - rho[2] - rho[3];
        const double cols = rho[0] + rho[2] - rho[1] - rho[3];
        return std::max(std::abs(rows), std::abs(cols));
    }
    double best = 0.0;
    for (const auto& group : spec.order_groups) {
        if (group.size() < 2) continue;
        double lo = 1.0;
        double hi = 0.0;
        for (int k : group) {
            lo = std::min(lo, rho[static_cast<std::size_t>(k)]);
            hi = std::max(hi, rho[static_cast<std::size_t>(k)]);
        }
        best = std::max(best, hi - lo);
    }
    return best;
}

inline double order_parameter(const LatticeSpec& spec, const DensityReport& r) {
    return order_parameter(spec, r.by_class());
}

inline double order_parameter(const Configuration& c) { return order_parameter(c.graph->spec(), density(c)); }

}  // namespace hcpack
