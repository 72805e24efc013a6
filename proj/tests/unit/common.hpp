#pragma once

#include <array>

#include "hcpack/lattice.hpp"

namespace hcpack::test {

/// Smallest commensurate torus with at least `min_cells` cells per side.
inline std::array<int, 2> dims_at_least(const LatticeSpec& s, int min_cells = 4) {
    std::array<int, 2> d{};
    for (int i = 0; i < 2; ++i) {
        const int p = s.period[static_cast<std::size_t>(i)];
        d[static_cast<std::size_t>(i)] = ((min_cells + p - 1) / p) * p;
    }
    return d;
}

}  // namespace hcpack::test
